#include "lcmix/structures.hpp"

#include <algorithm>
#include <set>

#include "lcmix/rng.hpp"

namespace lcmix {

void Signature::validate() const {
    if (symbols.empty()) throw InputError("signature must have at least one symbol");
    std::set<std::string> seen;
    for (const auto& s : symbols) {
        if (s.name.empty()) throw InputError("relation symbol with empty name");
        if (s.arity < 1) throw InputError("relation symbol '" + s.name + "' has arity < 1");
        if (!seen.insert(s.name).second)
            throw InputError("duplicate relation symbol '" + s.name + "'");
    }
}

bool Signature::operator==(const Signature& o) const {
    if (symbols.size() != o.symbols.size()) return false;
    for (size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i].name != o.symbols[i].name || symbols[i].arity != o.symbols[i].arity)
            return false;
    return true;
}

RelationalStructure RelationalStructure::make(Signature sig, int domain_size,
                                              std::vector<std::vector<Tuple>> relations) {
    sig.validate();
    if (domain_size < 1) throw InputError("domain must be nonempty");
    if (relations.size() != sig.symbols.size())
        throw InputError("relation count does not match signature");
    for (size_t s = 0; s < relations.size(); ++s) {
        const int ar = sig.symbols[s].arity;
        for (const auto& t : relations[s]) {
            if ((int)t.size() != ar)
                throw InputError("tuple length mismatch in relation '" + sig.symbols[s].name + "'");
            for (int v : t)
                if (v < 0 || v >= domain_size)
                    throw InputError("tuple entry out of range in relation '" +
                                     sig.symbols[s].name + "'");
        }
        std::sort(relations[s].begin(), relations[s].end());
        relations[s].erase(std::unique(relations[s].begin(), relations[s].end()),
                           relations[s].end());
    }
    RelationalStructure r;
    r.sig = std::move(sig);
    r.domain_size = domain_size;
    r.relations = std::move(relations);
    return r;
}

long long RelationalStructure::total_tuples() const {
    long long t = 0;
    for (const auto& rel : relations) t += (long long)rel.size();
    return t;
}

PartialMap PartialMap::from_pairs(std::vector<std::pair<int, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    for (size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first == pairs[i - 1].first)
            throw InputError("partial map with a repeated source");
    PartialMap m;
    m.pairs = std::move(pairs);
    return m;
}

std::optional<int> PartialMap::at(int source) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(source, -1));
    if (it != pairs.end() && it->first == source) return it->second;
    return std::nullopt;
}

namespace {

// Per-vertex tuple occurrence lists, the workhorse of the backtracker.
struct Occurrences {
    // (symbol, tuple index) pairs per vertex
    std::vector<std::vector<std::pair<int, int>>> by_vertex;
    std::vector<int> degree;

    explicit Occurrences(const RelationalStructure& x)
        : by_vertex(x.domain_size), degree(x.domain_size, 0) {
        for (int s = 0; s < x.num_symbols(); ++s)
            for (int t = 0; t < (int)x.relations[s].size(); ++t)
                for (int v : x.relations[s][t]) {
                    by_vertex[v].push_back({s, t});
                    ++degree[v];
                }
        for (auto& occ : by_vertex) {
            std::sort(occ.begin(), occ.end());
            occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
        }
    }
};

struct HomSearch {
    const RelationalStructure& x;
    const RelationalStructure& a;
    Occurrences occ;
    std::vector<int> order;      // search order over X's vertices
    std::vector<int> assignment; // -1 = unassigned

    HomSearch(const RelationalStructure& x_, const RelationalStructure& a_)
        : x(x_), a(a_), occ(x_), assignment(x_.domain_size, -1) {
        if (!(x.sig == a.sig)) throw InputError("structures have different signatures");
        order.resize(x.domain_size);
        for (int i = 0; i < x.domain_size; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
            return occ.degree[u] > occ.degree[v];
        });
    }

    // Checks every tuple touching v that is now fully assigned, and runs one
    // step of lookahead on tuples with a single hole.
    bool consistent_after(int v) {
        for (auto [s, t] : occ.by_vertex[v]) {
            const Tuple& xt = x.relations[s][t];
            int holes = 0;
            for (int u : xt)
                if (assignment[u] < 0) ++holes;
            if (holes == 0) {
                Tuple img(xt.size());
                for (size_t i = 0; i < xt.size(); ++i) img[i] = assignment[xt[i]];
                if (!std::binary_search(a.relations[s].begin(), a.relations[s].end(), img))
                    return false;
            } else if (holes == 1) {
                int hole = -1;
                for (int u : xt)
                    if (assignment[u] < 0) hole = u;
                bool any = false;
                for (int c = 0; c < a.domain_size && !any; ++c) {
                    Tuple img(xt.size());
                    for (size_t i = 0; i < xt.size(); ++i)
                        img[i] = xt[i] == hole ? c : assignment[xt[i]];
                    // hole may repeat inside xt; the substitution above covers that
                    any = std::binary_search(a.relations[s].begin(), a.relations[s].end(), img);
                }
                if (!any) return false;
            }
        }
        return true;
    }

    bool search(size_t depth) {
        while (depth < order.size() && assignment[order[depth]] >= 0) ++depth;
        if (depth == order.size()) return true;
        int v = order[depth];
        for (int c = 0; c < a.domain_size; ++c) {
            assignment[v] = c;
            if (consistent_after(v) && search(depth + 1)) return true;
            assignment[v] = -1;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> find_homomorphism(const RelationalStructure& x,
                                                  const RelationalStructure& a) {
    return find_homomorphism_seeded(x, a, {});
}

std::optional<std::vector<int>> find_homomorphism_seeded(
    const RelationalStructure& x, const RelationalStructure& a,
    const std::vector<std::pair<int, int>>& fixed) {
    HomSearch hs(x, a);
    for (auto [v, c] : fixed) {
        if (v < 0 || v >= x.domain_size || c < 0 || c >= a.domain_size)
            throw InputError("seeded assignment out of range");
        if (hs.assignment[v] >= 0 && hs.assignment[v] != c) return std::nullopt;
        hs.assignment[v] = c;
    }
    for (auto [v, c] : fixed) {
        (void)c;
        if (!hs.consistent_after(v)) return std::nullopt;
    }
    if (!hs.search(0)) return std::nullopt;
    return hs.assignment;
}

bool is_homomorphism(const RelationalStructure& x, const RelationalStructure& a,
                     const std::vector<int>& map) {
    if (!(x.sig == a.sig) || (int)map.size() != x.domain_size) return false;
    for (int v : map)
        if (v < 0 || v >= a.domain_size) return false;
    for (int s = 0; s < x.num_symbols(); ++s)
        for (const Tuple& t : x.relations[s]) {
            Tuple img(t.size());
            for (size_t i = 0; i < t.size(); ++i) img[i] = map[t[i]];
            if (!std::binary_search(a.relations[s].begin(), a.relations[s].end(), img))
                return false;
        }
    return true;
}

RelationalStructure monic_product(const RelationalStructure& a) {
    long long arity = 0;
    long long count = 1;
    const long long kMaxTuples = 4'000'000;
    for (int s = 0; s < a.num_symbols(); ++s) {
        arity += a.arity(s);
        count *= (long long)a.relations[s].size();
        if (count > kMaxTuples)
            throw ResourceError("monic product would exceed " + std::to_string(kMaxTuples) +
                                " tuples");
        if (count == 0) count = 0; // empty factor empties the product
    }
    std::vector<Tuple> product;
    if (count > 0) {
        product.reserve((size_t)count);
        Tuple current((size_t)arity);
        std::vector<size_t> idx(a.num_symbols(), 0);
        for (;;) {
            size_t pos = 0;
            for (int s = 0; s < a.num_symbols(); ++s)
                for (int e : a.relations[s][idx[s]]) current[pos++] = e;
            product.push_back(current);
            int s = a.num_symbols() - 1;
            while (s >= 0 && ++idx[s] == a.relations[s].size()) idx[s--] = 0;
            if (s < 0) break;
        }
    }
    Signature sig;
    sig.symbols.push_back({"R", (int)arity});
    return RelationalStructure::make(sig, a.domain_size, {std::move(product)});
}

bool has_loop(const RelationalStructure& b) {
    for (int v = 0; v < b.domain_size; ++v) {
        bool all = true;
        for (int s = 0; s < b.num_symbols() && all; ++s) {
            Tuple constant(b.arity(s), v);
            all = std::binary_search(b.relations[s].begin(), b.relations[s].end(), constant);
        }
        if (all) return true;
    }
    return false;
}

InducedSubstructure induced_substructure(const RelationalStructure& x,
                                         const std::vector<int>& keep) {
    if (keep.empty()) throw InputError("induced substructure on an empty vertex set");
    std::vector<int> verts = keep;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> old_to_new(x.domain_size, -1);
    for (size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] >= x.domain_size)
            throw InputError("induced vertex out of range");
        old_to_new[verts[i]] = (int)i;
    }
    std::vector<std::vector<Tuple>> rels(x.num_symbols());
    for (int s = 0; s < x.num_symbols(); ++s)
        for (const Tuple& t : x.relations[s]) {
            Tuple img(t.size());
            bool inside = true;
            for (size_t i = 0; i < t.size() && inside; ++i) {
                img[i] = old_to_new[t[i]];
                inside = img[i] >= 0;
            }
            if (inside) rels[s].push_back(std::move(img));
        }
    InducedSubstructure out;
    out.structure = RelationalStructure::make(x.sig, (int)verts.size(), std::move(rels));
    out.vertices = std::move(verts);
    return out;
}

OrientedMonicStructure OrientedMonicStructure::from(RelationalStructure s) {
    if (s.sig.symbols.size() != 1)
        throw InputError("oriented structure must be monic");
    const int r = s.sig.symbols[0].arity;
    if (r < 2) throw InputError("oriented structure needs arity >= 2");
    std::set<std::vector<int>> entry_sets;
    for (const Tuple& t : s.relations[0]) {
        std::vector<int> sorted = t;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("oriented tuple with a repeated entry");
        if (!entry_sets.insert(sorted).second)
            throw InputError("two oriented tuples share an entry set");
    }
    OrientedMonicStructure o;
    o.s = std::move(s);
    return o;
}

OrientedMonicStructure orient(const Hypergraph& h, std::uint64_t seed) {
    if (h.r < 2) throw InputError("cannot orient a hypergraph with r < 2");
    std::vector<Tuple> tuples;
    tuples.reserve(h.edges.size());
    Rng rng(seed);
    for (const auto& e : h.edges) {
        Tuple t = e; // edges are stored sorted
        if (seed != 0) rng.shuffle(t);
        tuples.push_back(std::move(t));
    }
    Signature sig;
    sig.symbols.push_back({"R", h.r});
    return OrientedMonicStructure::from(
        RelationalStructure::make(sig, h.n, {std::move(tuples)}));
}

Hypergraph symmetrize(const OrientedMonicStructure& x) {
    std::vector<std::vector<int>> edges;
    edges.reserve(x.tuples().size());
    for (const Tuple& t : x.tuples()) {
        std::vector<int> e = t;
        std::sort(e.begin(), e.end());
        edges.push_back(std::move(e));
    }
    return Hypergraph::make(x.s.domain_size, x.arity(), std::move(edges));
}

RelationalStructure cycle_graph(int n) {
    if (n < 3) throw InputError("cycle graph needs n >= 3");
    std::vector<Tuple> edges;
    for (int i = 0; i < n; ++i) {
        edges.push_back({i, (i + 1) % n});
        edges.push_back({(i + 1) % n, i});
    }
    Signature sig;
    sig.symbols.push_back({"E", 2});
    return RelationalStructure::make(sig, n, {std::move(edges)});
}

RelationalStructure clique_structure(int r, int c) {
    if (r < 1 || c < 1) throw InputError("clique structure needs r >= 1 and c >= 1");
    double size = 1;
    for (int i = 0; i < r; ++i) size *= c;
    if (size > 4e6) throw ResourceError("clique structure c^r too large");
    std::vector<Tuple> tuples;
    Tuple t(r, 0);
    for (;;) {
        bool constant = true;
        for (int i = 1; i < r && constant; ++i) constant = t[i] == t[0];
        if (!constant) tuples.push_back(t);
        int i = r - 1;
        while (i >= 0 && ++t[i] == c) t[i--] = 0;
        if (i < 0) break;
    }
    Signature sig;
    sig.symbols.push_back({"R", r});
    return RelationalStructure::make(sig, c, {std::move(tuples)});
}

RelationalStructure group_structure(const std::vector<std::vector<int>>& cayley) {
    const int n = (int)cayley.size();
    if (n < 1) throw InputError("empty Cayley table");
    for (const auto& row : cayley) {
        if ((int)row.size() != n) throw InputError("Cayley table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw InputError("Cayley table entry out of range");
    }
    auto mul = [&](int a, int b) { return cayley[a][b]; };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw InputError("Cayley table is not associative");
    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) identity = e;
    }
    if (identity < 0) throw InputError("Cayley table has no identity element");
    for (int a = 0; a < n; ++a) {
        bool inverse = false;
        for (int b = 0; b < n && !inverse; ++b)
            inverse = mul(a, b) == identity && mul(b, a) == identity;
        if (!inverse) throw InputError("Cayley table element without inverse");
    }

    Signature sig;
    std::vector<std::vector<Tuple>> rels(n);
    for (int g = 0; g < n; ++g) {
        sig.symbols.push_back({"R" + std::to_string(g), 3});
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) == g) rels[g].push_back({a, b, c});
    }
    return RelationalStructure::make(sig, n, std::move(rels));
}

} // namespace lcmix
