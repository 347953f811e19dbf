#include "lcmix/aperiodicity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lcmix {

TauPattern TauPattern::directed(int tau) {
    TauPattern p;
    p.rows.assign(tau, {0, 1});
    return p;
}

TauPattern TauPattern::alternating(int tau) {
    TauPattern p;
    for (int i = 0; i < tau; ++i)
        p.rows.push_back(i % 2 == 0 ? std::make_pair(0, 1) : std::make_pair(1, 0));
    return p;
}

namespace {

long long default_cap(const RelationalStructure& monic) {
    if (monic.arity(0) == 2) {
        const long long n = monic.domain_size;
        return 2 * (n * n * n * n - 2 * n * n * n + 2 * n * n);
    }
    return 1'000'000;
}

} // namespace

AperiodicityReport mixing_time_monic(const RelationalStructure& monic,
                                     std::optional<long long> cap) {
    if (!monic.is_monic())
        throw InputError("mixing time is defined on monic structures; take the monic product first");
    AperiodicityReport rep;
    if (monic.arity(0) < 2) {
        rep.status = AperiodicityStatus::NotAperiodic;
        rep.certificate = "arity<2: no pattern exists over a single position";
        return rep;
    }

    SliceSet slices = slice_matrices(monic);
    for (int i = 0; i < slices.arity(); ++i)
        for (int j = 0; j < slices.arity(); ++j) {
            if (i == j) continue;
            if (slices.at(i, j).has_zero_row() || slices.at(i, j).has_zero_col()) {
                rep.status = AperiodicityStatus::NotAperiodic;
                rep.certificate = "slice (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") has a zero row or column";
                return rep;
            }
        }

    const long long limit = cap.value_or(default_cap(monic));
    rep.upper_bound_used = limit;

    const BoolMatrix all_ones = BoolMatrix::ones(monic.domain_size);
    std::set<BoolMatrix> level(slices.all().begin(), slices.all().end());
    std::map<std::set<BoolMatrix>, long long> seen;
    seen[level] = 1;

    for (long long t = 1;; ++t) {
        if (level.size() == 1 && *level.begin() == all_ones) {
            rep.status = AperiodicityStatus::Aperiodic;
            rep.mixing_time = t;
            rep.certificate = "every length-" + std::to_string(t) + " slice product is all-ones";
            return rep;
        }
        if (t >= limit) {
            rep.status = AperiodicityStatus::Undecided;
            rep.certificate = "undecided at cap " + std::to_string(limit);
            return rep;
        }
        std::set<BoolMatrix> next;
        for (const BoolMatrix& s : level)
            for (const BoolMatrix& m : slices.all()) next.insert(bool_product(s, m));
        auto [it, fresh] = seen.try_emplace(std::move(next), t + 1);
        if (!fresh) {
            rep.status = AperiodicityStatus::NotAperiodic;
            rep.certificate = "level set at step " + std::to_string(t + 1) +
                              " repeats step " + std::to_string(it->second) +
                              " without reaching all-ones";
            return rep;
        }
        level = it->first;
    }
}

AperiodicityReport is_aperiodic(const RelationalStructure& a) {
    return mixing_time_monic(a.is_monic() ? a : monic_product(a));
}

RelationalStructure digraph_to_monic(const BoolMatrix& m) {
    std::vector<Tuple> edges;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (m.get(i, j)) edges.push_back({i, j});
    Signature sig;
    sig.symbols.push_back({"E", 2});
    return RelationalStructure::make(sig, m.dim(), {std::move(edges)});
}

AperiodicityReport digraph_aperiodicity(const BoolMatrix& m) {
    AperiodicityReport rep;
    const long long n = m.dim();
    if (!is_primitive(m)) {
        rep.status = AperiodicityStatus::NotAperiodic;
        rep.certificate = "adjacency matrix is not primitive";
        return rep;
    }
    if (!is_irreducible(bool_product(m, m.transposed()))) {
        rep.status = AperiodicityStatus::NotAperiodic;
        rep.certificate = "M M^T is not irreducible";
        return rep;
    }
    rep = mixing_time_monic(digraph_to_monic(m));
    const long long bound = n * n * n * n - 2 * n * n * n + 2 * n * n;
    rep.upper_bound_used = bound;
    if (!rep.aperiodic() || *rep.mixing_time > bound)
        throw std::logic_error("digraph criterion disagrees with the mixing-time bound");
    return rep;
}

std::optional<LambdaWalk> find_lambda_walk(const RelationalStructure& monic,
                                           const TauPattern& pattern, int a, int b) {
    if (!monic.is_monic()) throw InputError("lambda walks are defined on monic structures");
    const int r = monic.arity(0);
    const int n = monic.domain_size;
    if (a < 0 || a >= n || b < 0 || b >= n) throw InputError("walk endpoint out of range");
    for (auto [p, q] : pattern.rows)
        if (p < 0 || q < 0 || p >= r || q >= r || p == q)
            throw InputError("pattern row out of range for arity " + std::to_string(r));

    const auto& tuples = monic.relations[0];
    const int tau = pattern.length();

    // forward reachable sets per step
    std::vector<std::vector<char>> reach(tau + 1, std::vector<char>(n, 0));
    reach[0][a] = 1;
    for (int i = 1; i <= tau; ++i) {
        auto [p, q] = pattern.rows[i - 1];
        for (const Tuple& t : tuples)
            if (reach[i - 1][t[p]]) reach[i][t[q]] = 1;
    }
    if (!reach[tau][b]) return std::nullopt;

    LambdaWalk walk;
    walk.vertices.assign(tau + 1, -1);
    walk.tuple_indices.assign(tau, -1);
    walk.vertices[tau] = b;
    for (int i = tau; i >= 1; --i) {
        auto [p, q] = pattern.rows[i - 1];
        int best_prev = -1, best_tuple = -1;
        for (int ti = 0; ti < (int)tuples.size(); ++ti) {
            const Tuple& t = tuples[ti];
            if (t[q] != walk.vertices[i] || !reach[i - 1][t[p]]) continue;
            if (best_prev < 0 || t[p] < best_prev) {
                best_prev = t[p];
                best_tuple = ti;
            }
        }
        walk.vertices[i - 1] = best_prev;
        walk.tuple_indices[i - 1] = best_tuple;
    }
    return walk;
}

bool verify_lambda_walk(const RelationalStructure& monic, const TauPattern& pattern,
                        int a, int b, const LambdaWalk& walk) {
    const int tau = pattern.length();
    if ((int)walk.vertices.size() != tau + 1 || (int)walk.tuple_indices.size() != tau)
        return false;
    if (walk.vertices.front() != a || walk.vertices.back() != b) return false;
    const auto& tuples = monic.relations[0];
    for (int i = 0; i < tau; ++i) {
        int ti = walk.tuple_indices[i];
        if (ti < 0 || ti >= (int)tuples.size()) return false;
        auto [p, q] = pattern.rows[i];
        if (tuples[ti][p] != walk.vertices[i] || tuples[ti][q] != walk.vertices[i + 1])
            return false;
    }
    return true;
}

} // namespace lcmix
