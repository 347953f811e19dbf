#include "lcmix/consistency.hpp"

#include <algorithm>
#include <set>

#include "lcmix/rng.hpp"

namespace lcmix {

namespace {

// C(n, k) for the colex ranking; small arguments only.
long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long colex_rank(const std::vector<int>& sorted) {
    long long r = 0;
    for (size_t i = 0; i < sorted.size(); ++i) r += binom(sorted[i], (long long)i + 1);
    return r;
}

void colex_unrank(long long rank, int size, std::vector<int>& out) {
    out.resize(size);
    for (int i = size; i >= 1; --i) {
        int v = i - 1;
        while (binom(v + 1, i) <= rank) ++v;
        out[i - 1] = v;
        rank -= binom(v, i);
    }
}

bool next_combination(std::vector<int>& c, int n) {
    int k = (int)c.size();
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

long long Strategy::slot_of(const std::vector<int>& domain, const std::vector<int>& values) const {
    int s = (int)domain.size();
    long long vi = 0;
    for (int i = s - 1; i >= 0; --i) vi = vi * d_ + values[i];
    return slot_base_[s] + colex_rank(domain) * powers_[s] + vi;
}

long long Strategy::size() const {
    long long c = 0;
    for (auto w : alive_) c += __builtin_popcountll(w);
    return c;
}

bool Strategy::contains(const PartialMap& f) const {
    if ((int)f.pairs.size() > kappa_) return false;
    std::vector<int> dom, vals;
    for (auto [x, a] : f.pairs) {
        if (x < 0 || x >= n_ || a < 0 || a >= d_) return false;
        dom.push_back(x);
        vals.push_back(a);
    }
    long long slot = slot_of(dom, vals);
    return (alive_[slot >> 6] >> (slot & 63)) & 1ULL;
}

void Strategy::for_each(
    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) const {
    std::vector<int> dom, vals;
    for (int s = 0; s <= kappa_; ++s) {
        long long begin = slot_base_[s];
        long long end = s == kappa_ ? (long long)alive_.size() * 64 : slot_base_[s + 1];
        for (long long slot = begin; slot < end; ++slot) {
            if (!((alive_[slot >> 6] >> (slot & 63)) & 1ULL)) continue;
            long long local = slot - begin;
            colex_unrank(local / powers_[s], s, dom);
            long long vi = local % powers_[s];
            vals.resize(s);
            for (int i = 0; i < s; ++i) {
                vals[i] = (int)(vi % d_);
                vi /= d_;
            }
            fn(dom, vals);
        }
    }
}

struct StrategyBuilder {
    static std::shared_ptr<Strategy> build(int n, int d, int kappa,
                                           std::vector<long long> slot_base,
                                           std::vector<long long> powers,
                                           std::vector<std::uint64_t> alive) {
        auto s = std::make_shared<Strategy>();
        s->n_ = n;
        s->d_ = d;
        s->kappa_ = kappa;
        s->slot_base_ = std::move(slot_base);
        s->powers_ = std::move(powers);
        s->alive_ = std::move(alive);
        return s;
    }
};

namespace {

class LcEngine {
public:
    LcEngine(const RelationalStructure& x, const RelationalStructure& a, int kappa,
             const LcOptions& opts)
        : x_(x), a_(a), kappa_(kappa), opts_(opts) {
        n_ = x.domain_size;
        d_ = a.domain_size;
        if (d_ > 250) throw ResourceError("template domain beyond 250 is unsupported");
        powers_.resize(kappa_ + 1);
        powers_[0] = 1;
        for (int s = 1; s <= kappa_; ++s) powers_[s] = powers_[s - 1] * d_;
        slot_base_.resize(kappa_ + 2);
        slot_base_[0] = 0;
        double estimate = 0;
        for (int s = 0; s <= kappa_; ++s) {
            estimate += (double)binom(n_, s) * (double)powers_[s];
            if (estimate > (double)opts.slot_budget)
                throw ResourceError("local-consistency work budget exceeded: needs " +
                                    std::to_string((long long)estimate) + " slots, budget " +
                                    std::to_string(opts.slot_budget));
            slot_base_[s + 1] = slot_base_[s] + binom(n_, s) * powers_[s];
        }
        total_slots_ = slot_base_[kappa_ + 1];
        alive_.assign((size_t)((total_slots_ + 63) / 64), 0);

        // per-vertex (symbol, tuple) incidence
        incidence_.resize(n_);
        for (int sym = 0; sym < x.num_symbols(); ++sym)
            for (int t = 0; t < (int)x.relations[sym].size(); ++t)
                for (int v : x.relations[sym][t]) incidence_[v].push_back({sym, t});
        for (auto& inc : incidence_) {
            std::sort(inc.begin(), inc.end());
            inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
        }
    }

    LcResult run() {
        populate_valid();
        static_kappa_sweep();
        build_counters();
        seed_worklist();
        propagate();

        LcResult res;
        res.kappa = kappa_;
        res.yes = alive(0);
        res.eliminated = eliminated_;
        auto strat =
            StrategyBuilder::build(n_, d_, kappa_, slot_base_, powers_, std::move(alive_));
        res.family_size = strat->size();
        if (res.yes) res.strategy = std::move(strat);
        return res;
    }

private:
    const RelationalStructure& x_;
    const RelationalStructure& a_;
    int kappa_;
    LcOptions opts_;
    int n_ = 0, d_ = 0;
    long long total_slots_ = 0;
    std::vector<long long> powers_, slot_base_;
    std::vector<std::uint64_t> alive_;
    std::vector<std::vector<std::pair<int, int>>> incidence_;
    std::vector<std::uint8_t> counters_; // slot*n + x, sizes < kappa only
    std::vector<long long> worklist_;
    size_t work_head_ = 0;
    long long eliminated_ = 0;

    bool alive(long long slot) const { return (alive_[slot >> 6] >> (slot & 63)) & 1ULL; }
    void set_alive(long long slot) { alive_[slot >> 6] |= 1ULL << (slot & 63); }
    void clear_alive(long long slot) { alive_[slot >> 6] &= ~(1ULL << (slot & 63)); }

    long long slot_of(const std::vector<int>& dom, const std::vector<int>& vals) const {
        int s = (int)dom.size();
        long long vi = 0;
        for (int i = s - 1; i >= 0; --i) vi = vi * d_ + vals[i];
        return slot_base_[s] + colex_rank(dom) * powers_[s] + vi;
    }

    // Constraint tuples fully inside the given sorted domain.
    void constraints_inside(const std::vector<int>& dom,
                            std::vector<std::pair<int, int>>& out) const {
        out.clear();
        for (int v : dom)
            for (auto st : incidence_[v]) {
                const Tuple& t = x_.relations[st.first][st.second];
                bool inside = true;
                for (int u : t)
                    if (!std::binary_search(dom.begin(), dom.end(), u)) { inside = false; break; }
                if (inside) out.push_back(st);
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

    bool image_in_relation(int sym, const Tuple& t, const std::vector<int>& dom,
                           const std::vector<int>& vals, int extra_vertex, int extra_value) const {
        thread_local Tuple img;
        img.resize(t.size());
        for (size_t i = 0; i < t.size(); ++i) {
            int u = t[i];
            if (u == extra_vertex) {
                img[i] = extra_value;
            } else {
                auto it = std::lower_bound(dom.begin(), dom.end(), u);
                img[i] = vals[it - dom.begin()];
            }
        }
        return std::binary_search(a_.relations[sym].begin(), a_.relations[sym].end(), img);
    }

    void populate_valid() {
        std::vector<int> dom, vals;
        std::vector<std::pair<int, int>> constraints;
        for (int s = 0; s <= kappa_; ++s) {
            if (s == 0) {
                set_alive(0);
                continue;
            }
            dom.resize(s);
            for (int i = 0; i < s; ++i) dom[i] = i;
            do {
                constraints_inside(dom, constraints);
                long long base = slot_base_[s] + colex_rank(dom) * powers_[s];
                vals.assign(s, 0);
                for (long long vi = 0; vi < powers_[s]; ++vi) {
                    bool ok = true;
                    for (auto [sym, t] : constraints)
                        if (!image_in_relation(sym, x_.relations[sym][t], dom, vals, -1, -1)) {
                            ok = false;
                            break;
                        }
                    if (ok) set_alive(base + vi);
                    // increment the mixed-radix value vector
                    for (int i = 0; i < s; ++i) {
                        if (++vals[i] < d_) break;
                        vals[i] = 0;
                    }
                }
            } while (next_combination(dom, n_));
        }
    }

    // Size-kappa maps must admit a valid one-point extension to every outside
    // vertex; this is a static property, so failing maps die before the
    // fixpoint loop.
    void static_kappa_sweep() {
        if (kappa_ == 0 || kappa_ > n_) return;
        const int s = kappa_;
        if (n_ == s) return; // no outside vertex
        std::vector<int> dom(s), vals;
        std::vector<std::pair<int, int>> constraints;
        for (int i = 0; i < s; ++i) dom[i] = i;
        do {
            long long base = slot_base_[s] + colex_rank(dom) * powers_[s];
            for (int v = 0; v < n_; ++v) {
                if (std::binary_search(dom.begin(), dom.end(), v)) continue;
                // constraint tuples inside dom+v that touch v
                constraints.clear();
                for (auto st : incidence_[v]) {
                    const Tuple& t = x_.relations[st.first][st.second];
                    bool inside = true;
                    for (int u : t)
                        if (u != v && !std::binary_search(dom.begin(), dom.end(), u)) {
                            inside = false;
                            break;
                        }
                    if (inside) constraints.push_back(st);
                }
                if (constraints.empty()) continue;
                vals.assign(s, 0);
                for (long long vi = 0; vi < powers_[s]; ++vi) {
                    long long slot = base + vi;
                    if (alive(slot)) {
                        bool extendable = false;
                        for (int c = 0; c < d_ && !extendable; ++c) {
                            bool ok = true;
                            for (auto [sym, t] : constraints)
                                if (!image_in_relation(sym, x_.relations[sym][t], dom, vals, v, c)) {
                                    ok = false;
                                    break;
                                }
                            extendable = ok;
                        }
                        if (!extendable) {
                            clear_alive(slot);
                            ++eliminated_;
                        }
                    }
                    for (int i = 0; i < s; ++i) {
                        if (++vals[i] < d_) break;
                        vals[i] = 0;
                    }
                }
            }
        } while (next_combination(dom, n_));
    }

    void build_counters() {
        if (kappa_ == 0) return;
        counters_.assign((size_t)slot_base_[kappa_] * n_, 0);
        // count alive extensions: iterate alive maps of sizes 1..kappa and
        // credit each of their restrictions
        std::vector<int> dom, vals, rdom, rvals;
        for (int s = 1; s <= kappa_; ++s) {
            dom.resize(s);
            for (int i = 0; i < s; ++i) dom[i] = i;
            do {
                long long base = slot_base_[s] + colex_rank(dom) * powers_[s];
                vals.assign(s, 0);
                for (long long vi = 0; vi < powers_[s]; ++vi) {
                    if (alive(base + vi)) {
                        for (int i = 0; i < s; ++i) {
                            rdom = dom;
                            rdom.erase(rdom.begin() + i);
                            rvals = vals;
                            rvals.erase(rvals.begin() + i);
                            ++counters_[(size_t)slot_of(rdom, rvals) * n_ + dom[i]];
                        }
                    }
                    for (int i = 0; i < s; ++i) {
                        if (++vals[i] < d_) break;
                        vals[i] = 0;
                    }
                }
            } while (next_combination(dom, n_));
        }
    }

    void seed_worklist() {
        if (kappa_ == 0) return;
        std::vector<int> dom;
        for (int s = 0; s < kappa_; ++s) {
            long long domains = binom(n_, s);
            for (long long rank = 0; rank < domains; ++rank) {
                colex_unrank(rank, s, dom);
                long long base = slot_base_[s] + rank * powers_[s];
                for (long long vi = 0; vi < powers_[s]; ++vi) {
                    long long slot = base + vi;
                    if (!alive(slot)) continue;
                    const std::uint8_t* cnt = &counters_[(size_t)slot * n_];
                    for (int v = 0; v < n_; ++v) {
                        if (cnt[v] == 0 && !std::binary_search(dom.begin(), dom.end(), v)) {
                            kill(slot);
                            break;
                        }
                    }
                }
            }
        }
    }

    void kill(long long slot) {
        if (!alive(slot)) return;
        clear_alive(slot);
        ++eliminated_;
        worklist_.push_back(slot);
    }

    void propagate() {
        std::optional<Rng> rng;
        if (opts_.scramble_seed) rng.emplace(*opts_.scramble_seed);
        std::vector<int> dom, vals, rdom, rvals, edom, evals;
        while (work_head_ < worklist_.size()) {
            if (rng) {
                size_t pick = work_head_ + (size_t)rng->below(worklist_.size() - work_head_);
                std::swap(worklist_[work_head_], worklist_[pick]);
            }
            long long slot = worklist_[work_head_++];
            int s = kappa_;
            while (slot < slot_base_[s]) --s;
            long long local = slot - slot_base_[s];
            colex_unrank(local / powers_[s], s, dom);
            long long vi = local % powers_[s];
            vals.resize(s);
            for (int i = 0; i < s; ++i) {
                vals[i] = (int)(vi % d_);
                vi /= d_;
            }

            // closure under restriction: supermaps of a dead map die
            if (s < kappa_) {
                for (int v = 0; v < n_; ++v) {
                    if (std::binary_search(dom.begin(), dom.end(), v)) continue;
                    auto pos = std::lower_bound(dom.begin(), dom.end(), v) - dom.begin();
                    edom = dom;
                    edom.insert(edom.begin() + pos, v);
                    evals = vals;
                    evals.insert(evals.begin() + pos, 0);
                    long long super = slot_of(edom, evals);
                    long long step = powers_[pos]; // value of v varies at digit `pos`
                    for (int c = 0; c < d_; ++c) {
                        if (alive(super + c * step)) kill(super + c * step);
                    }
                }
            }

            // extension support: restrictions lose this extension
            if (s > 0) {
                for (int i = 0; i < s; ++i) {
                    rdom = dom;
                    rdom.erase(rdom.begin() + i);
                    rvals = vals;
                    rvals.erase(rvals.begin() + i);
                    long long rslot = slot_of(rdom, rvals);
                    std::uint8_t& c = counters_[(size_t)rslot * n_ + dom[i]];
                    if (c > 0 && --c == 0 && alive(rslot)) kill(rslot);
                }
            }
        }
    }
};

} // namespace

LcResult lc(const RelationalStructure& x, const RelationalStructure& a, int kappa,
            const LcOptions& opts) {
    if (!(x.sig == a.sig)) throw InputError("instance and template have different signatures");
    if (kappa < 0) throw InputError("kappa must be >= 0");
    if (kappa == 0) {
        LcResult res;
        res.yes = true;
        res.kappa = 0;
        res.family_size = 1; // the empty map
        res.strategy =
            StrategyBuilder::build(x.domain_size, a.domain_size, 0, {0, 1}, {1}, {1ULL});
        return res;
    }
    const int k = std::min(kappa, x.domain_size);
    LcEngine engine(x, a, k, opts);
    LcResult res = engine.run();
    res.kappa = kappa;
    return res;
}

bool is_consistent_with(const RelationalStructure& x, const PartialMap& f,
                        const Substructure& y, const RelationalStructure& a) {
    if ((int)y.tuple_indices.size() != x.num_symbols())
        throw InputError("substructure tuple lists do not match the signature");
    std::vector<int> verts = y.vertices;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (int v : verts)
        if (v < 0 || v >= x.domain_size) throw InputError("substructure vertex out of range");
    std::vector<int> old_to_new(x.domain_size, -1);
    for (size_t i = 0; i < verts.size(); ++i) old_to_new[verts[i]] = (int)i;

    std::vector<std::vector<Tuple>> rels(x.num_symbols());
    for (int sym = 0; sym < x.num_symbols(); ++sym)
        for (int ti : y.tuple_indices[sym]) {
            if (ti < 0 || ti >= (int)x.relations[sym].size())
                throw InputError("substructure tuple index out of range");
            Tuple img;
            for (int u : x.relations[sym][ti]) {
                if (old_to_new[u] < 0)
                    throw InputError("substructure tuple leaves the vertex set");
                img.push_back(old_to_new[u]);
            }
            rels[sym].push_back(std::move(img));
        }
    if (verts.empty()) return true; // empty substructure constrains nothing
    if (verts.size() > 64)
        throw ResourceError("consistency probe beyond 64 vertices");
    RelationalStructure ystruct = RelationalStructure::make(x.sig, (int)verts.size(), rels);

    std::vector<std::pair<int, int>> seeds;
    for (auto [src, val] : f.pairs)
        if (src >= 0 && src < x.domain_size && old_to_new[src] >= 0)
            seeds.push_back({old_to_new[src], val});
    return find_homomorphism_seeded(ystruct, a, seeds).has_value();
}

namespace {

// All tuples of X as a flat (symbol, index) list.
std::vector<std::pair<int, int>> flat_tuples(const RelationalStructure& x) {
    std::vector<std::pair<int, int>> out;
    for (int sym = 0; sym < x.num_symbols(); ++sym)
        for (int t = 0; t < (int)x.relations[sym].size(); ++t) out.push_back({sym, t});
    return out;
}

Substructure substructure_from(const RelationalStructure& x,
                               const std::vector<std::pair<int, int>>& chosen,
                               const std::vector<int>& extra_vertices) {
    Substructure y;
    y.tuple_indices.assign(x.num_symbols(), {});
    std::set<int> verts(extra_vertices.begin(), extra_vertices.end());
    for (auto [sym, t] : chosen) {
        y.tuple_indices[sym].push_back(t);
        for (int v : x.relations[sym][t]) verts.insert(v);
    }
    y.vertices.assign(verts.begin(), verts.end());
    return y;
}

} // namespace

GapVerdict check_consistency_gap(const RelationalStructure& x, const RelationalStructure& a,
                                 int kappa, const Rat& gamma, long long probe_budget) {
    if (!(x.sig == a.sig)) throw InputError("instance and template have different signatures");
    if (kappa < 0) throw InputError("kappa must be >= 0");
    const auto all_tuples = flat_tuples(x);
    const long long m = (long long)all_tuples.size();
    const int n = x.domain_size;
    const int d = a.domain_size;

    const long long k1 = std::min((Rat(1) * gamma).floor(), m);
    const long long k2 = std::min((gamma / Rat(d)).floor(), m);

    double fcount = 0;
    for (int s = 0; s <= std::min(kappa, n); ++s) {
        double doms = 1;
        for (int i = 0; i < s; ++i) doms = doms * (n - i) / (i + 1);
        double pw = 1;
        for (int i = 0; i < s; ++i) pw *= d;
        fcount += doms * pw;
    }
    double subsets = 1;
    {
        double c1 = 1, c2 = 1;
        for (long long i = 0; i < k1; ++i) c1 = c1 * (double)(m - i) / (double)(i + 1);
        for (long long i = 0; i < k2; ++i) c2 = c2 * (double)(m - i) / (double)(i + 1);
        subsets = c1 + c2;
    }
    if (fcount * subsets > (double)probe_budget)
        throw ResourceError("consistency-gap check exceeds the probe budget");

    // Consistency is monotone in the tuple subset, so only the extreme sizes
    // need checking; a failing f is then re-examined by increasing size to
    // produce the minimal witness.
    auto consistent_with_subset = [&](const PartialMap& f,
                                      const std::vector<std::pair<int, int>>& chosen) {
        std::vector<int> extra;
        for (auto [src, val] : f.pairs) {
            (void)val;
            extra.push_back(src);
        }
        return is_consistent_with(x, f, substructure_from(x, chosen, extra), a);
    };

    auto for_each_subset = [&](long long k, auto&& body) {
        std::vector<int> idx(k);
        for (long long i = 0; i < k; ++i) idx[i] = (int)i;
        if (k == 0) {
            std::vector<std::pair<int, int>> chosen;
            body(chosen);
            return;
        }
        std::vector<std::pair<int, int>> chosen((size_t)k);
        for (;;) {
            for (long long i = 0; i < k; ++i) chosen[i] = all_tuples[idx[i]];
            if (!body(chosen)) return;
            if (!next_combination(idx, (int)m)) return;
        }
    };

    GapVerdict verdict;
    verdict.holds = true;

    std::vector<int> dom;
    for (int s = 0; s <= std::min(kappa, n); ++s) {
        dom.resize(s);
        for (int i = 0; i < s; ++i) dom[i] = i;
        bool more = s > 0;
        do {
            std::vector<int> vals(s, 0);
            long long assignments = 1;
            for (int i = 0; i < s; ++i) assignments *= d;
            for (long long vi = 0; vi < assignments; ++vi) {
                std::vector<std::pair<int, int>> pairs;
                for (int i = 0; i < s; ++i) pairs.push_back({dom[i], vals[i]});
                PartialMap f = PartialMap::from_pairs(pairs);

                bool first_disjunct = true;
                for_each_subset(k1, [&](const std::vector<std::pair<int, int>>& chosen) {
                    if (!consistent_with_subset(f, chosen)) {
                        first_disjunct = false;
                        return false;
                    }
                    return true;
                });
                if (!first_disjunct) {
                    bool second_disjunct = false;
                    for_each_subset(k2, [&](const std::vector<std::pair<int, int>>& chosen) {
                        if (!consistent_with_subset(f, chosen)) {
                            second_disjunct = true;
                            return false;
                        }
                        return true;
                    });
                    if (!second_disjunct) {
                        // minimal inconsistent substructure as the witness
                        for (long long k = k2 + 1; k <= k1 && verdict.holds; ++k) {
                            for_each_subset(k, [&](const std::vector<std::pair<int, int>>& chosen) {
                                if (!consistent_with_subset(f, chosen)) {
                                    std::vector<int> extra;
                                    for (auto [src, val] : f.pairs) {
                                        (void)val;
                                        extra.push_back(src);
                                    }
                                    verdict.holds = false;
                                    verdict.witness =
                                        GapWitness{f, substructure_from(x, chosen, extra)};
                                    return false;
                                }
                                return true;
                            });
                        }
                        return verdict;
                    }
                }

                for (int i = 0; i < s; ++i) {
                    if (++vals[i] < d) break;
                    vals[i] = 0;
                }
            }
            more = s > 0 && next_combination(dom, n);
        } while (more);
    }
    return verdict;
}

} // namespace lcmix
