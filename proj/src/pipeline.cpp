#include "lcmix/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "lcmix/rng.hpp"

namespace lcmix {

namespace {

// sorted entry set -> tuple index of the oriented relation
std::map<std::vector<int>, int> tuple_by_edge(const OrientedMonicStructure& x) {
    std::map<std::vector<int>, int> out;
    for (int t = 0; t < (int)x.tuples().size(); ++t) {
        std::vector<int> key = x.tuples()[t];
        std::sort(key.begin(), key.end());
        out[key] = t;
    }
    return out;
}

int position_of(const Tuple& t, int vertex) {
    for (int i = 0; i < (int)t.size(); ++i)
        if (t[i] == vertex) return i;
    throw InputError("vertex is not on the expected tuple");
}

long long require_aperiodic(const RelationalStructure& a) {
    AperiodicityReport rep = mixing_time_monic(a);
    if (!rep.aperiodic())
        throw InputError("template is not aperiodic: " + rep.certificate);
    return *rep.mixing_time;
}

PartialMap merge_extension(const PartialMap& h, const std::vector<std::pair<int, int>>& fiber_part) {
    std::map<int, int> merged;
    for (auto [v, val] : fiber_part) merged[v] = val;
    for (auto [v, val] : h.pairs)
        if (!merged.count(v)) merged[v] = val;
    std::vector<std::pair<int, int>> pairs(merged.begin(), merged.end());
    return PartialMap::from_pairs(std::move(pairs));
}

void verify_extension(const OrientedMonicStructure& x, const RelationalStructure& a,
                      const PartialMap& result) {
    for (const Tuple& t : x.tuples()) {
        Tuple img;
        bool covered = true;
        for (int v : t) {
            auto val = result.at(v);
            if (!val) { covered = false; break; }
            img.push_back(*val);
        }
        if (covered &&
            !std::binary_search(a.relations[0].begin(), a.relations[0].end(), img))
            throw std::logic_error("extension failed re-verification");
    }
}

} // namespace

PartialMap extend_over_fiber(const OrientedMonicStructure& x, const RelationalStructure& a,
                             const std::vector<int>& fiber_chain, const Joint& joint,
                             const PartialMap& h) {
    if (fiber_chain.empty()) throw InputError("empty fiber chain");
    const long long tau_mix = require_aperiodic(a);
    const long long tau = (long long)fiber_chain.size();
    if (tau < tau_mix)
        throw InputError("fiber of length " + std::to_string(tau) +
                         " is shorter than the mixing time " + std::to_string(tau_mix));

    Hypergraph sym = symmetrize(x);
    auto deg = sym.degrees();
    auto by_edge = tuple_by_edge(x);

    int u, v;
    if (joint.vertices.size() == 1) {
        u = v = joint.vertices[0];
    } else if (joint.vertices.size() == 2) {
        u = joint.vertices[0];
        v = joint.vertices[1];
    } else {
        throw InputError("joint must have one or two vertices");
    }

    std::vector<int> chain = fiber_chain;
    auto on_edge = [&](int vertex, int e) {
        return std::binary_search(sym.edges[e].begin(), sym.edges[e].end(), vertex);
    };
    if (u == v) {
        // degenerate fiber: rotate so the walk starts and ends at the joint
        int cut = -1;
        const int len = (int)chain.size();
        for (int i = 0; i < len && cut < 0; ++i)
            if (on_edge(v, chain[i]) && on_edge(v, chain[(i + 1) % len])) cut = i;
        if (cut < 0) throw InputError("joint does not connect consecutive chain links");
        std::rotate(chain.begin(), chain.begin() + (cut + 1) % len, chain.end());
    } else {
        if (on_edge(v, chain.front()) && on_edge(u, chain.back())) std::swap(u, v);
        if (!on_edge(u, chain.front()) || !on_edge(v, chain.back()))
            throw InputError("joint vertices do not sit on the chain ends");
    }

    auto hu = h.at(u), hv = h.at(v);
    if (!hu || !hv) throw InputError("homomorphism is not defined on the joint");

    // walk the chain picking the unique next degree-2 vertex; collect the
    // pattern rows from tuple positions
    TauPattern pattern;
    std::vector<int> tuple_ids;
    int w_prev = u;
    for (int i = 0; i < (int)chain.size(); ++i) {
        int e = chain[i];
        auto it = by_edge.find(sym.edges[e]);
        if (it == by_edge.end()) throw std::logic_error("chain edge missing from orientation");
        const Tuple& xt = x.tuples()[it->second];
        int w_next = -1;
        if (i + 1 == (int)chain.size()) {
            w_next = v;
        } else {
            for (int cand : sym.edges[e])
                if (cand != w_prev && deg[cand] == 2) w_next = cand;
        }
        if (w_next < 0 || !on_edge(w_prev, e) || !on_edge(w_next, e))
            throw InputError("chain is not a fiber of the symmetrization");
        pattern.rows.push_back({position_of(xt, w_prev), position_of(xt, w_next)});
        tuple_ids.push_back(it->second);
        w_prev = w_next;
    }

    auto walk = find_lambda_walk(a, pattern, *hu, *hv);
    if (!walk)
        throw std::logic_error("no lambda walk despite the mixing-time guarantee");

    std::vector<std::pair<int, int>> fiber_part;
    for (int i = 0; i < (int)tuple_ids.size(); ++i) {
        const Tuple& xt = x.tuples()[tuple_ids[i]];
        const Tuple& at = a.relations[0][walk->tuple_indices[i]];
        for (int j = 0; j < (int)xt.size(); ++j) fiber_part.push_back({xt[j], at[j]});
    }
    PartialMap result = merge_extension(h, fiber_part);
    verify_extension(x, a, result);
    return result;
}

PartialMap extend_over_pendent(const OrientedMonicStructure& x, const RelationalStructure& a,
                               int pendent_edge, const Joint& joint, const PartialMap& h) {
    require_aperiodic(a);
    if (joint.vertices.size() != 1)
        throw InputError("pendent joints are singletons");
    const int v = joint.vertices[0];
    Hypergraph sym = symmetrize(x);
    if (pendent_edge < 0 || pendent_edge >= sym.m()) throw InputError("edge index out of range");
    auto by_edge = tuple_by_edge(x);
    const Tuple& xt = x.tuples()[by_edge.at(sym.edges[pendent_edge])];
    const int j = position_of(xt, v);
    auto hv = h.at(v);
    if (!hv) throw InputError("homomorphism is not defined on the joint");

    int chosen = -1;
    for (int t = 0; t < (int)a.relations[0].size() && chosen < 0; ++t)
        if (a.relations[0][t][j] == *hv) chosen = t;
    if (chosen < 0)
        throw std::logic_error("aperiodic template misses a tuple through the joint value");

    std::vector<std::pair<int, int>> edge_part;
    const Tuple& at = a.relations[0][chosen];
    for (int i = 0; i < (int)xt.size(); ++i) edge_part.push_back({xt[i], at[i]});
    PartialMap result = merge_extension(h, edge_part);
    verify_extension(x, a, result);
    return result;
}

Rat epsilon_rational_factor(int r, long long tau, const Rat& beta) {
    if (r < 2 || tau < 1) throw InputError("need r >= 2 and tau >= 1");
    Rat gap = Rat(1, 10 * r * tau) - beta + Rat(1);
    if (!(gap > Rat(0))) throw InputError("beta must be below 1 + 1/(10 r tau)");
    return gap * Rat(r - 1) / beta;
}

long double epsilon_bound(int n_a, int r, long long tau, const Rat& beta, long double delta,
                          long long n0) {
    if (n_a < 1) throw InputError("template domain must be nonempty");
    if (!(delta > 0)) throw InputError("delta must be positive");
    if (n0 < 1) throw InputError("n0 must be >= 1");
    Rat factor = epsilon_rational_factor(r, tau, beta);
    long double second = (long double)factor.num() / (long double)factor.den() * delta / n_a;
    return std::min(1.0L / (long double)n0, second);
}

int monic_chromatic_number(const RelationalStructure& monic, long long node_budget) {
    if (!monic.is_monic()) throw InputError("chromatic number of a monic structure only");
    // entry sets as a (non-uniform) weak-coloring constraint system
    std::vector<std::vector<int>> sets;
    for (const Tuple& t : monic.relations[0]) {
        std::vector<int> s = t;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.size() == 1)
            throw InputError("constant tuple present; the chromatic number is infinite");
        sets.push_back(std::move(s));
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    const int n = monic.domain_size;
    if (sets.empty()) return 1;

    std::vector<int> color(n, -1);
    long long budget = node_budget;
    std::function<bool(int, int, int)> assign = [&](int vertex, int colors, int max_used) -> bool {
        if (--budget < 0) throw ResourceError("chromatic search budget exhausted");
        if (vertex == n) return true;
        int limit = std::min(colors, max_used + 1);
        for (int c = 0; c < limit; ++c) {
            color[vertex] = c;
            bool ok = true;
            for (const auto& s : sets) {
                if (std::find(s.begin(), s.end(), vertex) == s.end()) continue;
                bool complete = true, mono = true;
                for (int u : s) {
                    if (color[u] < 0) { complete = false; break; }
                    if (color[u] != c) mono = false;
                }
                if (complete && mono) { ok = false; break; }
            }
            if (ok && assign(vertex + 1, colors, std::max(max_used, c + 1))) return true;
            color[vertex] = -1;
        }
        color[vertex] = -1;
        return false;
    };
    for (int c = 2; c <= n; ++c) {
        std::fill(color.begin(), color.end(), -1);
        if (assign(0, c, 0)) return c;
    }
    return n;
}

FoolingReport fooling_pipeline(const RelationalStructure& a, const RelationalStructure& b,
                               const PipelineConfig& config) {
    FoolingReport rep;
    rep.seed = config.seed;
    if (!(a.sig == b.sig)) throw InputError("template pair must share a signature");

    // stage: weak template must be loopless
    if (has_loop(b)) {
        rep.abort_stage = "weak template has a loop (every instance maps to it)";
        return rep;
    }
    // stage: A -> B, unless declared by the caller
    if (!config.assume_strong_to_weak && !find_homomorphism(a, b)) {
        rep.abort_stage = "no homomorphism from the strong to the weak template";
        return rep;
    }

    rep.a_was_monic = a.is_monic();
    rep.b_was_monic = b.is_monic();
    RelationalStructure a_mon = rep.a_was_monic ? a : monic_product(a);
    RelationalStructure b_mon = rep.b_was_monic ? b : monic_product(b);

    // stage: aperiodicity and mixing time
    AperiodicityReport arep = mixing_time_monic(a_mon);
    if (!arep.aperiodic()) {
        rep.abort_stage = "strong template is not aperiodic: " + arep.certificate;
        return rep;
    }
    rep.tau = *arep.mixing_time;
    rep.r = a_mon.arity(0);

    // stage: chromatic number of the weak template
    rep.chromatic_b = monic_chromatic_number(b_mon, config.chi_budget);
    rep.chi_target = rep.chromatic_b + 1;

    rep.beta = config.beta.value_or(Rat(1) + Rat(1, 10 * rep.r * rep.tau + 1));
    if (!(rep.beta > Rat(1)) || !(rep.beta < Rat(1) + Rat(1, 10 * rep.r * rep.tau)))
        throw InputError("beta must lie in (1, 1 + 1/(10 r tau))");

    GeneratorParams params = derived_params((int)rep.tau, rep.chi_target, rep.beta, rep.r);
    rep.delta_derived = params.delta;
    Rat eps_factor = epsilon_rational_factor(rep.r, rep.tau, rep.beta);
    rep.epsilon_derived =
        (long double)eps_factor.num() / eps_factor.den() * params.delta / a_mon.domain_size;
    rep.notes = "existence threshold n0 for the asymptotic guarantee is unquantified; derived delta = " +
                std::to_string((double)params.delta);

    // stage: generation. The derived-regime gamma = delta*n is below one tuple
    // at desk scale, so the threshold check there is vacuous; meaningful
    // sparsity verdicts are reported separately below.
    Rng rng(config.seed);
    GenOptions gopts;
    gopts.proof_faithful = config.proof_faithful;
    gopts.chi_budget = config.chi_budget;
    Rat delta_rat(0);
    if (params.delta * config.n >= 1) {
        delta_rat = Rat((long long)(params.delta * 1e6L), 1'000'000);
    }
    const int girth_target = std::max((int)rep.tau, config.min_girth);
    auto [instance_opt, gen_rep] =
        generate_verified((int)config.n, config.p, rep.r, girth_target, rep.chi_target, rep.beta,
                          delta_rat, config.max_attempts, rng.next(), gopts);
    rep.generation = gen_rep;
    if (!instance_opt) {
        rep.abort_stage = "generation failed: " + gen_rep.failure;
        return rep;
    }
    const Hypergraph& hg = *instance_opt;
    rep.n = hg.n;
    rep.m = hg.m();
    rep.instance_girth = girth(hg);
    rep.sparsity_at_na = is_threshold_sparse(hg, Rat(a_mon.domain_size), rep.beta);
    rep.hereditarily_sparse = is_hereditarily_beta_sparse(hg, rep.beta);

    OrientedMonicStructure x = orient(hg, rng.next());
    // instances must share the monic template's signature symbol
    x.s.sig = a_mon.sig;

    // stage: non-homomorphism certificate for the weak template
    if (hg.n <= config.direct_hom_limit) {
        auto hom = find_homomorphism(x.s, b_mon);
        if (hom) {
            rep.non_hom_certificate = "exhaustive search found a homomorphism to the weak template";
            rep.non_hom_exact = false; // instance maps to B: never a fooling run
        } else {
            rep.non_hom_certificate = "exhaustive homomorphism search (none exists)";
            rep.non_hom_exact = true;
        }
    } else if (rep.generation.chromatic_ok == PropertyVerdict::VerifiedTrue) {
        rep.non_hom_certificate = "chi(symmetrization) >= " + std::to_string(rep.chi_target) +
                                  " > c rules out mapping into the c-clique cover of the weak template";
        rep.non_hom_exact = true;
    } else {
        rep.non_hom_certificate = "no exact certificate available";
        rep.non_hom_exact = false;
    }

    // stage: local consistency per level
    for (int kappa : config.kappa_list) {
        KappaVerdict kv;
        kv.kappa = kappa;
        try {
            LcOptions lopts;
            lopts.slot_budget = config.lc_budget;
            LcResult res = lc(x.s, a_mon, kappa, lopts);
            kv.answer = res.yes ? "yes" : "no";
            kv.family_size = res.family_size;
            if (res.yes && rep.non_hom_exact && kappa > rep.fooled_kappa) {
                rep.fooled = true;
                rep.fooled_kappa = kappa;
            }
        } catch (const ResourceError& e) {
            kv.answer = "budget-exceeded";
        }
        rep.lc_runs.push_back(kv);
    }
    if (rep.fooled && rep.n > 0) rep.kappa_over_n = (double)rep.fooled_kappa / (double)rep.n;
    return rep;
}

} // namespace lcmix
