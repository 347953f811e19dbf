#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcmix/hypergraph.hpp"
#include "lcmix/rational.hpp"

namespace lcmix {

// The derived parameter block of the random construction, evaluated in
// extended precision. n0 stays absent: no finite existence threshold backs
// the asymptotic guarantee, so reports say so instead of guessing.
struct GeneratorParams {
    int r = 2, g = 2, h = 1;
    Rat beta{3, 2};
    long double ell = 0, nu = 0, theta = 0, mu = 0, delta = 0;
    std::optional<long long> n0;
    bool mu_bound_holds = false;   // mu <= (nu/ell)^{1/(r-1)} (r/e)^{r/(r-1)}
    bool theta_bound_holds = false; // mu^{beta-1} * theta <= 1/3
};

GeneratorParams derived_params(int g, int h, const Rat& beta, int r);

// Erdos-Renyi r-uniform sampling: each candidate edge, in lexicographic
// order, is kept with probability p against the seeded stream.
Hypergraph sample_er(int n, double p, int r, std::uint64_t seed);

struct BreakResult {
    bool ok = false;
    Hypergraph result;            // meaningful when ok
    std::vector<int> removed;     // original vertex ids
    std::vector<int> kept;        // new index -> original vertex id
};

// Greedy hitting set over the Berge cycles of length < g: repeatedly removes
// the vertex on the most short cycles. pad_to_budget fills the removal set up
// to exactly `budget` vertices. Fails (ok=false) when more than `budget`
// removals would be needed.
BreakResult break_short_cycles(const Hypergraph& h, int g, int budget, std::uint64_t seed,
                               bool pad_to_budget = false);

// Upper bound on the probability that an Erdos-Renyi hypergraph misses
// (mu,nu)-vertex-threshold sparsity, evaluated with log-domain terms:
//   sum_{i=1}^{floor(mu n)} ((n/i)^{1-(r-1)nu} ell^nu e^{1+(r+1)nu} r^{-r nu} nu^{-nu})^i
long double sparsity_failure_bound(int r, long double ell, long double n, long double mu,
                                   long double nu);

// Every subhypergraph on at most mu*n vertices has m' < nu * n'. Exact by
// subset enumeration for m <= 20, otherwise closure-based with a mode tag.
SparsityVerdict vertex_threshold_sparse(const Hypergraph& h, const Rat& mu, const Rat& nu);

// Numeric side conditions under which vertex-threshold sparsity implies
// (gamma,beta)-threshold sparsity: beta/nu >= r-1 and n >= (r-1)*gamma/(beta*mu).
bool vertex_threshold_implies_threshold(int r, long long n, const Rat& mu, const Rat& nu,
                                        const Rat& beta, const Rat& gamma);

enum class PropertyVerdict { VerifiedTrue, VerifiedFalse, Unknown };

struct GenerationReport {
    int attempts = 0;
    bool success = false;
    std::uint64_t seed = 0;
    long long final_n = 0, final_m = 0;
    std::optional<int> girth;
    PropertyVerdict girth_ok = PropertyVerdict::Unknown;
    PropertyVerdict chromatic_ok = PropertyVerdict::Unknown;
    std::string chromatic_certificate; // "exact chi=4", "independence bound", ...
    std::optional<int> chi_exact;
    std::optional<int> independence;
    SparsityVerdict threshold_sparsity;
    std::string failure; // last failing stage when !success
};

struct GenOptions {
    bool proof_faithful = false; // remove exactly n/2 vertices, not a minimal hitting set
    bool allow_unknown = false;  // accept Unknown verdicts
    long long chi_budget = kDefaultSearchBudget;
    int cycle_budget = -1;       // default n/2
};

// Rejection loop: sample, break short cycles, then verify girth >= g, a
// chromatic certificate for chi >= h, and (delta*n, beta)-threshold sparsity.
// Returns the first fully-verified instance, or the best failing report.
std::pair<std::optional<Hypergraph>, GenerationReport> generate_verified(
    int n, double p, int r, int g, int h, const Rat& beta, const Rat& delta,
    int max_attempts, std::uint64_t seed, const GenOptions& opts = {});

} // namespace lcmix
