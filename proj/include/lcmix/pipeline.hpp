#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcmix/aperiodicity.hpp"
#include "lcmix/consistency.hpp"
#include "lcmix/generator.hpp"
#include "lcmix/hypergraph.hpp"
#include "lcmix/structures.hpp"

namespace lcmix {

// Extends a homomorphism defined outside a fiber (except its joint) across
// the fiber, by reading the position pattern off the orientation and walking
// the template. The chain must be links of symmetrize(x) in chain order with
// at least mixing-time many of them. Returns a verified homomorphism on
// dom(h) plus the fiber vertices.
PartialMap extend_over_fiber(const OrientedMonicStructure& x, const RelationalStructure& a,
                             const std::vector<int>& fiber_chain, const Joint& joint,
                             const PartialMap& h);

// Extends a homomorphism over a pendent hyperedge: pick any template tuple
// carrying h(joint) at the joint's position and copy it onto the edge.
PartialMap extend_over_pendent(const OrientedMonicStructure& x, const RelationalStructure& a,
                               int pendent_edge, const Joint& joint, const PartialMap& h);

// min(1/n0, (1/(10 r tau) - beta + 1) (r-1) delta / (beta n_A))
long double epsilon_bound(int n_a, int r, long long tau, const Rat& beta, long double delta,
                          long long n0);

// (1/(10 r tau) - beta + 1)(r-1)/beta, the exact-rational normalization
// factor of the bound above; at most 1 for admissible beta.
Rat epsilon_rational_factor(int r, long long tau, const Rat& beta);

// Least c such that the domain of the monic structure admits a c-partition
// with no tuple's entry set monochromatic. Finite iff the structure is
// loopless.
int monic_chromatic_number(const RelationalStructure& monic, long long node_budget = kDefaultSearchBudget);

struct PipelineConfig {
    long long n = 60;
    double p = 0.09;
    std::vector<int> kappa_list{0, 1, 2, 3};
    std::uint64_t seed = 0;
    int max_attempts = 20;
    long long lc_budget = 50'000'000;
    long long chi_budget = kDefaultSearchBudget;
    std::optional<Rat> beta; // default 1 + 1/(10 r tau + 1)
    bool proof_faithful = false;
    long long direct_hom_limit = 25; // exhaustive X->B search at or below this n
    // Floor for the generation girth target (the mixing time always applies).
    // Raising it to 4 removes the triangle-sharing patterns that make dense
    // instances locally refutable at small kappa.
    int min_girth = 2;
    // Skip the strong-to-weak homomorphism search and take A -> B as given.
    bool assume_strong_to_weak = false;
};

struct KappaVerdict {
    int kappa = 0;
    std::string answer; // "yes", "no", "budget-exceeded"
    long long family_size = -1;
};

struct FoolingReport {
    bool fooled = false;
    int fooled_kappa = -1; // largest kappa with a YES, when fooled
    std::string abort_stage; // nonempty when a verification stage refused

    long long tau = 0;
    int r = 0;
    int chromatic_b = 0; // c: chromatic number of the weak template
    int chi_target = 0;  // c + 1
    bool a_was_monic = true, b_was_monic = true;

    long long n = 0, m = 0;
    std::optional<int> instance_girth;
    GenerationReport generation;
    SparsityVerdict sparsity_at_na;   // informational, gamma = n_A
    bool hereditarily_sparse = false; // informational, at beta

    std::vector<KappaVerdict> lc_runs;
    std::string non_hom_certificate;
    bool non_hom_exact = false;

    std::uint64_t seed = 0;
    Rat beta{41, 40};
    long double delta_derived = 0;
    long double epsilon_derived = 0;
    double kappa_over_n = 0;
    std::string notes;
};

// End-to-end fooling experiment: verify the template pair, generate a
// high-girth high-chromatic instance, orient it, run local consistency at
// each requested level, and certify non-homomorphism to the weak template.
FoolingReport fooling_pipeline(const RelationalStructure& a, const RelationalStructure& b,
                               const PipelineConfig& config);

} // namespace lcmix
