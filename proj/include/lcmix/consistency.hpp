#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "lcmix/rational.hpp"
#include "lcmix/structures.hpp"

namespace lcmix {

// Substructure of X: a vertex subset plus, per symbol, indices into X's
// relation tuple lists. Tuples need not be induced.
struct Substructure {
    std::vector<int> vertices;
    std::vector<std::vector<int>> tuple_indices;
};

// Surviving family of a local-consistency run, stored as a bitset over the
// dense (domain, assignment) slot space. Immutable; safe to share.
class Strategy {
public:
    int kappa() const { return kappa_; }
    long long size() const;
    bool contains(const PartialMap& f) const;

    // Applies fn to every surviving map as (sorted domain, values) spans.
    void for_each(const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) const;

private:
    friend struct StrategyBuilder;
    int n_ = 0, d_ = 0, kappa_ = 0;
    std::vector<long long> slot_base_;        // per domain size
    std::vector<long long> powers_;           // d^s
    std::vector<std::uint64_t> alive_;
    long long slot_of(const std::vector<int>& domain, const std::vector<int>& values) const;
};

struct LcResult {
    bool yes = false;
    int kappa = 0;
    long long family_size = 0;
    long long eliminated = 0; // deletions of initially-valid maps
    std::shared_ptr<const Strategy> strategy; // present when yes
};

struct LcOptions {
    // Cap on the candidate-map slot count sum_{s<=kappa} C(n,s)*d^s. This is
    // what actually bounds memory and time, which the nominal (n_X+n_A)^kappa
    // figure understates.
    long long slot_budget = 50'000'000;
    // Scrambles the deletion worklist; the fixpoint is order-independent and
    // tests compare runs under different orders.
    std::optional<std::uint64_t> scramble_seed;
};

// kappa-level local consistency. The family holds all partial homomorphisms
// on induced substructures with |dom| <= kappa; a map dies when a restriction
// died, when some vertex has no surviving one-point extension (|dom| <
// kappa), or when |dom| = kappa and some vertex admits no valid one-point
// extension at all. kappa = 0 answers YES unconditionally.
LcResult lc(const RelationalStructure& x, const RelationalStructure& a, int kappa,
            const LcOptions& opts = {});

// True iff some homomorphism from Y to A agrees with f on dom(f) & Y.
bool is_consistent_with(const RelationalStructure& x, const PartialMap& f,
                        const Substructure& y, const RelationalStructure& a);

struct GapWitness {
    PartialMap f;
    Substructure y;
};

struct GapVerdict {
    bool holds = false;
    std::optional<GapWitness> witness; // present when the gap fails
};

// (kappa,gamma)-consistency gap, exhaustively over all partial maps of domain
// size <= kappa and all tuple subsets at the two monotone threshold sizes.
// Tiny-scale only; the budget caps elementary consistency probes.
GapVerdict check_consistency_gap(const RelationalStructure& x, const RelationalStructure& a,
                                 int kappa, const Rat& gamma,
                                 long long probe_budget = 20'000'000);

} // namespace lcmix
