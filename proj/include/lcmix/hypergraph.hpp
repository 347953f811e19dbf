#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcmix/rational.hpp"

namespace lcmix {

// r-uniform hypergraph on a dense vertex range 0..n-1. Edges are sorted
// r-element vertex sets, stored sorted and deduplicated so edge indices are
// stable and comparisons are cheap.
struct Hypergraph {
    int n = 0;
    int r = 2;
    std::vector<std::vector<int>> edges;

    static Hypergraph make(int n, int r, std::vector<std::vector<int>> edges);

    int m() const { return (int)edges.size(); }
    std::vector<int> degrees() const;
    std::vector<std::vector<int>> incident_edges() const; // vertex -> edge indices
};

// Edge indices of links: exactly two vertices of degree 2, the other r-2 of
// degree 1.
std::vector<int> links(const Hypergraph& h);

// Edge indices of pendent hyperedges: at most one vertex of degree >= 2.
std::vector<int> pendent_edges(const Hypergraph& h);

// A maximal fiber: an inclusion-maximal chain of adjacent links, in chain
// order. Degenerate when the chain closes into a cycle.
struct Fiber {
    std::vector<int> link_edges;
    bool degenerate = false;
};

struct FiberDecomposition {
    std::vector<int> link_edges;
    std::vector<Fiber> maximal_fibers;
    std::vector<int> pendent;
};

FiberDecomposition fiber_decomposition(const Hypergraph& h);

// Max number of mutually edge-disjoint tau-fibers; equals the sum of
// floor(size/tau) over maximal fibers.
long long tau_fibrosity(const Hypergraph& h, int tau);

// Shortest Berge cycle length (>= 2), nullopt when acyclic.
std::optional<int> girth(const Hypergraph& h);

Rat sdr(const Hypergraph& h, int edge_index);

struct SdrTotal {
    Rat total;
    bool identity_holds; // total == n, which requires no isolated vertices
};
SdrTotal sdr_total(const Hypergraph& h);

bool is_beta_sparse(const Hypergraph& h, const Rat& beta);

// Exact decision via a maximum-closure min-cut over edge subsets: the vertex
// set of a candidate subhypergraph is exactly the union of its edges.
bool is_hereditarily_beta_sparse(const Hypergraph& h, const Rat& beta);

enum class VerdictMode { Exact, Implied, Unknown };

struct SparsityVerdict {
    std::optional<bool> value;
    VerdictMode mode = VerdictMode::Unknown;
    std::vector<int> witness_edges; // a violating edge subset, when value==false
};

// (gamma,beta)-threshold sparsity: every subhypergraph with at most gamma
// edges is beta-sparse. Exact by subset enumeration for m <= 20; otherwise
// "hereditarily sparse implies threshold sparse" with the mode tag, or
// Unknown.
SparsityVerdict is_threshold_sparse(const Hypergraph& h, const Rat& gamma, const Rat& beta);

inline constexpr long long kDefaultSearchBudget = 50'000'000;

// Exact weak chromatic number (every edge meets two classes) by branch and
// bound. Throws ResourceError once node_budget search nodes are exhausted.
int chromatic_number(const Hypergraph& h, long long node_budget = kDefaultSearchBudget);

// Decision form: is there a weak coloring with exactly c classes available.
bool is_weakly_colorable(const Hypergraph& h, int colors, long long node_budget = kDefaultSearchBudget);

// Largest vertex set containing no full hyperedge, exact branch and bound.
int independence_number(const Hypergraph& h, long long node_budget = kDefaultSearchBudget);

struct Joint {
    std::vector<int> vertices; // 1 or 2 vertices
};

struct JointOwner {
    enum class Kind { Fiber, PendentEdge };
    Kind kind;
    int index; // fiber index in the decomposition, or edge index
};

// Seed is reserved for future randomized tie-breaking; ties go to the least
// vertex index.
Joint joint_of(const Hypergraph& h, const FiberDecomposition& d, const JointOwner& owner,
               std::uint64_t seed = 0);

// Joint of an explicit chain of links in chain order. For open chains: the
// two end vertices incident to edges outside the chain. Degenerate chains
// yield the least degree-2 vertex.
Joint fiber_joint(const Hypergraph& h, const std::vector<int>& chain, bool degenerate);

struct FibrosityReport {
    int tau = 1;
    long long fbr_tau = 0;
    long long fbr_max = 0;
    long long pendency = 0;
    long long link_count = 0;
    std::optional<int> girth; // nullopt = infinite
    Rat sdr_total;
    bool sdr_identity_holds = false;
    std::optional<Rat> beta;
    std::optional<bool> beta_sparse;
    std::optional<bool> hereditarily_beta_sparse;
};

FibrosityReport fibrosity_report(const Hypergraph& h, int tau,
                                 const std::optional<Rat>& beta = std::nullopt);

} // namespace lcmix
