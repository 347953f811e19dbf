#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcmix/boolmat.hpp"
#include "lcmix/structures.hpp"

namespace lcmix {

// Orientation prescription for a length-tau walk: rows of ordered position
// pairs (p, q), p != q, within the arity of the structure.
struct TauPattern {
    std::vector<std::pair<int, int>> rows;

    int length() const { return (int)rows.size(); }
    static TauPattern directed(int tau);    // all rows (0, 1)
    static TauPattern alternating(int tau); // (0,1), (1,0), (0,1), ...
};

struct LambdaWalk {
    std::vector<int> vertices;      // a_0 .. a_tau
    std::vector<int> tuple_indices; // indices into the monic relation
};

enum class AperiodicityStatus { Aperiodic, NotAperiodic, Undecided };

struct AperiodicityReport {
    AperiodicityStatus status = AperiodicityStatus::NotAperiodic;
    std::optional<long long> mixing_time;
    std::optional<long long> upper_bound_used;
    // Why the answer is what it is: "arity<2", "zero-slice-row", a repeated
    // level set, or the cap for Undecided.
    std::string certificate;

    bool aperiodic() const { return status == AperiodicityStatus::Aperiodic; }
};

// Exact mixing time by breadth-first iteration of level sets: S_1 is the set
// of slice matrices, S_{t+1} = {bool_product(s, m)}. Aperiodic at the first
// S_t = {J}; a repeated level set (or arity < 2, or a slice with a zero
// row/column) certifies non-aperiodicity. `cap` bounds the iteration count.
AperiodicityReport mixing_time_monic(const RelationalStructure& monic,
                                     std::optional<long long> cap = std::nullopt);

// Aperiodicity of an arbitrary structure: mixing_time_monic of its monic
// product. Structures of arity < 2 after the product are non-aperiodic by
// convention (no pattern exists over a single position).
AperiodicityReport is_aperiodic(const RelationalStructure& a);

// Digraph criterion: primitive adjacency and irreducible M M^T. When
// aperiodic the exact mixing time is computed and checked against the
// n^4-2n^3+2n^2 bound.
AperiodicityReport digraph_aperiodicity(const BoolMatrix& m);

// The digraph with adjacency m as a monic structure with one binary relation.
RelationalStructure digraph_to_monic(const BoolMatrix& m);

// Walk reconstruction by forward reachability with deterministic backtracking
// (least predecessor vertex, then least tuple index).
std::optional<LambdaWalk> find_lambda_walk(const RelationalStructure& monic,
                                           const TauPattern& pattern, int a, int b);

bool verify_lambda_walk(const RelationalStructure& monic, const TauPattern& pattern,
                        int a, int b, const LambdaWalk& walk);

} // namespace lcmix
