#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcmix/errors.hpp"
#include "lcmix/hypergraph.hpp"

namespace lcmix {

using Tuple = std::vector<int>;

struct RelationSymbol {
    std::string name;
    int arity = 1;
};

struct Signature {
    std::vector<RelationSymbol> symbols;

    void validate() const;
    bool operator==(const Signature& o) const;
};

// Finite relational structure over a dense vertex range 0..domain_size-1.
// Immutable after construction; every operation below is a pure function.
struct RelationalStructure {
    Signature sig;
    int domain_size = 0;
    std::vector<std::vector<Tuple>> relations; // per symbol, sorted, no duplicates

    static RelationalStructure make(Signature sig, int domain_size,
                                    std::vector<std::vector<Tuple>> relations);

    int num_symbols() const { return (int)sig.symbols.size(); }
    int arity(int symbol) const { return sig.symbols[symbol].arity; }
    long long total_tuples() const;
    bool is_monic() const { return sig.symbols.size() == 1; }
};

// Partial map with distinct sources, kept sorted by source.
struct PartialMap {
    std::vector<std::pair<int, int>> pairs;

    static PartialMap from_pairs(std::vector<std::pair<int, int>> pairs);
    std::optional<int> at(int source) const;
    bool defined(int source) const { return at(source).has_value(); }
    int size() const { return (int)pairs.size(); }
};

// Backtracking homomorphism search, deterministic: variables by descending
// tuple-occurrence count (ties by index), values ascending, with forward
// checking. Returns a total map X -> A, or nullopt.
std::optional<std::vector<int>> find_homomorphism(const RelationalStructure& x,
                                                  const RelationalStructure& a);

// Same search seeded with fixed assignments; used for consistency probes.
std::optional<std::vector<int>> find_homomorphism_seeded(
    const RelationalStructure& x, const RelationalStructure& a,
    const std::vector<std::pair<int, int>>& fixed);

bool is_homomorphism(const RelationalStructure& x, const RelationalStructure& a,
                     const std::vector<int>& map);

// Product of all relations in signature order: one symbol whose arity is the
// sum of arities and whose relation is the set of concatenations.
RelationalStructure monic_product(const RelationalStructure& a);

// True iff some element b has the constant tuple (b,...,b) in every relation.
bool has_loop(const RelationalStructure& b);

struct InducedSubstructure {
    RelationalStructure structure;
    std::vector<int> vertices; // new index -> original vertex
};

InducedSubstructure induced_substructure(const RelationalStructure& x,
                                         const std::vector<int>& keep);

// Monic structure with a single relation of arity r >= 2 in which every tuple
// has pairwise-distinct entries and no two tuples share an entry set.
struct OrientedMonicStructure {
    RelationalStructure s;

    static OrientedMonicStructure from(RelationalStructure s);
    int arity() const { return s.sig.symbols[0].arity; }
    const std::vector<Tuple>& tuples() const { return s.relations[0]; }
};

// One r-tuple per hyperedge whose entry set equals the edge. Seed 0 keeps
// every edge in sorted ascending order; other seeds permute deterministically.
OrientedMonicStructure orient(const Hypergraph& h, std::uint64_t seed);

Hypergraph symmetrize(const OrientedMonicStructure& x);

// Undirected cycle C_n as a symmetric digraph (both orientations per edge).
RelationalStructure cycle_graph(int n);

// K_{r,c}: domain [c], single r-ary relation [c]^r minus constant tuples.
RelationalStructure clique_structure(int r, int c);

// Structure with |G| ternary relations R_g = {(h1,h2,h3) : h1*h2*h3 = g}.
// The Cayley table is validated (associativity, identity, inverses).
RelationalStructure group_structure(const std::vector<std::vector<int>>& cayley);

} // namespace lcmix
