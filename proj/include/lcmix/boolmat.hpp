#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcmix/structures.hpp"

namespace lcmix {

// Square 0/1 matrix over the boolean semiring, rows stored as bitsets so
// products are word-parallel.
class BoolMatrix {
public:
    explicit BoolMatrix(int n);

    static BoolMatrix identity(int n);
    static BoolMatrix ones(int n);

    int dim() const { return n_; }
    bool get(int i, int j) const {
        return (words_[(size_t)i * wpr_ + (size_t)(j >> 6)] >> (j & 63)) & 1ULL;
    }
    void set(int i, int j, bool v);

    BoolMatrix transposed() const;
    bool is_all_ones() const;
    bool is_zero() const;
    bool has_zero_row() const;
    bool has_zero_col() const;

    bool operator==(const BoolMatrix& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const BoolMatrix& o) const { return !(*this == o); }
    bool operator<(const BoolMatrix& o) const; // canonical order for level sets

    std::string grid() const; // 0/1 text rows, for debug reports

    friend BoolMatrix bool_product(const BoolMatrix& m1, const BoolMatrix& m2);

    // supp(a) subseteq supp(b)
    static bool support_leq(const BoolMatrix& a, const BoolMatrix& b);

private:
    int n_;
    int wpr_; // words per row
    std::vector<std::uint64_t> words_;
};

BoolMatrix bool_product(const BoolMatrix& m1, const BoolMatrix& m2);
BoolMatrix bool_power(const BoolMatrix& m, unsigned long long t); // t = 0 gives I

// Sequence over {-1,+1}; empty allowed.
struct IndicatorTuple {
    std::vector<int> entries;

    static IndicatorTuple alternating(int t); // (1,-1,1,...) of length t
    bool balanced() const;
    int length() const { return (int)entries.size(); }
};

// Product of M and M^T factors left to right (+1 -> M, -1 -> M^T); empty
// tuple gives the identity.
BoolMatrix indicator_power(const BoolMatrix& m, const IndicatorTuple& x);

// Strong connectivity where every pair, including i == i, needs a walk of
// length >= 1. A 1x1 matrix is irreducible iff its entry is set.
bool is_irreducible(const BoolMatrix& m);

// Wielandt: primitive iff the (n^2-2n+2)-th power is all ones.
bool is_primitive(const BoolMatrix& m);

// Least t >= 1 with M^t all ones, absent when not primitive. Bounded by
// n^2-2n+2.
std::optional<long long> index_of_primitivity(const BoolMatrix& m);

// Slice matrices of a monic structure: for ordered positions i != j,
// M_(i,j)(a,b) = 1 iff some tuple has a at position i and b at position j.
class SliceSet {
public:
    SliceSet(int arity, int dim);

    int arity() const { return r_; }
    int dim() const { return dim_; }
    BoolMatrix& at(int i, int j);
    const BoolMatrix& at(int i, int j) const;
    const std::vector<BoolMatrix>& all() const { return mats_; }

private:
    int r_;
    int dim_;
    std::vector<BoolMatrix> mats_; // r*(r-1) matrices, (i,j) pairs in row-major order

    int index(int i, int j) const;
};

SliceSet slice_matrices(const RelationalStructure& monic);

} // namespace lcmix
