#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcmix/boolmat.hpp"
#include "test_helpers.hpp"

using namespace lcmix;

namespace {

BoolMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    BoolMatrix m((int)rows.size());
    for (int i = 0; i < (int)rows.size(); ++i)
        for (int j = 0; j < (int)rows.size(); ++j)
            if (rows[i][j]) m.set(i, j, true);
    return m;
}

BoolMatrix from_mask(int n, unsigned mask) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (mask & (1u << (i * n + j))) m.set(i, j, true);
    return m;
}

BoolMatrix random_matrix(Rng& rng, int n, double density) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rng.uniform() < density) m.set(i, j, true);
    return m;
}

// Exhaustive primitivity: some power up to the cap is all-ones.
bool primitive_by_stepping(const BoolMatrix& m, long long cap) {
    BoolMatrix p = m;
    for (long long t = 1; t <= cap; ++t) {
        if (p.is_all_ones()) return true;
        p = bool_product(p, m);
    }
    return false;
}

} // namespace

TEST_CASE("product identities") {
    Rng rng(5);
    for (int n : {1, 2, 3, 5, 9, 64, 70}) {
        auto m = random_matrix(rng, n, 0.3);
        CHECK(bool_product(BoolMatrix::identity(n), m) == m);
        CHECK(bool_product(m, BoolMatrix::identity(n)) == m);
        CHECK(bool_product(BoolMatrix::ones(n), BoolMatrix::ones(n)) == BoolMatrix::ones(n));
    }
    // permutation squared
    auto sigma = from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    auto sigma2 = from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    CHECK(bool_product(sigma, sigma) == sigma2);
}

TEST_CASE("indicator powers") {
    auto m = from_rows({{0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
    CHECK(indicator_power(m, IndicatorTuple{}) == BoolMatrix::identity(3));
    CHECK(indicator_power(m, IndicatorTuple{{1, 1}}) == bool_product(m, m));

    // symmetric matrices ignore the orientation
    auto sym = from_rows({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}});
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        IndicatorTuple x;
        int len = (int)rng.below(5);
        for (int i = 0; i < len; ++i) x.entries.push_back(rng.below(2) ? 1 : -1);
        CHECK(indicator_power(sym, x) == bool_power(sym, len));
    }

    // concatenation property
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_matrix(rng, 4, 0.4);
        IndicatorTuple x, y, xy;
        int lx = (int)rng.below(4), ly = (int)rng.below(4);
        for (int i = 0; i < lx; ++i) x.entries.push_back(rng.below(2) ? 1 : -1);
        for (int i = 0; i < ly; ++i) y.entries.push_back(rng.below(2) ? 1 : -1);
        xy.entries = x.entries;
        xy.entries.insert(xy.entries.end(), y.entries.begin(), y.entries.end());
        CHECK(indicator_power(a, xy) ==
              bool_product(indicator_power(a, x), indicator_power(a, y)));
    }
}

TEST_CASE("irreducibility") {
    auto cycle = from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK(is_irreducible(cycle));
    CHECK(!is_irreducible(BoolMatrix::identity(2)));
    auto zero_row = from_rows({{0, 1}, {0, 0}});
    CHECK(!is_irreducible(zero_row));

    BoolMatrix one(1);
    CHECK(!is_irreducible(one));
    one.set(0, 0, true);
    CHECK(is_irreducible(one));
}

TEST_CASE("primitivity fixtures") {
    // adjacency of K_3: (J-I)^2 = J by hand enumeration
    auto k3 = from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(is_primitive(k3));
    CHECK(index_of_primitivity(k3) == 2);

    auto swap2 = from_rows({{0, 1}, {1, 0}});
    CHECK(!is_primitive(swap2));
    CHECK(!index_of_primitivity(swap2).has_value());

    for (int n : {1, 2, 3, 6}) {
        CHECK(is_primitive(BoolMatrix::ones(n)));
        CHECK(index_of_primitivity(BoolMatrix::ones(n)) == 1);
    }

    // undirected C_5: supports of M..M^4 computed by hand give index 4
    BoolMatrix c5(5);
    for (int i = 0; i < 5; ++i) {
        c5.set(i, (i + 1) % 5, true);
        c5.set((i + 1) % 5, i, true);
    }
    CHECK(index_of_primitivity(c5) == 4);
}

TEST_CASE("Wielandt sharpness, exhaustively for every digraph on up to 4 vertices") {
    long long mismatches = 0, bad_index = 0;
    for (int n = 1; n <= 4; ++n) {
        const unsigned long long cells = 1ull << (n * n);
        for (unsigned long long mask = 0; mask < cells; ++mask) {
            auto m = from_mask(n, (unsigned)mask);
            bool wielandt = is_primitive(m);
            if (wielandt != primitive_by_stepping(m, 2 * n * n)) ++mismatches;
            if (wielandt) {
                auto idx = index_of_primitivity(m);
                if (!idx || *idx > n * n - 2 * n + 2) ++bad_index;
            }
        }
    }
    CHECK(mismatches == 0);
    CHECK(bad_index == 0);
}

TEST_CASE("irreducible with positive trace is primitive, exhaustively for n <= 3") {
    for (int n = 1; n <= 3; ++n) {
        unsigned bits = 1u << (n * n);
        for (unsigned mask = 0; mask < bits; ++mask) {
            auto m = from_mask(n, mask);
            bool trace = false;
            for (int i = 0; i < n; ++i) trace |= m.get(i, i);
            if (is_irreducible(m) && trace) CHECK(is_primitive(m));
        }
    }
}

TEST_CASE("support monotonicity of products") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + (int)rng.below(4);
        auto m2 = random_matrix(rng, n, 0.5);
        auto m4 = random_matrix(rng, n, 0.5);
        // sample m1 <= m2 and m3 <= m4 by masking
        auto m1 = m2, m3 = m4;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (rng.uniform() < 0.3) m1.set(i, j, false);
                if (rng.uniform() < 0.3) m3.set(i, j, false);
            }
        CHECK(BoolMatrix::support_leq(bool_product(m1, m3), bool_product(m2, m4)));
    }
}

TEST_CASE("balanced indicator tuples dominate the identity") {
    // primitive M with irreducible M M^T: I <= M^x for balanced x
    Rng rng(31);
    int verified = 0;
    while (verified < 60) {
        int n = 2 + (int)rng.below(3);
        auto m = random_matrix(rng, n, 0.5);
        if (!is_primitive(m) || !is_irreducible(bool_product(m, m.transposed()))) continue;
        ++verified;
        for (int len : {2, 4, 6}) {
            // all balanced tuples of this length
            for (unsigned mask = 0; mask < (1u << len); ++mask) {
                IndicatorTuple x;
                for (int i = 0; i < len; ++i) x.entries.push_back(mask & (1u << i) ? 1 : -1);
                if (!x.balanced()) continue;
                CHECK(BoolMatrix::support_leq(BoolMatrix::identity(n), indicator_power(m, x)));
            }
        }
    }
}

TEST_CASE("slice matrices") {
    auto c3 = cycle_graph(3);
    auto slices = slice_matrices(c3);
    BoolMatrix adj(3);
    for (const auto& t : c3.relations[0]) adj.set(t[0], t[1], true);
    CHECK(slices.at(0, 1) == adj);
    CHECK(slices.at(1, 0) == adj.transposed());

    Signature sig;
    sig.symbols.push_back({"R", 3});
    auto empty = RelationalStructure::make(sig, 2, {{}});
    auto empty_slices = slice_matrices(empty);
    for (const auto& m : empty_slices.all()) CHECK(m.is_zero());

    // monic product of the Z_2 group structure: every slice is all-ones
    std::vector<std::vector<int>> z2 = {{0, 1}, {1, 0}};
    auto mon = monic_product(group_structure(z2));
    auto gs = slice_matrices(mon);
    for (const auto& m : gs.all()) CHECK(m.is_all_ones());

    Signature unary;
    unary.symbols.push_back({"P", 1});
    CHECK_THROWS_AS(slice_matrices(RelationalStructure::make(unary, 2, {{{0}}})), InputError);
}
