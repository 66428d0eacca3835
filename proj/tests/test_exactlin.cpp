#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hclab/fp.hpp"
#include "hclab/fpmatrix.hpp"
#include "hclab/rational.hpp"

#include <random>

using namespace hclab;

TEST_CASE("identity over F_2 has full rank and empty kernel") {
    FpMatrix m = FpMatrix::identity(2, 3);
    RankKernel rk = rank_and_kernel(m);
    CHECK(rk.rank == 3);
    CHECK(rk.kernel.cols() == 0);
}

TEST_CASE("zero 2x2 over F_3 has rank 0 and full kernel") {
    FpMatrix m(3, 2, 2);
    RankKernel rk = rank_and_kernel(m);
    CHECK(rk.rank == 0);
    CHECK(rk.kernel.cols() == 2);
}

TEST_CASE("equal rows over F_2: rank 1, kernel spanned by (1,1)") {
    FpMatrix m(2, 2, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    m.set(1, 0, 1);
    m.set(1, 1, 1);
    RankKernel rk = rank_and_kernel(m);
    CHECK(rk.rank == 1);
    REQUIRE(rk.kernel.cols() == 1);
    CHECK(rk.kernel.at(0, 0) == 1);
    CHECK(rk.kernel.at(1, 0) == 1);
    // kernel columns annihilated by m
    CHECK(m.mul(rk.kernel).is_zero());
}

TEST_CASE("invert: identity, involution, singular") {
    CHECK(*invert(FpMatrix::identity(2, 4)) == FpMatrix::identity(2, 4));

    FpMatrix swap(2, 2, 2);
    swap.set(0, 1, 1);
    swap.set(1, 0, 1);
    CHECK(*invert(swap) == swap);

    FpMatrix sing(2, 2, 2);
    sing.set(0, 0, 1);
    sing.set(0, 1, 1);
    sing.set(1, 0, 1);
    sing.set(1, 1, 1);
    CHECK(!invert(sing).has_value());
}

TEST_CASE("p-locality of rationals") {
    CHECK(p_local_check(Rational(1, 3), 2));
    CHECK(!p_local_check(Rational(1, 2), 2));
    CHECK(!p_local_check(Rational(6, 35), 5)); // 35 = 5*7
    CHECK(p_local_check(Rational(6, 35), 3));
}

TEST_CASE("rational arithmetic is exact on random small operands") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 40);
    for (int t = 0; t < 200; ++t) {
        Rational a(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK((a + c) - c == a);
        CHECK(denominator(a) > 0);
    }
}

TEST_CASE("rank equals rank of transpose on random matrices") {
    std::mt19937 rng(11);
    for (uint32_t p : {2u, 3u, 5u}) {
        std::uniform_int_distribution<uint32_t> coin(0, p - 1);
        for (int t = 0; t < 20; ++t) {
            FpMatrix m(p, 7, 5);
            for (size_t i = 0; i < 7; ++i)
                for (size_t j = 0; j < 5; ++j) m.set(i, j, coin(rng));
            CHECK(rank_of(m) == rank_of(m.transpose()));
        }
    }
}

TEST_CASE("invert succeeds exactly when the rank is full") {
    std::mt19937 rng(13);
    for (uint32_t p : {2u, 3u, 5u}) {
        std::uniform_int_distribution<uint32_t> coin(0, p - 1);
        for (int t = 0; t < 40; ++t) {
            FpMatrix m(p, 4, 4);
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = 0; j < 4; ++j) m.set(i, j, coin(rng));
            bool full = rank_and_kernel(m).rank == 4;
            auto inv = invert(m);
            CHECK(full == inv.has_value());
            if (inv) CHECK(m.mul(*inv) == FpMatrix::identity(p, 4));
        }
    }
}

TEST_CASE("bit-packed and generic F_2 elimination agree on random matrices") {
    std::mt19937 rng(17);
    for (size_t n : {16u, 64u, 130u, 512u}) {
        FpMatrix g(2, n, n);
        BitMatrix b(n, n);
        std::bernoulli_distribution coin(0.5);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (coin(rng)) {
                    g.set(i, j, 1);
                    b.set(i, j, true);
                }
        RankKernel rg = rank_and_kernel_generic(g);
        BitRankKernel rb = rank_and_kernel(b);
        REQUIRE(rg.rank == rb.rank);
        REQUIRE(rg.kernel.cols() == rb.kernel.cols());
        // identical bases, not merely the same span
        for (size_t i = 0; i < rg.kernel.rows(); ++i)
            for (size_t j = 0; j < rg.kernel.cols(); ++j)
                CHECK(rg.kernel.at(i, j) == uint32_t(rb.kernel.get(i, j)));
    }
}

TEST_CASE("solve returns coordinates or reports inconsistency") {
    FpMatrix a(3, 3, 2);
    a.set(0, 0, 1);
    a.set(1, 1, 2);
    a.set(2, 0, 1);
    a.set(2, 1, 1);
    FpMatrix b(3, 3, 1);
    b.set(0, 0, 2);
    b.set(1, 0, 1);
    b.set(2, 0, 0); // inconsistent with rows 0+1 unless it matches
    auto x = solve(a, b);
    CHECK(!x.has_value());
}
