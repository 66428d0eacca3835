#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hclab/groupring.hpp"
#include "hclab/hecke.hpp"

#include <random>

using namespace hclab;
using namespace hclab::hecke;

namespace {

HeckeElement random_element(const AlgebraPtr& A, std::mt19937& rng) {
    std::uniform_int_distribution<uint32_t> coin(0, A->prime() - 1);
    HeckeElement x = A->zero();
    for (auto& c : x.c) c = coin(rng);
    return x;
}

// transpose anti-automorphism: T_w -> T_{w^{-1}}
HeckeElement reversal(const HeckeElement& x) {
    HeckeElement out = x.alg->zero();
    const SymmetricGroup& W = x.alg->weyl();
    for (size_t w = 0; w < x.c.size(); ++w)
        out.c[W.index_of(perm_inverse(W.elements[w]))] = x.c[w];
    return out;
}

} // namespace

TEST_CASE("unit and the quadratic relation") {
    for (uint32_t p : {2u, 3u, 5u}) {
        AlgebraPtr A = HeckeAlgebra::create(3, p);
        std::mt19937 rng(3);
        HeckeElement x = random_element(A, rng);
        CHECK(A->mul(A->unit(), x) == x);
        CHECK(A->mul(x, A->unit()) == x);
        for (int i = 1; i <= 2; ++i) {
            // T_i^2 = (p-1) T_i + p = -T_i mod p
            HeckeElement t = A->gen_T(i);
            CHECK(A->mul(t, t) == A->scale(p - 1, t));
            // ehat(i) e(i) = 0 and e(i) + ehat(i) = 1
            CHECK(A->mul(A->ehat(i), A->e(i)).is_zero());
            CHECK(A->add(A->e(i), A->ehat(i)) == A->unit());
        }
    }
}

TEST_CASE("multiplication is associative on random triples") {
    std::mt19937 rng(17);
    for (uint32_t p : {2u, 3u}) {
        AlgebraPtr A = HeckeAlgebra::create(4, p);
        for (int t = 0; t < 10; ++t) {
            HeckeElement a = random_element(A, rng), b = random_element(A, rng),
                         c = random_element(A, rng);
            CHECK(A->mul(A->mul(a, b), c) == A->mul(a, A->mul(b, c)));
        }
    }
}

TEST_CASE("presentation relations hold for n <= 5, p in {2,3,5}") {
    for (uint32_t p : {2u, 3u, 5u})
        for (int n = 1; n <= 5; ++n) {
            PresentationReport rep = verify_presentation(n, p);
            CHECK(rep.all());
        }
    CHECK_THROWS_AS(verify_presentation(7, 2), chevalley::GuardError);
}

TEST_CASE("integral lifts of the relations hold over exact rationals") {
    for (uint32_t p : {2u, 3u, 5u})
        for (int n = 2; n <= 3; ++n) CHECK(verify_integral_lift(n, p));
}

TEST_CASE("longest idempotent: explicit words, absorption, uniqueness") {
    for (uint32_t p : {2u, 3u}) {
        AlgebraPtr A2 = HeckeAlgebra::create(2, p);
        CHECK(longest_idempotent(A2) == A2->e(1));

        AlgebraPtr A4 = HeckeAlgebra::create(4, p);
        HeckeElement e4 = longest_idempotent(A4);
        // e(1)e(2)e(3)e(1)e(2)e(1)
        HeckeElement w = A4->unit();
        for (int i : {1, 2, 3, 1, 2, 1}) w = A4->mul(w, A4->e(i));
        CHECK(e4 == w);

        for (int n = 1; n <= 4; ++n) {
            AlgebraPtr A = HeckeAlgebra::create(n, p);
            CHECK(absorption_solution_dimension(A) == 1);
        }
    }
}

TEST_CASE("involution swaps e and ehat and squares to the identity") {
    for (uint32_t p : {2u, 3u}) {
        AlgebraPtr A = HeckeAlgebra::create(3, p);
        for (int i = 1; i <= 2; ++i) CHECK(involution(A->e(i)) == A->ehat(i));
        std::mt19937 rng(5);
        for (int t = 0; t < 8; ++t) {
            HeckeElement x = random_element(A, rng);
            CHECK(involution(involution(x)) == x);
        }
        // involution(e_3) absorbs every ehat(i)
        HeckeElement eh3 = involution(longest_idempotent(A));
        CHECK(eh3 == A->ehat_long(1, 2));
        for (int i = 1; i <= 2; ++i) {
            CHECK(A->mul(A->ehat(i), eh3) == eh3);
            CHECK(A->mul(eh3, A->ehat(i)) == eh3);
        }
    }
}

TEST_CASE("block embedding shifts letters and the blocks commute") {
    AlgebraPtr A2 = HeckeAlgebra::create(2, 2);
    AlgebraPtr A3 = HeckeAlgebra::create(3, 2);
    CHECK(block_embed(A2->e(1), 0, A3) == A3->e(1));
    CHECK(block_embed(A2->e(1), 1, A3) == A3->e(2));
    CHECK_THROWS_AS(block_embed(A2->e(1), 2, A3), std::invalid_argument);

    for (uint32_t p : {2u, 3u}) {
        AlgebraPtr A4 = HeckeAlgebra::create(4, p);
        HeckeElement e2 = A4->e_long(1, 1);      // e_2 on the first block
        HeckeElement eh2 = A4->ehat_long(3, 3);  // ehat_2 on the second block
        CHECK(A4->mul(e2, eh2) == A4->mul(eh2, e2));
    }
}

TEST_CASE("e_k e(k) e_k = e_{k+1} and the hatted mirror, k <= 4") {
    for (uint32_t p : {2u, 3u})
        for (int k = 1; k <= 4; ++k) CHECK(ek_recursion_check(k, k + 1, p));
}

TEST_CASE("key identity sweep and the degenerate H_2 case") {
    // (n,k) = (1,1): e_2 + ehat_2 = 1
    AlgebraPtr A2 = HeckeAlgebra::create(2, 2);
    CHECK(A2->add(A2->e(1), A2->ehat(1)) == A2->unit());
    for (uint32_t p : {2u, 3u})
        for (int m = 2; m <= 5; ++m)
            for (int k = 1; k <= m - 1; ++k) {
                KeyIdentityReport rep = key_identity(m - k, k, p);
                CHECK(rep.identity_holds);
                CHECK(rep.orthogonal);
                CHECK(rep.both_idempotent);
            }
}

TEST_CASE("d and s elements: degenerate case, nonvanishing, squares, reversal") {
    // (n,k) = (0,1) in H_1: d = s = 1
    auto [d01, s01] = ds_elements(0, 1, 2);
    CHECK(d01 == d01.alg->unit());
    CHECK(s01 == s01.alg->unit());

    for (uint32_t p : {2u, 3u})
        for (int m = 1; m <= 5; ++m)
            for (int k = 1; k <= m; ++k) {
                auto [d, s] = ds_elements(m - k, k, p);
                CHECK(!d.is_zero());
                CHECK(!s.is_zero());
                CHECK(reversal(d) == s);
                if (k >= 2) {
                    auto [d2, s2] = ds_elements(m - k + 1, k - 1, p);
                    CHECK(d.alg->mul(d2, d).is_zero());  // d . d = 0
                    CHECK(s.alg->mul(s, s2).is_zero());  // s . s = 0
                }
            }
}

TEST_CASE("corner invertibility for nonzero scalar pairs, singular on the axes") {
    for (uint32_t p : {2u, 3u})
        for (int m = 2; m <= 4; ++m)
            for (int k = 1; k <= m - 1; ++k) {
                for (uint32_t lam = 1; lam < p; ++lam)
                    for (uint32_t mu = 1; mu < p; ++mu)
                        CHECK(corner_combination_invertible(m - k, k, p, lam, mu));
                // both summands are nonzero idempotents, so either alone is singular
                CHECK(!corner_combination_invertible(m - k, k, p, 1, 0));
                CHECK(!corner_combination_invertible(m - k, k, p, 0, 1));
            }
}

TEST_CASE("coset model: faithfulness, multiplicativity, transfer comparison") {
    for (auto [n, p] : std::vector<std::pair<int, uint32_t>>{{2, 2}, {3, 2}, {2, 3}}) {
        CosetModel model(n, p);
        AlgebraPtr A = HeckeAlgebra::create(n, p);
        size_t N = model.dim();

        CHECK(model.rep(A->unit()) == FpMatrix::identity(p, N));

        // the n! basis operators are linearly independent
        FpMatrix flat(p, N * N, A->dim());
        for (size_t w = 0; w < A->dim(); ++w) {
            FpMatrix tm = model.t_matrix(w);
            for (size_t i = 0; i < N; ++i)
                for (size_t j = 0; j < N; ++j) flat.set(i * N + j, w, tm.at(i, j));
        }
        CHECK(rank_of(flat) == A->dim());

        std::mt19937 rng(23);
        for (int t = 0; t < 4; ++t) {
            HeckeElement a = random_element(A, rng), b = random_element(A, rng);
            CHECK(model.rep(A->mul(a, b)) == model.rep(a).mul(model.rep(b)));
        }

        // ehat(i) equals the quotient-transfer composite computed from the
        // enumerated parabolic, an independent route
        chevalley::GLGroup G = chevalley::build_group(n, p);
        std::vector<uint32_t> B = G.subgroup_elems(chevalley::SubgroupTag::Borel);
        for (int i = 1; i <= n - 1; ++i) {
            std::vector<uint32_t> P = G.subgroup_elems(chevalley::SubgroupTag::Parabolic, i);
            // right-coset reps of B in P by canonical minimum
            std::map<uint32_t, uint32_t> reps;
            for (uint32_t h : P) {
                uint32_t mn = UINT32_MAX;
                for (uint32_t b : B) mn = std::min(mn, G.mul(b, h));
                reps.emplace(mn, h);
            }
            REQUIRE(reps.size() == p + 1);
            FpMatrix M(p, N, N);
            for (size_t c = 0; c < N; ++c) {
                uint32_t gc = G.lookup(model.cosets().reps[c]);
                for (auto& [mn, h] : reps) {
                    uint32_t t = model.cosets().coset_of(G.elems[G.mul(h, gc)]);
                    M.add_at(t, c, 1);
                }
            }
            CHECK(M == model.ehat_matrix(i));
        }
    }
}

TEST_CASE("representation rank of ehat(1) counts parabolic cosets (n=2, p=2)") {
    CosetModel model(2, 2);
    // P_1 = GL_2, a single coset
    CHECK(rank_of(model.ehat_matrix(1)) == 1);
}

TEST_CASE("rank or prime mismatch is refused") {
    AlgebraPtr A2 = HeckeAlgebra::create(2, 2);
    AlgebraPtr A3 = HeckeAlgebra::create(3, 2);
    CHECK_THROWS_AS(A2->mul(A2->unit(), A3->unit()), std::invalid_argument);
}
