#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hclab/chevalley.hpp"
#include "hclab/qwords.hpp"

#include <functional>
#include <random>

using namespace hclab;
using namespace hclab::qwords;

namespace {

QWord mk2(std::initializer_list<uint32_t> as) {
    QWord w{2, {}};
    for (uint32_t a : as) w.ops.push_back({0, a});
    return w;
}

// independent oracle: plain nested loops, no pruning, no shared code path
uint64_t brute_free_count_p2(int m, int64_t degree) {
    if (m == 0) return degree == 1;
    uint64_t count = 0;
    std::vector<int64_t> a(size_t(m), 0);
    std::function<void(int, int64_t)> rec = [&](int pos, int64_t deg) {
        if (pos < 0) {
            if (deg == degree) ++count;
            return;
        }
        for (int64_t v = deg; deg + v <= degree; ++v) {
            a[size_t(pos)] = v;
            rec(pos - 1, deg + v);
        }
    };
    rec(m - 1, 1); // rightmost entry first
    return count;
}

} // namespace

TEST_CASE("degrees: fundamental class, single operations, bockstein") {
    CHECK(word_degree(QWord{2, {}}) == 1);
    CHECK(word_degree(mk2({1})) == 2);
    QWord bq1{3, {{1, 1}}};
    CHECK(word_degree(bq1) == 4); // 1 + 2*(3-1)*1 - 1
    QWord q1{3, {{0, 1}}};
    CHECK(word_degree(q1) == 5);
}

TEST_CASE("unstable and admissibility flags") {
    CHECK(is_unstable_valid(mk2({2, 1})));
    CHECK(word_admissible(mk2({2, 1}))); // 2 <= 2*1
    CHECK(is_unstable_valid(mk2({3, 1})));
    CHECK(!word_admissible(mk2({3, 1})));
    CHECK(word_completely_inadmissible(mk2({3, 1})));
    CHECK(!is_unstable_valid(mk2({1, 2}))); // 1 < |Q^2 i| = 3
}

TEST_CASE("frozen counting examples") {
    CHECK(free_count(2, 2, 5) == 1);       // Q^3 Q^1
    CHECK(enumerate_count(2, 2, 0, 5) == 0); // no admissible unstable word
    CHECK(enumerate_count(2, 0, 2, 5) == 1); // the bottom class of L_2
    CHECK(enumerate_count(2, 1, 1, 5) == 1); // bridge pair carries no constraint
    CHECK(enumerate_count(2, 1, 1, 6) == 2);
}

TEST_CASE("free counts match the unpruned brute-force oracle") {
    for (int m = 0; m <= 3; ++m)
        for (int64_t d = 0; d <= 16; ++d) CHECK(free_count(2, m, d) == brute_free_count_p2(m, d));
}

TEST_CASE("length-2 partition: free = admissible + strictly inadmissible") {
    for (uint32_t p : {2u, 3u})
        for (int64_t d = 0; d <= 20; ++d)
            CHECK(free_count(p, 2, d) ==
                  enumerate_count(p, 2, 0, d) + enumerate_count(p, 0, 2, d));
}

TEST_CASE("bottom degrees match 2p^k - 1 - k with multiplicity one") {
    CHECK(bottom_degree(2, 0).degree == 1);
    CHECK(bottom_degree(2, 3).degree == 12);
    CHECK(bottom_degree(3, 1).degree == 4);
    for (int k = 0; k <= 6; ++k) {
        BottomReport r = bottom_degree(2, k);
        int64_t f = (int64_t(2) << k) - 1 - k;
        CHECK(r.degree == f);
        CHECK(r.multiplicity == 1);
    }
    for (int k = 0; k <= 4; ++k) {
        BottomReport r = bottom_degree(3, k);
        int64_t pk = 1;
        for (int i = 0; i < k; ++i) pk *= 3;
        CHECK(r.degree == 2 * pk - 1 - k);
        CHECK(r.multiplicity == 1);
    }
}

TEST_CASE("adem rewriting: fixed points, vanishing, a nontrivial relation") {
    // already admissible: unchanged
    auto r = adem_rewrite({2, 1});
    REQUIRE(r.size() == 1);
    CHECK(*r.begin() == std::vector<uint32_t>{2, 1});

    // the degree-5 admissible unstable space is empty
    CHECK(adem_rewrite({3, 1}).empty());
    // the adjacent-excess family vanishes
    CHECK(adem_rewrite({5, 2}).empty());
    CHECK(adem_rewrite({7, 3}).empty());

    auto r41 = adem_rewrite({4, 1});
    REQUIRE(r41.size() == 1);
    CHECK(*r41.begin() == std::vector<uint32_t>{3, 2});
}

TEST_CASE("adem rewriting preserves degree and lands on admissible words") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<uint32_t> step(0, 4);
    for (int t = 0; t < 60; ++t) {
        // random unstable word of length 3
        uint32_t a3 = 1 + step(rng) % 3;
        uint32_t a2 = 1 + a3 + step(rng);
        uint32_t a1 = 1 + a2 + a3 + step(rng);
        std::vector<uint32_t> w{a1, a2, a3};
        int64_t deg = 1 + a1 + a2 + a3;
        if (deg > kCountDegreeGuard) continue;
        for (const auto& out : adem_rewrite(w)) {
            QWord q{2, {}};
            for (uint32_t a : out) q.ops.push_back({0, a});
            CHECK(word_degree(q) == deg);
            CHECK(word_admissible(q));
        }
        // idempotent on each admissible output
        for (const auto& out : adem_rewrite(w)) {
            auto again = adem_rewrite(out);
            REQUIRE(again.size() == 1);
            CHECK(*again.begin() == out);
        }
    }
}

TEST_CASE("rewrite matrix rank equals the admissible count, lengths 2 and 3") {
    for (int len : {2, 3}) {
        HilbertSeries ranks = adem_rank_series(len, 16);
        for (int d = 0; d <= 16; ++d) CHECK(ranks.at(d) == enumerate_count(2, len, 0, d));
    }
}

TEST_CASE("word space labels: counts agree and bottom classes are the known words") {
    GradedSpace l3 = word_space(2, 0, 3, 14);
    CHECK(l3.dim(12) == 1);
    CHECK(l3.labels.at(12)[0] == "Q7 Q3 Q1");
    for (int d = 1; d <= 14; ++d) CHECK(l3.dim(d) == enumerate_count(2, 0, 3, d));
    CHECK(l3.hilbert().at(12) == 1);

    GradedSpace free2 = word_space(2, 1, 1, 10);
    CHECK(free2.dim(5) == 1);
    CHECK(free2.labels.at(5)[0] == "Q3 Q1");

    GradedSpace bq = word_space(3, 0, 1, 6);
    CHECK(bq.dim(4) == 1);
    CHECK(bq.labels.at(4)[0] == "bQ1");
}

TEST_CASE("guards refuse oversized requests") {
    CHECK_THROWS_AS(count_series(2, 1, 1, 65), chevalley::GuardError);
    CHECK_THROWS_AS(adem_rewrite({9, 8, 7, 6, 5, 4, 3}), chevalley::GuardError);
    CHECK_THROWS_AS(bottom_degree(2, 9), chevalley::GuardError);
}
