#pragma once

#include "hclab/hilbert.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace hclab::qwords {

// Composite operation beta^eps Q^a ... applied to the degree-1 class; entries
// listed left to right, the rightmost acting first. eps is always 0 at p = 2.
struct QWord {
    uint32_t p = 2;
    std::vector<std::pair<uint8_t, uint32_t>> ops;
};

// Degree of the class the word produces; -1 if an unstable condition fails.
// p = 2: Q^a raises degree by a, needs a >= |x|.
// odd p: beta^eps Q^a raises degree by 2(p-1)a - eps, needs 2a >= |x|.
int64_t word_degree(const QWord& w);
bool is_unstable_valid(const QWord& w);

// Adjacent pair at left-based index t (entries t, t+1): admissible iff
// a_t <= p a_{t+1} - eps_{t+1}.
bool pair_admissible(const QWord& w, size_t t);
bool word_admissible(const QWord& w);
bool word_completely_inadmissible(const QWord& w);

enum class PairConstraint : uint8_t { Free, Admissible, StrictlyInadmissible };

// Words of length n+k and the given degree: the rightmost block of k letters
// is internally strictly inadmissible, the leftmost block of n letters is
// internally admissible, and the pair bridging the blocks carries only the
// unstable condition. (The image of ehat_n e_k is the arbiter for the bridge.)
uint64_t enumerate_count(uint32_t p, int n, int k, int64_t degree);
// No adjacency constraints at all: basis count of the length-m free span.
uint64_t free_count(uint32_t p, int m, int64_t degree);

HilbertSeries count_series(uint32_t p, int n, int k, int max_degree);
HilbertSeries free_series(uint32_t p, int m, int max_degree);

// Labelled word basis of the block model, degree by degree; labels like
// "Q5 Q2 Q1" (a Bockstein prefixes the entry as in "bQ3").
GradedSpace word_space(uint32_t p, int n, int k, int max_degree);

struct BottomReport {
    int64_t degree = -1;
    uint64_t multiplicity = 0;
};

// Minimal degree with a completely inadmissible word of length k; must be
// 2p^k - 1 - k with multiplicity one.
BottomReport bottom_degree(uint32_t p, int k);

// p = 2 Adem straightening to admissible form; unstable-violating words are
// discarded as zero. Result is an F_2 set of admissible words.
std::set<std::vector<uint32_t>> adem_rewrite(const std::vector<uint32_t>& word);

// Rank per degree of the rewrite map on free words of the given length.
HilbertSeries adem_rank_series(int length, int max_degree);

inline constexpr int kCountDegreeGuard = 64;
inline constexpr int kAdemLengthGuard = 6;

} // namespace hclab::qwords
