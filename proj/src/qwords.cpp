#include "hclab/qwords.hpp"

#include "hclab/chevalley.hpp" // GuardError
#include "hclab/fpmatrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace hclab::qwords {

using chevalley::GuardError;

int64_t word_degree(const QWord& w) {
    int64_t deg = 1;
    for (auto it = w.ops.rbegin(); it != w.ops.rend(); ++it) {
        auto [eps, a] = *it;
        if (w.p == 2) {
            if (int64_t(a) < deg) return -1;
            deg += a;
        } else {
            if (2 * int64_t(a) < deg) return -1;
            deg += 2 * int64_t(w.p - 1) * a - eps;
        }
    }
    return deg;
}

bool is_unstable_valid(const QWord& w) { return word_degree(w) >= 0; }

bool pair_admissible(const QWord& w, size_t t) {
    auto [el, al] = w.ops[t];
    auto [er, ar] = w.ops[t + 1];
    (void)el;
    return int64_t(al) <= int64_t(w.p) * ar - er;
}

bool word_admissible(const QWord& w) {
    for (size_t t = 0; t + 1 < w.ops.size(); ++t)
        if (!pair_admissible(w, t)) return false;
    return true;
}

bool word_completely_inadmissible(const QWord& w) {
    for (size_t t = 0; t + 1 < w.ops.size(); ++t)
        if (pair_admissible(w, t)) return false;
    return true;
}

namespace {

// DFS from the rightmost entry; the constraint on the pair between right
// positions q-1 and q is indexed by the paper letter q-1. When sink is given,
// every counted word is reported through it (entries right to left).
uint64_t count_words(uint32_t p, int len, int64_t degree,
                     const std::vector<PairConstraint>& letter_constraint /* size len-1, letter 1..len-1 */,
                     const std::function<void(const std::vector<std::pair<uint8_t, uint32_t>>&)>* sink = nullptr) {
    if (len == 0) {
        if (degree == 1 && sink) (*sink)({});
        return degree == 1 ? 1 : 0;
    }
    uint64_t total = 0;
    std::vector<std::pair<uint8_t, uint32_t>> stack;
    // entries chosen right to left; prev = (eps, a) of the right neighbour
    std::function<void(int, int64_t, uint32_t, uint8_t)> rec =
        [&](int q, int64_t deg, uint32_t prev_a, uint8_t prev_eps) {
        // prune: each remaining operation at least doubles the degree at p=2,
        // and multiplies it by about p at odd primes
        int64_t min_final = deg;
        for (int r = q; r <= len; ++r)
            min_final = (p == 2) ? 2 * min_final : int64_t(p) * min_final - 1;
        if (min_final > degree) return;
        int64_t min_a = (p == 2) ? deg : (deg + 1) / 2;
        for (int64_t a = std::max<int64_t>(min_a, 1);; ++a) {
            int64_t base_inc = (p == 2) ? a : 2 * int64_t(p - 1) * a;
            if (deg + base_inc - (p == 2 ? 0 : 1) > degree) break;
            for (uint8_t eps = 0; eps <= (p == 2 ? 0 : 1); ++eps) {
                int64_t inc = (p == 2) ? a : base_inc - eps;
                int64_t nd = deg + inc;
                if (nd > degree) continue;
                if (q >= 2) {
                    PairConstraint pc = letter_constraint[size_t(q - 2)]; // letter q-1
                    bool adm = a <= int64_t(p) * prev_a - prev_eps;
                    if (pc == PairConstraint::Admissible && !adm) continue;
                    if (pc == PairConstraint::StrictlyInadmissible && adm) continue;
                }
                if (q == len) {
                    if (nd == degree) {
                        ++total;
                        if (sink) {
                            stack.push_back({eps, uint32_t(a)});
                            (*sink)(stack);
                            stack.pop_back();
                        }
                    }
                } else if (sink) {
                    stack.push_back({eps, uint32_t(a)});
                    rec(q + 1, nd, uint32_t(a), eps);
                    stack.pop_back();
                } else {
                    rec(q + 1, nd, uint32_t(a), eps);
                }
            }
        }
    };
    rec(1, 1, 0, 0);
    return total;
}

std::vector<PairConstraint> node_constraints(int n, int k) {
    int len = n + k;
    std::vector<PairConstraint> c(size_t(std::max(0, len - 1)), PairConstraint::Free);
    for (int letter = 1; letter <= k - 1; ++letter)
        c[size_t(letter - 1)] = PairConstraint::StrictlyInadmissible;
    for (int letter = k + 1; letter <= len - 1; ++letter)
        c[size_t(letter - 1)] = PairConstraint::Admissible;
    // letter k (the block bridge) stays free
    return c;
}

} // namespace

uint64_t enumerate_count(uint32_t p, int n, int k, int64_t degree) {
    return count_words(p, n + k, degree, node_constraints(n, k));
}

uint64_t free_count(uint32_t p, int m, int64_t degree) {
    std::vector<PairConstraint> c(size_t(std::max(0, m - 1)), PairConstraint::Free);
    return count_words(p, m, degree, c);
}

HilbertSeries count_series(uint32_t p, int n, int k, int max_degree) {
    if (max_degree > kCountDegreeGuard)
        throw GuardError("word degree exceeds guard", uint64_t(max_degree));
    HilbertSeries h;
    h.bound = max_degree;
    for (int d = 0; d <= max_degree; ++d) h.set(d, enumerate_count(p, n, k, d));
    return h;
}

HilbertSeries free_series(uint32_t p, int m, int max_degree) {
    if (max_degree > kCountDegreeGuard)
        throw GuardError("word degree exceeds guard", uint64_t(max_degree));
    HilbertSeries h;
    h.bound = max_degree;
    for (int d = 0; d <= max_degree; ++d) h.set(d, free_count(p, m, d));
    return h;
}

GradedSpace word_space(uint32_t p, int n, int k, int max_degree) {
    if (max_degree > kCountDegreeGuard)
        throw GuardError("word degree exceeds guard", uint64_t(max_degree));
    GradedSpace gs;
    gs.d_min = 1;
    gs.d_max = max_degree;
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<std::string> labels;
        std::function<void(const std::vector<std::pair<uint8_t, uint32_t>>&)> sink =
            [&](const std::vector<std::pair<uint8_t, uint32_t>>& right_to_left) {
            std::string s;
            for (auto it = right_to_left.rbegin(); it != right_to_left.rend(); ++it) {
                if (!s.empty()) s += " ";
                if (it->first) s += "b";
                s += "Q" + std::to_string(it->second);
            }
            labels.push_back(s.empty() ? "i" : s);
        };
        count_words(p, n + k, d, node_constraints(n, k), &sink);
        if (!labels.empty()) gs.labels[d] = std::move(labels);
    }
    return gs;
}

BottomReport bottom_degree(uint32_t p, int k) {
    if ((p == 2 && k > 8) || (p != 2 && k > 5))
        throw GuardError("bottom degree guard", uint64_t(k));
    int64_t limit = 2;
    for (int i = 0; i < k; ++i) limit *= p;
    limit = limit - 1 - k + 8; // scan a little past the expected bottom
    for (int64_t d = 1; d <= limit; ++d) {
        uint64_t c = enumerate_count(p, 0, k, d);
        if (c) return {d, c};
    }
    return {};
}

namespace {

inline bool binom_odd(int64_t n, int64_t k) {
    if (k < 0 || k > n) return false;
    return (k & ~n) == 0; // Lucas at p = 2
}

bool word_unstable_ok(const std::vector<uint32_t>& w) {
    int64_t deg = 1;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (int64_t(*it) < deg) return false;
        deg += *it;
    }
    return true;
}

} // namespace

std::set<std::vector<uint32_t>> adem_rewrite(const std::vector<uint32_t>& word) {
    if (word.size() > kAdemLengthGuard)
        throw GuardError("adem length guard", uint64_t(word.size()));
    {
        QWord q{2, {}};
        for (uint32_t a : word) q.ops.push_back({0, a});
        if (word_degree(q) > kCountDegreeGuard && !word.empty())
            throw GuardError("adem degree guard", uint64_t(word_degree(q)));
    }
    std::set<std::vector<uint32_t>> result;
    std::vector<std::vector<uint32_t>> work;
    if (word_unstable_ok(word)) work.push_back(word);
    size_t steps = 0;
    while (!work.empty()) {
        if (++steps > 1'000'000) throw std::logic_error("adem rewriting did not terminate");
        std::vector<uint32_t> w = work.back();
        work.pop_back();
        // leftmost inadmissible pair
        size_t t = 0;
        bool adm = true;
        for (; t + 1 < w.size(); ++t)
            if (w[t] > 2 * w[t + 1]) { adm = false; break; }
        if (adm) {
            auto it = result.find(w);
            if (it == result.end()) result.insert(w); else result.erase(it); // F_2
            continue;
        }
        int64_t r = w[t], s = w[t + 1];
        // Q^r Q^s = sum_i C(i-s-1, 2i-r) Q^{r+s-i} Q^i for r > 2s
        for (int64_t i = (r + 1) / 2; i <= r - s - 1; ++i) {
            if (!binom_odd(i - s - 1, 2 * i - r)) continue;
            std::vector<uint32_t> nw = w;
            nw[t] = uint32_t(r + s - i);
            nw[t + 1] = uint32_t(i);
            if (word_unstable_ok(nw)) work.push_back(nw);
        }
    }
    return result;
}

HilbertSeries adem_rank_series(int length, int max_degree) {
    HilbertSeries h;
    h.bound = max_degree;
    for (int d = 0; d <= max_degree; ++d) {
        // collect free words of this degree
        std::vector<std::vector<uint32_t>> words;
        std::function<void(int, int64_t, std::vector<uint32_t>&)> rec =
            [&](int q, int64_t deg, std::vector<uint32_t>& acc) {
            if (q == length + 1) {
                if (deg == d) {
                    std::vector<uint32_t> rev(acc.rbegin(), acc.rend());
                    words.push_back(rev);
                }
                return;
            }
            for (int64_t a = std::max<int64_t>(deg, 1); deg + a <= d; ++a) {
                acc.push_back(uint32_t(a));
                rec(q + 1, deg + a, acc);
                acc.pop_back();
            }
        };
        std::vector<uint32_t> acc;
        rec(1, 1, acc);
        // images in the admissible basis
        std::map<std::vector<uint32_t>, size_t> admset;
        std::vector<std::set<std::vector<uint32_t>>> images;
        for (const auto& w : words) {
            auto img = adem_rewrite(w);
            for (const auto& aw : img) admset.emplace(aw, 0);
            images.push_back(std::move(img));
        }
        size_t idx = 0;
        for (auto& [aw, i] : admset) i = idx++;
        BitMatrix M(admset.size(), words.size());
        for (size_t c = 0; c < images.size(); ++c)
            for (const auto& aw : images[c]) M.set(admset[aw], c, true);
        h.set(d, rank_of(M));
    }
    return h;
}

} // namespace hclab::qwords
