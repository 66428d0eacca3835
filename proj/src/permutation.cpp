#include "hclab/permutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hclab {

Perm perm_identity(int n) {
    Perm w(n);
    for (int i = 0; i < n; ++i) w[i] = uint8_t(i);
    return w;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = uint8_t(i);
    return r;
}

Perm perm_transposition(int n, int i) {
    Perm w = perm_identity(n);
    std::swap(w[i], w[i + 1]);
    return w;
}

int perm_length(const Perm& w) {
    int inv = 0;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) ++inv;
    return inv;
}

bool perm_is_identity(const Perm& w) {
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != i) return false;
    return true;
}

std::vector<int> reduced_word(const Perm& w) {
    // w = s_{i_1} ... s_{i_l}: strip the leftmost descent of the inverse side,
    // i.e. find i with w^{-1} descending, equivalently value i after value i+1.
    std::vector<int> word;
    Perm v = w;
    int n = int(w.size());
    while (!perm_is_identity(v)) {
        for (int i = 0; i < n - 1; ++i) {
            Perm sv = perm_compose(perm_transposition(n, i), v);
            if (perm_length(sv) < perm_length(v)) {
                word.push_back(i);
                v = sv;
                break;
            }
        }
    }
    return word; // w = s_{word[0]} * s_{word[1]} * ... (left to right)
}

SymmetricGroup::SymmetricGroup(int n_) : n(n_) {
    Perm w = perm_identity(n);
    do {
        elements.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
}

size_t SymmetricGroup::index_of(const Perm& w) const {
    // Lehmer code rank matches lexicographic enumeration order.
    size_t idx = 0;
    size_t fact = 1;
    for (int i = 2; i <= n - 1; ++i) fact *= size_t(i); // (n-1)!
    size_t f = fact;
    for (int i = 0; i < n - 1; ++i) {
        size_t c = 0;
        for (int j = i + 1; j < n; ++j)
            if (w[j] < w[i]) ++c;
        idx += c * f;
        f /= size_t(n - 1 - i);
    }
    return idx;
}

std::string perm_to_string(const Perm& w) {
    std::string s = "[";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(int(w[i]) + 1);
    }
    return s + "]";
}

} // namespace hclab
