#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hclab {

// Permutations of {0..n-1} in one-line notation. The Weyl group of type
// A_{n-1}, with length = inversion count.
using Perm = std::vector<uint8_t>;

Perm perm_identity(int n);
Perm perm_compose(const Perm& a, const Perm& b); // (a*b)(i) = a(b(i))
Perm perm_inverse(const Perm& a);
Perm perm_transposition(int n, int i); // s_i swaps i, i+1 (0-based)
int perm_length(const Perm& w);        // inversions
bool perm_is_identity(const Perm& w);

// Reduced word for w as generator indices, peeled off left descents.
std::vector<int> reduced_word(const Perm& w);

// All of S_n in lexicographic one-line order, with rank/unrank by Lehmer code.
struct SymmetricGroup {
    int n;
    std::vector<Perm> elements;

    explicit SymmetricGroup(int n);
    size_t index_of(const Perm& w) const; // Lehmer rank
    const Perm& longest() const { return elements.back(); }
};

std::string perm_to_string(const Perm& w); // one-line, 1-based

} // namespace hclab
