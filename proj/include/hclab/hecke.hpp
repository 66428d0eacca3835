#pragma once

#include "hclab/chevalley.hpp"
#include "hclab/fpmatrix.hpp"
#include "hclab/permutation.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hclab::hecke {

class HeckeAlgebra;
using AlgebraPtr = std::shared_ptr<const HeckeAlgebra>;

// Element of the mod-p Hecke algebra H_n in T_w coordinates.
struct HeckeElement {
    AlgebraPtr alg;
    std::vector<uint32_t> c; // dense over the n! basis

    bool is_zero() const;
    bool operator==(const HeckeElement& o) const { return c == o.c; }
    size_t support_size() const;
};

// The mod-p Hecke algebra of type A_{n-1} on the T_w basis, with the length
// recursion T_i T_w = T_{s_i w} (length up) and p T_{s_i w} + (p-1) T_w
// (length down); mod p the latter collapses to (p-1) T_w.
class HeckeAlgebra : public std::enable_shared_from_this<HeckeAlgebra> {
public:
    static AlgebraPtr create(int n, uint32_t p);

    int rank() const { return n_; }
    uint32_t prime() const { return p_; }
    size_t dim() const { return W_.elements.size(); } // n!
    const SymmetricGroup& weyl() const { return W_; }

    HeckeElement zero() const;
    HeckeElement unit() const;
    HeckeElement basis(size_t w) const;
    HeckeElement gen_T(int i) const;  // 1-based letter
    HeckeElement e(int i) const;      // p - T_i = -T_i mod p
    HeckeElement ehat(int i) const;   // 1 + T_i

    HeckeElement mul(const HeckeElement& a, const HeckeElement& b) const;
    HeckeElement add(const HeckeElement& a, const HeckeElement& b) const;
    HeckeElement sub(const HeckeElement& a, const HeckeElement& b) const;
    HeckeElement scale(uint32_t s, const HeckeElement& a) const;

    // Longest word in the e(i) (resp. ehat(i)) over the letter range
    // [lo, hi], 1-based inclusive; empty range yields the unit.
    HeckeElement e_long(int lo, int hi) const;
    HeckeElement ehat_long(int lo, int hi) const;

    // (T_v T_w) as +/- one basis element: returns (index, coefficient)
    std::pair<size_t, uint32_t> basis_product(size_t v, size_t w) const;

    const std::vector<int>& reduced(size_t w) const { return rword_[w]; }

private:
    HeckeAlgebra(int n, uint32_t p);

    int n_;
    uint32_t p_;
    SymmetricGroup W_;
    std::vector<uint8_t> len_;
    std::vector<std::vector<uint32_t>> left_step_; // [letter][w] -> index of s_i w
    std::vector<std::vector<int>> rword_;
};

// Ladder word for the longest element on letters [lo, hi] (1-based).
std::vector<int> longest_ladder(int lo, int hi);

struct PresentationReport {
    bool idempotent = false;
    bool braid = false;
    bool distant = false;
    bool dimension_ok = false;
    bool all() const { return idempotent && braid && distant && dimension_ok; }
};

PresentationReport verify_presentation(int n, uint32_t p);

// Integral lift check over exact rationals: e(i)^2 = (p+1)e(i) and
// e(i)e(i+1)e(i) + p e(i) = e(i+1)e(i)e(i+1) + p e(i+1).
bool verify_integral_lift(int n, uint32_t p);

// e_n as the longest word in the e(i); absorption and idempotency verified.
HeckeElement longest_idempotent(const AlgebraPtr& A);
// Dimension of {x : e(i)x = x = xe(i) for all i}; 1 certifies uniqueness.
size_t absorption_solution_dimension(const AlgebraPtr& A);

// Algebra involution with e(i) -> ehat(i), i.e. T_i -> -1 - T_i.
HeckeElement involution(const HeckeElement& x);

// Image of x in H_total under the block embedding at the given offset
// (letters i -> i + offset).
HeckeElement block_embed(const HeckeElement& x, int offset, const AlgebraPtr& target);

// e_k e(k) e_k = e_{k+1} and the hatted mirror at the top of the letter range.
bool ek_recursion_check(int k, int total, uint32_t p);

struct KeyIdentityReport {
    bool identity_holds = false;
    bool orthogonal = false;
    bool both_idempotent = false;
    bool all() const { return identity_holds && orthogonal && both_idempotent; }
};

// In H_{n+k} (n, k >= 1): ehat_n e_{k+1} ehat_n + e_k ehat_{n+1} e_k = ehat_n e_k,
// the two summands orthogonal and idempotent.
KeyIdentityReport key_identity(int n, int k, uint32_t p);

// d = ehat_{n+1} e_k and s = e_k ehat_{n+1} in H_{n+k}; the differential and
// homotopy realizations on the node (n, k). k = 0 returns zero elements: the
// outgoing differential at the right end vanishes on totals >= 1.
std::pair<HeckeElement, HeckeElement> ds_elements(int n, int k, uint32_t p);

// Corner subalgebra machinery: basis of C H C in T_w coordinates (columns).
FpMatrix corner_basis(const AlgebraPtr& A, const HeckeElement& C);
// Matrix of left multiplication by z on the span of the given corner basis.
FpMatrix corner_left_mul(const AlgebraPtr& A, const HeckeElement& z, const FpMatrix& basis);
// rank(left mul by lam*ehat_n e_{k+1} ehat_n + mu*e_k ehat_{n+1} e_k) full?
bool corner_combination_invertible(int n, int k, uint32_t p, uint32_t lam, uint32_t mu);

// The defining permutation module F_p[B_n \ GL_n] with its Hecke action;
// the external correctness oracle for the T_w engine.
class CosetModel {
public:
    CosetModel(int n, uint32_t p);

    size_t dim() const { return cosets_.size(); }
    const chevalley::CosetSpace& cosets() const { return cosets_; }
    const FpMatrix& ehat_matrix(int i) const { return ehat_[size_t(i) - 1]; } // 1-based
    FpMatrix t_matrix(size_t w) const;
    FpMatrix rep(const HeckeElement& x) const;

private:
    int n_;
    uint32_t p_;
    chevalley::CosetSpace cosets_;
    std::vector<FpMatrix> ehat_;
    mutable std::vector<FpMatrix> t_cache_;
    mutable std::vector<char> t_ready_;
    SymmetricGroup W_;
};

} // namespace hclab::hecke
