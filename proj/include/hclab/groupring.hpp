#pragma once

#include "hclab/chevalley.hpp"
#include "hclab/fpmatrix.hpp"
#include "hclab/rational.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hclab::groupring {

using chevalley::GLGroup;

// Group-ring element with dense coefficients over the interned element table.
template <class Coeff>
struct GroupRingElement {
    std::shared_ptr<const GLGroup> G;
    std::vector<Coeff> c;

    bool is_zero() const {
        for (const Coeff& v : c)
            if (!(v == Coeff(0))) return false;
        return true;
    }
    bool operator==(const GroupRingElement& o) const { return c == o.c; }
    size_t support_size() const {
        size_t s = 0;
        for (const Coeff& v : c) s += !(v == Coeff(0));
        return s;
    }
};

using QElt = GroupRingElement<Rational>;
using FpElt = GroupRingElement<uint32_t>;

std::shared_ptr<const GLGroup> shared_group(int n, uint32_t p);

QElt q_zero(std::shared_ptr<const GLGroup> G);
QElt q_delta(std::shared_ptr<const GLGroup> G, uint32_t g, const Rational& c = 1);
QElt q_mul(const QElt& a, const QElt& b);          // convolution
QElt q_add(const QElt& a, const QElt& b);
QElt q_scale(const Rational& s, const QElt& a);

FpElt fp_reduce(const QElt& a);                    // reduce p-local coefficients mod p
FpElt fp_mul(const FpElt& a, const FpElt& b);
FpElt fp_add(const FpElt& a, const FpElt& b);

// e^St_n = (1/[GL_n : U_n]) * (sum over W of (-1)^l(w) [w]) * (sum over B of [b])
QElt steinberg(int n, uint32_t p);
bool steinberg_idempotent(const QElt& e);
bool steinberg_p_local(const QElt& e, uint32_t p);

// e^St_k e^St_{k+1} = e^St_{k+1} = e^St_{k+1} e^St_k inside Q[GL_{k+1}].
bool steinberg_chain(int k, uint32_t p);

// Coinvariants of the regular module: basis = H\G, labelled by the minimal
// interned element of each coset.
struct CoinvariantSpace {
    std::shared_ptr<const GLGroup> G;
    std::vector<uint32_t> subgroup;      // H as element indices
    std::vector<uint32_t> coset_label;   // per group element: index into reps
    std::vector<uint32_t> reps;          // minimal element of each coset, ascending

    size_t dim() const { return reps.size(); }
};

CoinvariantSpace coinvariants(std::shared_ptr<const GLGroup> G, const std::vector<uint32_t>& H);

// Quotient M_K -> M_H and transfer M_H -> M_K on the regular module, K <= H.
// The composite is multiplication by the index [H:K].
struct TransferPair {
    FpMatrix quotient;
    FpMatrix transfer;
    uint64_t index; // [H:K]
};

TransferPair coinvariants_and_transfer(std::shared_ptr<const GLGroup> G,
                                       const std::vector<uint32_t>& H,
                                       const std::vector<uint32_t>& K);

// Matrix of the composite M_{B_n} -> M --e^St--> M -> M_{B_n} on the Borel
// coset basis shared with the Hecke coset model; compared against e_n there.
// Also recomputes through a twisted section to certify section independence.
struct SteinbergHeckeReport {
    bool matches_e_n = false;
    bool section_independent = false;
};

SteinbergHeckeReport steinberg_vs_hecke(int n, uint32_t p);

} // namespace hclab::groupring
