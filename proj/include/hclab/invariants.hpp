#pragma once

#include "hclab/chevalley.hpp"
#include "hclab/fpmatrix.hpp"
#include "hclab/hilbert.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace hclab::invariants {

// Everything here is at p = 2: the polynomial algebra F_2[x_1..x_n] models
// the cohomology of the n-torus classifying space, with GL_n acting by
// substitution on the degree-1 generators.

inline constexpr size_t kMonomialGuard = 1'000'000;
inline constexpr int kEulerRankGuard = 5;
inline constexpr int kModelRankGuard = 4;   // n + k
inline constexpr int kModelDegreeGuard = 30;

// Monomial bookkeeping for homogeneous slices; exponent vectors listed in
// lexicographically descending order.
class PolyContext {
public:
    PolyContext(int nvars, int max_degree);

    int nvars() const { return nvars_; }
    int max_degree() const { return maxd_; }
    size_t count(int d) const { return mons_[size_t(d)].size(); }
    const std::vector<uint16_t>& monomial(int d, size_t i) const { return mons_[size_t(d)][i]; }
    size_t index(int d, const std::vector<uint16_t>& e) const;
    // index at degree d+1 of monomial * x_j (0-based variable)
    size_t shift(int d, size_t mi, int j) const { return shift_[size_t(d)][mi * nvars_ + j]; }

    std::string monomial_label(int d, size_t i) const;

private:
    int nvars_, maxd_;
    std::vector<std::vector<std::vector<uint16_t>>> mons_;
    std::vector<std::map<std::vector<uint16_t>, size_t>> index_;
    std::vector<std::vector<size_t>> shift_;
};

// Per-degree action of a fixed (not necessarily invertible) matrix on slices;
// row j of the degree-d matrix is the image of monomial j.
class ActionSlices {
public:
    ActionSlices(std::shared_ptr<const PolyContext> ctx, chevalley::Mat g);
    const BitMatrix& at(int d); // builds lower degrees as needed

private:
    std::shared_ptr<const PolyContext> ctx_;
    chevalley::Mat g_;
    std::vector<BitMatrix> levels_;
};

// Product of all 2^n - 1 nonzero linear forms, as a vector over the degree
// (2^n - 1) monomial slice.
std::vector<uint64_t> euler_class_vector(const PolyContext& ctx);
std::string euler_class_string(int n);

// Generators of the subgroup acting on n variables (p = 2).
std::vector<chevalley::Mat> subgroup_generators(chevalley::SubgroupTag tag, int parabolic_i, int n);

// Dimensions of the degree-d invariants of F_2[x_1..x_n] under the subgroup.
HilbertSeries invariant_dims(chevalley::SubgroupTag tag, int parabolic_i, int n, int max_degree);

// The graded space (c_n . F_2[x])^{B_n} with its Hecke operators and Steenrod
// squares; degrees are polynomial degrees.
class SliceModel {
public:
    SliceModel(int nvars, int max_poly_degree, unsigned jobs = 1);

    int nvars() const { return nvars_; }
    int max_poly_degree() const { return maxd_; }
    size_t dim(int d) const;
    const BitMatrix& basis(int d) const { return basis_[size_t(d)]; } // monomial coords, columns

    // Operators in slice-basis coordinates, Hecke letters as in the algebra
    // presentation; the letter-to-parabolic assignment is reversed internally
    // (letter i acts through the parabolic mixing variables n-i, n-i+1), the
    // orientation forced by the word-model comparison.
    const BitMatrix& ehat_op(int letter, int d);
    BitMatrix e_op(int letter, int d);
    const BitMatrix& steenrod_op(int k, int d); // dim(d+k) x dim(d)

    // Product over a Hecke word, rightmost letter applied first.
    struct Letter {
        int i;
        bool hatted;
    };
    BitMatrix word_op(const std::vector<Letter>& word, int d);

    const PolyContext& ctx() const { return *ctx_; }

private:
    int nvars_, maxd_;
    unsigned jobs_;
    std::shared_ptr<const PolyContext> ctx_;
    std::vector<uint64_t> euler_;
    std::vector<BitMatrix> basis_;                       // per degree
    std::map<std::pair<int, int>, BitMatrix> ehat_cache_; // (letter, d)
    std::map<std::pair<int, int>, BitMatrix> sq_cache_;   // (k, d)
    std::vector<std::vector<std::unique_ptr<ActionSlices>>> transfer_actions_; // [parabolic][rep]
};

// Word for ehat_n e_k in SliceModel::Letter form.
std::vector<SliceModel::Letter> corner_word(int n, int k);

// Graded model of the summand cut out by ehat_n e_k, in homological degrees
// (polynomial degree + 1).
struct ModuleModel {
    int n = 0, k = 0, D = 0;
    std::shared_ptr<SliceModel> slices;
    std::map<int, BitMatrix> basis; // homological degree -> slice-coord columns

    size_t dim(int hd) const;
    HilbertSeries hilbert() const;
    // Steenrod operator in model coordinates between homological degrees.
    BitMatrix steenrod(int k, int hd) const;
    // Basis labels per homological degree, one token per image column.
    GradedSpace graded_space() const;
};

ModuleModel module_model(int n, int k, int D, unsigned jobs = 1);
ModuleModel module_model(std::shared_ptr<SliceModel> slices, int n, int k, int D);

// Dimension of degree-preserving families commuting with all Steenrod squares
// within the bound (a truncated Hom computation; zero certifies consistency).
size_t truncated_hom(const ModuleModel& src, const ModuleModel& dst, int D);

// Rank of the span of the n! Hecke basis operators acting on all slices of
// degree <= max_poly_degree; equals n! when the action is faithful there.
size_t hecke_operator_rank(int n, int max_poly_degree);

} // namespace hclab::invariants
