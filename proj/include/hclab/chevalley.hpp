#pragma once

#include "hclab/fp.hpp"
#include "hclab/permutation.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hclab::chevalley {

// Thrown when an enumeration guard is exceeded; carries the offending size.
struct GuardError : std::runtime_error {
    uint64_t size_estimate;
    GuardError(const std::string& what, uint64_t size)
        : std::runtime_error(what), size_estimate(size) {}
};

inline constexpr uint64_t kGroupOrderGuard = 10'000'000;   // full enumeration
inline constexpr uint64_t kCosetGuard = 100'000;           // Borel coset spaces
inline constexpr uint64_t kWreathOrderGuard = 1 << 13;     // iterated wreath products
inline constexpr uint64_t kEpiBruteGuard = 10'000'000;     // p^(m*n) matrices

// Square matrix over F_p; invertible ones are the group elements.
struct Mat {
    int n = 0;
    uint32_t p = 2;
    std::vector<uint32_t> e; // row-major

    Mat() = default;
    Mat(int n_, uint32_t p_) : n(n_), p(p_), e(size_t(n_) * n_, 0) {}
    uint32_t at(int i, int j) const { return e[size_t(i) * n + j]; }
    void set(int i, int j, uint32_t v) { e[size_t(i) * n + j] = v % p; }
    bool operator==(const Mat& o) const { return n == o.n && p == o.p && e == o.e; }
    uint64_t encode() const {
        uint64_t code = 0;
        for (uint32_t v : e) code = code * p + v;
        return code;
    }
};

Mat mat_identity(int n, uint32_t p);
Mat mat_mul(const Mat& a, const Mat& b);
int mat_rank(const Mat& a);
std::optional<Mat> mat_inverse(const Mat& a);
Mat mat_block_embed(const Mat& g, int total); // diag(g, I)
Mat perm_matrix(const Perm& w, uint32_t p);
Mat transvection(int n, uint32_t p, int i, int j, uint32_t t); // I + t E_{ij}

enum class SubgroupTag { Trivial, Borel, Unipotent, Parabolic, Full, Weyl, ElementaryAbelian };

struct SubgroupDescriptor {
    SubgroupTag tag = SubgroupTag::Full;
    int parabolic_i = 0; // 1-based, for Parabolic only
    int n = 1;
    uint32_t p = 2;
};

SubgroupTag subgroup_tag_from_string(const std::string& s);
std::string subgroup_tag_to_string(SubgroupTag t);

uint64_t full_group_order(int n, uint32_t p);               // prod (p^n - p^i)
uint64_t subgroup_order_formula(const SubgroupDescriptor&); // closed forms
// Order with the enumeration cross-check (guard: order <= 1e7).
uint64_t group_order(const SubgroupDescriptor&);

// Fully enumerated GL_n(F_p) with interned elements.
struct GLGroup {
    int n;
    uint32_t p;
    std::vector<Mat> elems; // sorted by encode()
    std::unordered_map<uint64_t, uint32_t> index;

    uint32_t id() const;
    uint32_t lookup(const Mat& m) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    std::vector<uint32_t> subgroup_elems(SubgroupTag tag, int parabolic_i = 0) const;
};

GLGroup build_group(int n, uint32_t p); // guard on order

// Canonical representative of the coset B_n g under left multiplication by
// upper-triangular matrices: row-reduced from the bottom, leading entries 1,
// zeros above each lower leading position. Idempotent by construction.
Mat canonical_coset_rep(const Mat& g);

struct CosetSpace {
    int n;
    uint32_t p;
    std::vector<Mat> reps; // sorted by encode()
    std::unordered_map<uint64_t, uint32_t> index;

    uint32_t coset_of(const Mat& g) const;
    size_t size() const { return reps.size(); }
};

uint64_t coset_count_formula(int n, uint32_t p); // sum_w p^{l(w)}
// Built by orbit closure from the identity coset; never enumerates the group.
CosetSpace enumerate_cosets(int n, uint32_t p);

// Generators of GL_n(F_p): adjacent transvections both ways and a primitive
// diagonal unit.
std::vector<Mat> group_generators(int n, uint32_t p);

// The p+1 right-coset representatives of B_n in the minimal parabolic P_i
// (1-based i): {id} and {w_i x_i(t) : t in F_p}. Transfers on coinvariants
// sum over these.
std::vector<Mat> parabolic_coset_reps(int i, int n, uint32_t p);

// Left-coset representatives {id} and {x_i(t) w_i}; transfers on invariants
// sum over these instead.
std::vector<Mat> parabolic_left_coset_reps(int i, int n, uint32_t p);

uint64_t parabolic_index(int i, int n, uint32_t p);

// Bruhat cell of g: the unique w with g in B w B, read off the ranks of
// lower-left submatrices.
Perm bruhat_cell(const Mat& g);

uint64_t count_epis_formula(int m, int n, uint32_t p);
uint64_t count_epis_bruteforce(int m, int n, uint32_t p); // guard p^(mn)
uint64_t count_epis(int m, int n, uint32_t p);            // formula, cross-checked when brute force fits

// The Sylow wreath product Z/p wr ... wr Z/p acting on p^n points (leaves of
// the p-ary depth-n tree), with the translation subgroup E_n marked.
struct WreathGroup {
    uint32_t p;
    int n;
    size_t degree; // p^n
    std::vector<std::vector<uint16_t>> elems;
    std::unordered_map<std::string, uint32_t> index;
    std::vector<uint32_t> translations; // images of the E_n basis

    uint32_t lookup(const std::vector<uint16_t>& g) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
};

WreathGroup build_wreath(int n, uint32_t p); // guard on order

struct TransRepReport {
    uint64_t epi_orbit_count = 0;
    uint64_t transrep_count = 0;
    bool injective = false;
};

// Compares U_n-orbits of epimorphisms E_m ->> E_n with conjugacy classes of
// transitive representations E_m -> wreath group; the induced linear map must
// be injective.
TransRepReport transrep_injectivity(uint32_t p, int n, int m);

} // namespace hclab::chevalley
