#pragma once

#include "hclab/fpmatrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hclab::contraction {

enum class Backend { HeckeRegular, Invariants };

Backend backend_from_string(const std::string& s);
std::string backend_to_string(Backend b);

inline constexpr int kHeckeRegularTotalGuard = 5;
inline constexpr int kInvariantsTotalGuard = 4;
inline constexpr int kDegreeGuard = 30;

struct HomotopyVerdict {
    uint32_t lam = 1, mu = 1;
    bool invertible = false;
    std::vector<uint32_t> kernel_vector; // a witness when singular
};

struct DegreeReport {
    int d = 0;
    size_t dim = 0;
    size_t rank_in = 0;   // rank of the incoming differential
    size_t rank_out = 0;  // rank of the outgoing differential
    std::vector<HomotopyVerdict> homotopy;
};

struct NodeReport {
    int n = 0, k = 0;
    std::vector<DegreeReport> degrees;
};

struct Certificate {
    int m = 0;
    uint32_t p = 2;
    Backend backend = Backend::HeckeRegular;
    int D = 0;
    std::vector<NodeReport> nodes;
    bool d_squared_zero = false;
    bool s_squared_zero = false;
    bool exact = false;
    bool all_homotopy_invertible = false;
};

// Build the total-word-length-m complex of summand models, with the
// differential d = ehat_{n+1} e_k and homotopy s = e_k ehat_{n+1} on each
// edge, then certify d^2 = 0, s^2 = 0, degreewise invertibility of
// lam*(ds) + mu*(sd) over all nonzero scalar pairs, and exactness via the
// rank equation rank_in + rank_out = dim.
Certificate certify(int m, uint32_t p, Backend backend, int D, unsigned jobs = 1);

// Node dimensions of the built complex (for cross-checks against the word
// model): nodes ordered (0,m) .. (m,0).
std::vector<std::vector<size_t>> node_dimensions(const Certificate& c);

} // namespace hclab::contraction
