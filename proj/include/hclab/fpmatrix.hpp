#pragma once

#include "hclab/fp.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hclab {

// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix() : p_(2), rows_(0), cols_(0) {}
    FpMatrix(uint32_t p, size_t rows, size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMatrix identity(uint32_t p, size_t n);

    uint32_t p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    void set(size_t i, size_t j, uint32_t v) { a_[i * cols_ + j] = v % p_; }
    void add_at(size_t i, size_t j, uint32_t v) {
        uint32_t& e = a_[i * cols_ + j];
        e = uint32_t((uint64_t(e) + v) % p_);
    }

    const uint32_t* row(size_t i) const { return a_.data() + i * cols_; }
    uint32_t* row(size_t i) { return a_.data() + i * cols_; }

    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool is_zero() const;

    FpMatrix mul(const FpMatrix& o) const;
    FpMatrix add(const FpMatrix& o) const;
    FpMatrix scaled(uint32_t c) const;
    FpMatrix transpose() const;
    FpMatrix columns(const std::vector<size_t>& idx) const;

private:
    uint32_t p_;
    size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

// Bit-packed matrix over F_2, rows stored as 64-bit words.
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0), wpr_(0) {}
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), a_(rows * wpr_, 0) {}

    static BitMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t words_per_row() const { return wpr_; }

    bool get(size_t i, size_t j) const { return (a_[i * wpr_ + j / 64] >> (j % 64)) & 1; }
    void set(size_t i, size_t j, bool v) {
        uint64_t m = uint64_t(1) << (j % 64);
        if (v) a_[i * wpr_ + j / 64] |= m; else a_[i * wpr_ + j / 64] &= ~m;
    }
    void flip(size_t i, size_t j) { a_[i * wpr_ + j / 64] ^= uint64_t(1) << (j % 64); }

    const uint64_t* row(size_t i) const { return a_.data() + i * wpr_; }
    uint64_t* row(size_t i) { return a_.data() + i * wpr_; }
    void xor_row(size_t dst, size_t src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool is_zero() const;

    BitMatrix mul(const BitMatrix& o) const;
    BitMatrix add(const BitMatrix& o) const; // XOR
    BitMatrix transpose() const;
    BitMatrix columns(const std::vector<size_t>& idx) const;

private:
    size_t rows_, cols_, wpr_;
    std::vector<uint64_t> a_;
};

struct RankKernel {
    size_t rank;
    FpMatrix kernel; // columns form a basis of the right kernel
};

struct BitRankKernel {
    size_t rank;
    BitMatrix kernel;
};

// Gaussian elimination with first-nonzero pivoting throughout; downstream code
// must not depend on a particular kernel basis, only on span and rank.
RankKernel rank_and_kernel(const FpMatrix& m);
BitRankKernel rank_and_kernel(const BitMatrix& m);

// Generic (unpacked) elimination at p = 2, kept as the reference the packed
// backend is tested against.
RankKernel rank_and_kernel_generic(const FpMatrix& m);

size_t rank_of(const FpMatrix& m);
size_t rank_of(const BitMatrix& m);

// nullopt signals a singular matrix.
std::optional<FpMatrix> invert(const FpMatrix& m);
std::optional<BitMatrix> invert(const BitMatrix& m);

// Indices of the first maximal independent set of columns (pivot columns).
std::vector<size_t> pivot_columns(const FpMatrix& m);
std::vector<size_t> pivot_columns(const BitMatrix& m);

// Solve A X = B for X; nullopt if inconsistent.
std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b);
std::optional<BitMatrix> solve(const BitMatrix& a, const BitMatrix& b);

} // namespace hclab
