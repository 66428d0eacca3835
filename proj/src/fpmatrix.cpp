#include "hclab/fpmatrix.hpp"

#include <algorithm>
#include <cstring>

namespace hclab {

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
    FpMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
    FpMatrix r(p_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t l = 0; l < cols_; ++l) {
            uint32_t c = at(i, l);
            if (c == 0) continue;
            const uint32_t* orow = o.row(l);
            uint32_t* rrow = r.row(i);
            for (size_t j = 0; j < o.cols_; ++j)
                rrow[j] = uint32_t((rrow[j] + uint64_t(c) * orow[j]) % p_);
        }
    }
    return r;
}

FpMatrix FpMatrix::add(const FpMatrix& o) const {
    FpMatrix r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
    return r;
}

FpMatrix FpMatrix::scaled(uint32_t c) const {
    FpMatrix r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = uint32_t(uint64_t(a_[i]) * c % p_);
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(p_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

FpMatrix FpMatrix::columns(const std::vector<size_t>& idx) const {
    FpMatrix r(p_, rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) r.set(i, j, at(i, idx[j]));
    return r;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

bool BitMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint64_t v) { return v == 0; });
}

BitMatrix BitMatrix::mul(const BitMatrix& o) const {
    BitMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        const uint64_t* arow = row(i);
        uint64_t* rrow = r.row(i);
        for (size_t w = 0; w < wpr_; ++w) {
            uint64_t bits = arow[w];
            while (bits) {
                size_t l = w * 64 + size_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                const uint64_t* orow = o.row(l);
                for (size_t t = 0; t < o.wpr_; ++t) rrow[t] ^= orow[t];
            }
        }
    }
    return r;
}

BitMatrix BitMatrix::add(const BitMatrix& o) const {
    BitMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] ^= o.a_[i];
    return r;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t w = 0; w < wpr_; ++w) {
            uint64_t bits = row(i)[w];
            while (bits) {
                size_t j = w * 64 + size_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                r.set(j, i, true);
            }
        }
    return r;
}

BitMatrix BitMatrix::columns(const std::vector<size_t>& idx) const {
    BitMatrix r(rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j)
            if (get(i, idx[j])) r.set(i, j, true);
    return r;
}

namespace {

// Row-reduce in place; returns pivot column list. First nonzero row is the
// pivot at every column, scanned left to right.
std::vector<size_t> rref(FpMatrix& m) {
    Fp F(m.p());
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t pr = r;
        while (pr < m.rows() && m.at(pr, c) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != r)
            for (size_t j = 0; j < m.cols(); ++j) {
                uint32_t t = m.at(r, j);
                m.set(r, j, m.at(pr, j));
                m.set(pr, j, t);
            }
        uint32_t inv = F.inv(m.at(r, c));
        for (size_t j = c; j < m.cols(); ++j) m.set(r, j, F.mul(m.at(r, j), inv));
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            uint32_t f = m.at(i, c);
            if (f == 0) continue;
            for (size_t j = c; j < m.cols(); ++j)
                m.set(i, j, F.sub(m.at(i, j), F.mul(f, m.at(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<size_t> rref(BitMatrix& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t pr = r;
        while (pr < m.rows() && !m.get(pr, c)) ++pr;
        if (pr == m.rows()) continue;
        if (pr != r)
            for (size_t w = 0; w < m.words_per_row(); ++w)
                std::swap(m.row(r)[w], m.row(pr)[w]);
        for (size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class M, class RK>
RK kernel_from_rref(const M& red, const std::vector<size_t>& pivots, size_t cols);

} // namespace

RankKernel rank_and_kernel_generic(const FpMatrix& m) {
    FpMatrix red = m;
    std::vector<size_t> pivots = rref(red);
    size_t nfree = m.cols() - pivots.size();
    FpMatrix ker(m.p(), m.cols(), nfree);
    Fp F(m.p());
    size_t kc = 0;
    std::vector<char> is_pivot(m.cols(), 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    for (size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        ker.set(fc, kc, 1);
        for (size_t ri = 0; ri < pivots.size(); ++ri)
            ker.set(pivots[ri], kc, F.neg(red.at(ri, fc)));
        ++kc;
    }
    return {pivots.size(), std::move(ker)};
}

RankKernel rank_and_kernel(const FpMatrix& m) { return rank_and_kernel_generic(m); }

BitRankKernel rank_and_kernel(const BitMatrix& m) {
    BitMatrix red = m;
    std::vector<size_t> pivots = rref(red);
    size_t nfree = m.cols() - pivots.size();
    BitMatrix ker(m.cols(), nfree);
    size_t kc = 0;
    std::vector<char> is_pivot(m.cols(), 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    for (size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        ker.set(fc, kc, true);
        for (size_t ri = 0; ri < pivots.size(); ++ri)
            if (red.get(ri, fc)) ker.set(pivots[ri], kc, true);
        ++kc;
    }
    return {pivots.size(), std::move(ker)};
}

size_t rank_of(const FpMatrix& m) {
    FpMatrix red = m;
    return rref(red).size();
}

size_t rank_of(const BitMatrix& m) {
    BitMatrix red = m;
    return rref(red).size();
}

std::vector<size_t> pivot_columns(const FpMatrix& m) {
    FpMatrix red = m;
    return rref(red);
}

std::vector<size_t> pivot_columns(const BitMatrix& m) {
    BitMatrix red = m;
    return rref(red);
}

std::optional<FpMatrix> invert(const FpMatrix& m) {
    size_t n = m.rows();
    FpMatrix aug(m.p(), n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n + i, 1);
    }
    std::vector<size_t> pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
    FpMatrix inv(m.p(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.set(i, j, aug.at(i, n + j));
    return inv;
}

std::optional<BitMatrix> invert(const BitMatrix& m) {
    size_t n = m.rows();
    BitMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) if (m.get(i, j)) aug.set(i, j, true);
        aug.set(i, n + i, true);
    }
    std::vector<size_t> pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
    BitMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) if (aug.get(i, n + j)) inv.set(i, j, true);
    return inv;
}

std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
    size_t n = a.rows(), r = a.cols(), s = b.cols();
    FpMatrix aug(a.p(), n, r + s);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < r; ++j) aug.set(i, j, a.at(i, j));
        for (size_t j = 0; j < s; ++j) aug.set(i, r + j, b.at(i, j));
    }
    std::vector<size_t> pivots = rref(aug);
    FpMatrix x(a.p(), r, s);
    for (size_t ri = 0; ri < pivots.size(); ++ri) {
        if (pivots[ri] >= r) return std::nullopt; // pivot in the rhs block: inconsistent
        for (size_t j = 0; j < s; ++j) x.set(pivots[ri], j, aug.at(ri, r + j));
    }
    return x;
}

std::optional<BitMatrix> solve(const BitMatrix& a, const BitMatrix& b) {
    size_t n = a.rows(), r = a.cols(), s = b.cols();
    BitMatrix aug(n, r + s);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < r; ++j) if (a.get(i, j)) aug.set(i, j, true);
        for (size_t j = 0; j < s; ++j) if (b.get(i, j)) aug.set(i, r + j, true);
    }
    std::vector<size_t> pivots = rref(aug);
    BitMatrix x(r, s);
    for (size_t ri = 0; ri < pivots.size(); ++ri) {
        if (pivots[ri] >= r) return std::nullopt;
        for (size_t j = 0; j < s; ++j) if (aug.get(ri, r + j)) x.set(pivots[ri], j, true);
    }
    return x;
}

} // namespace hclab
