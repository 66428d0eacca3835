#include "hclab/hecke.hpp"

#include "hclab/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hclab::hecke {

bool HeckeElement::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](uint32_t v) { return v == 0; });
}

size_t HeckeElement::support_size() const {
    size_t s = 0;
    for (uint32_t v : c) s += (v != 0);
    return s;
}

HeckeAlgebra::HeckeAlgebra(int n, uint32_t p) : n_(n), p_(p), W_(n) {
    if (!Fp::is_prime(p)) throw std::invalid_argument("p must be prime");
    size_t dim = W_.elements.size();
    len_.resize(dim);
    for (size_t w = 0; w < dim; ++w) len_[w] = uint8_t(perm_length(W_.elements[w]));
    left_step_.assign(size_t(std::max(0, n - 1)), std::vector<uint32_t>(dim));
    for (int i = 0; i + 1 < n; ++i) {
        Perm s = perm_transposition(n, i);
        for (size_t w = 0; w < dim; ++w)
            left_step_[size_t(i)][w] = uint32_t(W_.index_of(perm_compose(s, W_.elements[w])));
    }
    rword_.resize(dim);
    for (size_t w = 0; w < dim; ++w) rword_[w] = reduced_word(W_.elements[w]);
}

AlgebraPtr HeckeAlgebra::create(int n, uint32_t p) {
    return AlgebraPtr(new HeckeAlgebra(n, p));
}

HeckeElement HeckeAlgebra::zero() const {
    return {shared_from_this(), std::vector<uint32_t>(dim(), 0)};
}

HeckeElement HeckeAlgebra::unit() const { return basis(W_.index_of(perm_identity(n_))); }

HeckeElement HeckeAlgebra::basis(size_t w) const {
    HeckeElement x = zero();
    x.c[w] = 1;
    return x;
}

HeckeElement HeckeAlgebra::gen_T(int i) const {
    return basis(W_.index_of(perm_transposition(n_, i - 1)));
}

HeckeElement HeckeAlgebra::e(int i) const { return scale(p_ - 1, gen_T(i)); }

HeckeElement HeckeAlgebra::ehat(int i) const { return add(unit(), gen_T(i)); }

std::pair<size_t, uint32_t> HeckeAlgebra::basis_product(size_t v, size_t w) const {
    // fold the reduced word of v onto w from the right
    const std::vector<int>& word = rword_[v];
    size_t u = w;
    uint32_t coeff = 1;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        size_t su = left_step_[size_t(*it)][u];
        if (len_[su] > len_[u]) {
            u = su;
        } else {
            coeff = uint32_t(uint64_t(coeff) * (p_ - 1) % p_);
        }
    }
    return {u, coeff};
}

HeckeElement HeckeAlgebra::mul(const HeckeElement& a, const HeckeElement& b) const {
    if (a.alg->rank() != rank() || b.alg->rank() != rank() || a.alg->prime() != prime() ||
        b.alg->prime() != prime())
        throw std::invalid_argument("rank/prime mismatch in Hecke product");
    HeckeElement out = zero();
    for (size_t v = 0; v < a.c.size(); ++v) {
        if (!a.c[v]) continue;
        for (size_t w = 0; w < b.c.size(); ++w) {
            if (!b.c[w]) continue;
            auto [u, coeff] = basis_product(v, w);
            out.c[u] = uint32_t((out.c[u] + uint64_t(a.c[v]) * b.c[w] % p_ * coeff) % p_);
        }
    }
    return out;
}

HeckeElement HeckeAlgebra::add(const HeckeElement& a, const HeckeElement& b) const {
    HeckeElement out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = (out.c[i] + b.c[i]) % p_;
    return out;
}

HeckeElement HeckeAlgebra::sub(const HeckeElement& a, const HeckeElement& b) const {
    HeckeElement out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = (out.c[i] + p_ - b.c[i]) % p_;
    return out;
}

HeckeElement HeckeAlgebra::scale(uint32_t s, const HeckeElement& a) const {
    HeckeElement out = a;
    for (auto& v : out.c) v = uint32_t(uint64_t(v) * s % p_);
    return out;
}

std::vector<int> longest_ladder(int lo, int hi) {
    std::vector<int> word;
    for (int top = hi; top >= lo; --top)
        for (int i = lo; i <= top; ++i) word.push_back(i);
    return word;
}

HeckeElement HeckeAlgebra::e_long(int lo, int hi) const {
    HeckeElement out = unit();
    for (int i : longest_ladder(lo, hi)) out = mul(out, e(i));
    return out;
}

HeckeElement HeckeAlgebra::ehat_long(int lo, int hi) const {
    HeckeElement out = unit();
    for (int i : longest_ladder(lo, hi)) out = mul(out, ehat(i));
    return out;
}

PresentationReport verify_presentation(int n, uint32_t p) {
    if (n > 6) throw chevalley::GuardError("presentation guard: n <= 6", uint64_t(n));
    AlgebraPtr A = HeckeAlgebra::create(n, p);
    PresentationReport rep;
    rep.idempotent = rep.braid = rep.distant = true;
    for (int i = 1; i <= n - 1; ++i) {
        HeckeElement ei = A->e(i);
        if (!(A->mul(ei, ei) == ei)) rep.idempotent = false;
    }
    for (int i = 1; i <= n - 2; ++i) {
        HeckeElement a = A->mul(A->mul(A->e(i), A->e(i + 1)), A->e(i));
        HeckeElement b = A->mul(A->mul(A->e(i + 1), A->e(i)), A->e(i + 1));
        if (!(a == b)) rep.braid = false;
    }
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 2; j <= n - 1; ++j) {
            HeckeElement a = A->mul(A->e(i), A->e(j));
            HeckeElement b = A->mul(A->e(j), A->e(i));
            if (!(a == b)) rep.distant = false;
        }
    size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= size_t(i);
    rep.dimension_ok = (A->dim() == fact);
    return rep;
}

namespace {

// Integral Hecke algebra element: map permutation index -> exact rational.
using ZElt = std::map<size_t, Rational>;

ZElt z_mul(const SymmetricGroup& W, const std::vector<std::vector<uint32_t>>& step,
           const std::vector<uint8_t>& len, uint32_t p, const ZElt& a, const ZElt& b) {
    ZElt out;
    for (const auto& [v, cv] : a)
        for (const auto& [w, cw] : b) {
            // expand T_v T_w over Z by the length recursion; branches this time
            std::map<size_t, Rational> acc{{w, cv * cw}};
            const std::vector<int> word = reduced_word(W.elements[v]);
            for (auto it = word.rbegin(); it != word.rend(); ++it) {
                std::map<size_t, Rational> next;
                for (const auto& [u, cu] : acc) {
                    size_t su = step[size_t(*it)][u];
                    if (len[su] > len[u]) {
                        next[su] += cu;
                    } else {
                        next[su] += Rational(p) * cu;
                        next[u] += Rational(int64_t(p) - 1) * cu;
                    }
                }
                acc = std::move(next);
            }
            for (const auto& [u, cu] : acc) out[u] += cu;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

bool verify_integral_lift(int n, uint32_t p) {
    SymmetricGroup W(n);
    std::vector<uint8_t> len(W.elements.size());
    for (size_t w = 0; w < W.elements.size(); ++w) len[w] = uint8_t(perm_length(W.elements[w]));
    std::vector<std::vector<uint32_t>> step(size_t(std::max(0, n - 1)),
                                            std::vector<uint32_t>(W.elements.size()));
    for (int i = 0; i + 1 < n; ++i) {
        Perm s = perm_transposition(n, i);
        for (size_t w = 0; w < W.elements.size(); ++w)
            step[size_t(i)][w] = uint32_t(W.index_of(perm_compose(s, W.elements[w])));
    }
    size_t id = W.index_of(perm_identity(n));
    auto T = [&](int i) {
        ZElt z;
        z[W.index_of(perm_transposition(n, i - 1))] = 1;
        return z;
    };
    auto E = [&](int i) { // e(i) = p - T_i over Z
        ZElt z = T(i);
        z[W.index_of(perm_transposition(n, i - 1))] = -1;
        z[id] += Rational(p);
        return z;
    };
    auto addz = [&](ZElt a, const ZElt& b, const Rational& s) {
        for (const auto& [w, c] : b) {
            a[w] += s * c;
            if (a[w] == 0) a.erase(w);
        }
        return a;
    };
    auto mulz = [&](const ZElt& a, const ZElt& b) { return z_mul(W, step, len, p, a, b); };

    for (int i = 1; i <= n - 1; ++i) {
        ZElt lhs = mulz(E(i), E(i));
        ZElt rhs = addz(ZElt{}, E(i), Rational(int64_t(p) + 1));
        if (!(lhs == rhs)) return false;
    }
    // the braid relation acquires a p-correction on the opposite letter:
    // e(i)e(i+1)e(i) + p e(i+1) = e(i+1)e(i)e(i+1) + p e(i)
    for (int i = 1; i <= n - 2; ++i) {
        ZElt lhs = addz(mulz(mulz(E(i), E(i + 1)), E(i)), E(i + 1), Rational(p));
        ZElt rhs = addz(mulz(mulz(E(i + 1), E(i)), E(i + 1)), E(i), Rational(p));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

HeckeElement longest_idempotent(const AlgebraPtr& A) {
    HeckeElement en = A->e_long(1, A->rank() - 1);
    if (en.is_zero()) throw std::logic_error("longest idempotent vanished");
    if (!(A->mul(en, en) == en)) throw std::logic_error("longest word is not idempotent");
    for (int i = 1; i <= A->rank() - 1; ++i) {
        if (!(A->mul(A->e(i), en) == en) || !(A->mul(en, A->e(i)) == en))
            throw std::logic_error("absorption fails for the longest word");
    }
    return en;
}

size_t absorption_solution_dimension(const AlgebraPtr& A) {
    size_t d = A->dim();
    uint32_t p = A->prime();
    size_t nrel = size_t(2 * (A->rank() - 1));
    FpMatrix sys(p, nrel * d, d);
    size_t block = 0;
    for (int i = 1; i <= A->rank() - 1; ++i) {
        HeckeElement ei = A->e(i);
        for (size_t w = 0; w < d; ++w) {
            HeckeElement bw = A->basis(w);
            HeckeElement l = A->sub(A->mul(ei, bw), bw);  // e(i)x - x
            HeckeElement r = A->sub(A->mul(bw, ei), bw);  // xe(i) - x
            for (size_t t = 0; t < d; ++t) {
                sys.set(block * d + t, w, l.c[t]);
                sys.set((block + 1) * d + t, w, r.c[t]);
            }
        }
        block += 2;
    }
    return rank_and_kernel(sys).kernel.cols();
}

HeckeElement involution(const HeckeElement& x) {
    const AlgebraPtr A = x.alg;
    // T_i -> -1 - T_i extended multiplicatively along reduced words
    HeckeElement out = A->zero();
    HeckeElement minus_unit = A->scale(A->prime() - 1, A->unit());
    for (size_t w = 0; w < x.c.size(); ++w) {
        if (!x.c[w]) continue;
        HeckeElement img = A->unit();
        for (int i : A->reduced(w))
            img = A->mul(img, A->sub(minus_unit, A->gen_T(i + 1)));
        out = A->add(out, A->scale(x.c[w], img));
    }
    return out;
}

HeckeElement block_embed(const HeckeElement& x, int offset, const AlgebraPtr& target) {
    int r = x.alg->rank();
    if (offset + r > target->rank()) throw std::invalid_argument("block embed out of range");
    HeckeElement out = target->zero();
    const SymmetricGroup& W = x.alg->weyl();
    int total = target->rank();
    for (size_t w = 0; w < x.c.size(); ++w) {
        if (!x.c[w]) continue;
        Perm big = perm_identity(total);
        for (int i = 0; i < r; ++i) big[size_t(i + offset)] = uint8_t(W.elements[w][size_t(i)] + offset);
        out.c[target->weyl().index_of(big)] = x.c[w];
    }
    return out;
}

bool ek_recursion_check(int k, int total, uint32_t p) {
    if (total < k + 1) throw std::invalid_argument("total rank too small");
    AlgebraPtr A = HeckeAlgebra::create(total, p);
    // e_k on letters 1..k-1, e_{k+1} on letters 1..k
    HeckeElement ek = A->e_long(1, k - 1);
    HeckeElement lhs = A->mul(A->mul(ek, A->e(k)), ek);
    if (!(lhs == A->e_long(1, k))) return false;
    // hatted mirror at the top: ehat_k on letters total-k+1..total-1
    HeckeElement hk = A->ehat_long(total - k + 1, total - 1);
    HeckeElement hlhs = A->mul(A->mul(hk, A->ehat(total - k)), hk);
    return hlhs == A->ehat_long(total - k, total - 1);
}

KeyIdentityReport key_identity(int n, int k, uint32_t p) {
    if (n < 1 || k < 1) throw std::invalid_argument("key identity needs n, k >= 1");
    int m = n + k;
    AlgebraPtr A = HeckeAlgebra::create(m, p);
    HeckeElement e_k = A->e_long(1, k - 1);
    HeckeElement eh_n = A->ehat_long(k + 1, m - 1);
    HeckeElement e_k1 = A->e_long(1, k);
    HeckeElement eh_n1 = A->ehat_long(k, m - 1);
    HeckeElement a = A->mul(A->mul(eh_n, e_k1), eh_n);
    HeckeElement b = A->mul(A->mul(e_k, eh_n1), e_k);
    HeckeElement c = A->mul(eh_n, e_k);
    KeyIdentityReport rep;
    rep.identity_holds = (A->add(a, b) == c);
    rep.orthogonal = A->mul(a, b).is_zero() && A->mul(b, a).is_zero();
    rep.both_idempotent = (A->mul(a, a) == a) && (A->mul(b, b) == b);
    return rep;
}

std::pair<HeckeElement, HeckeElement> ds_elements(int n, int k, uint32_t p) {
    int m = n + k;
    AlgebraPtr A = HeckeAlgebra::create(std::max(m, 1), p);
    if (k == 0) return {A->zero(), A->zero()};
    HeckeElement e_k = A->e_long(1, k - 1);
    HeckeElement eh_n1 = A->ehat_long(k, m - 1);
    return {A->mul(eh_n1, e_k), A->mul(e_k, eh_n1)};
}

FpMatrix corner_basis(const AlgebraPtr& A, const HeckeElement& C) {
    size_t d = A->dim();
    FpMatrix images(A->prime(), d, d);
    for (size_t w = 0; w < d; ++w) {
        HeckeElement v = A->mul(A->mul(C, A->basis(w)), C);
        for (size_t t = 0; t < d; ++t) images.set(t, w, v.c[t]);
    }
    std::vector<size_t> piv = pivot_columns(images);
    return images.columns(piv);
}

FpMatrix corner_left_mul(const AlgebraPtr& A, const HeckeElement& z, const FpMatrix& basis) {
    size_t d = A->dim();
    size_t r = basis.cols();
    FpMatrix images(A->prime(), d, r);
    for (size_t j = 0; j < r; ++j) {
        HeckeElement v = A->zero();
        for (size_t t = 0; t < d; ++t) v.c[t] = basis.at(t, j);
        HeckeElement zv = A->mul(z, v);
        for (size_t t = 0; t < d; ++t) images.set(t, j, zv.c[t]);
    }
    auto x = solve(basis, images);
    if (!x) throw std::logic_error("corner is not invariant under left multiplication");
    return *x;
}

bool corner_combination_invertible(int n, int k, uint32_t p, uint32_t lam, uint32_t mu) {
    int m = n + k;
    AlgebraPtr A = HeckeAlgebra::create(m, p);
    HeckeElement e_k = A->e_long(1, k - 1);
    HeckeElement eh_n = A->ehat_long(k + 1, m - 1);
    HeckeElement corner = A->mul(eh_n, e_k);
    HeckeElement a = A->mul(A->mul(eh_n, A->e_long(1, k)), eh_n);
    HeckeElement b = A->mul(A->mul(e_k, A->ehat_long(k, m - 1)), e_k);
    HeckeElement z = A->add(A->scale(lam, a), A->scale(mu, b));
    FpMatrix basis = corner_basis(A, corner);
    FpMatrix L = corner_left_mul(A, z, basis);
    return rank_of(L) == L.cols();
}

CosetModel::CosetModel(int n, uint32_t p)
    : n_(n), p_(p), cosets_(chevalley::enumerate_cosets(n, p)), W_(n) {
    size_t N = cosets_.size();
    for (int i = 1; i <= n - 1; ++i) {
        FpMatrix M(p, N, N);
        std::vector<chevalley::Mat> reps = chevalley::parabolic_coset_reps(i, n, p);
        for (size_t c = 0; c < N; ++c)
            for (const chevalley::Mat& gj : reps) {
                uint32_t t = cosets_.coset_of(chevalley::mat_mul(gj, cosets_.reps[c]));
                M.add_at(t, c, 1);
            }
        ehat_.push_back(std::move(M));
    }
    t_cache_.resize(W_.elements.size());
    t_ready_.assign(W_.elements.size(), 0);
}

FpMatrix CosetModel::t_matrix(size_t w) const {
    if (t_ready_[w]) return t_cache_[w];
    size_t N = cosets_.size();
    FpMatrix out = FpMatrix::identity(p_, N);
    FpMatrix id = FpMatrix::identity(p_, N);
    for (int i : reduced_word(W_.elements[w])) {
        // T_i = ehat(i) - 1
        FpMatrix Ti = ehat_[size_t(i)].add(id.scaled(p_ - 1));
        out = out.mul(Ti);
    }
    t_cache_[w] = out;
    t_ready_[w] = 1;
    return out;
}

FpMatrix CosetModel::rep(const HeckeElement& x) const {
    size_t N = cosets_.size();
    FpMatrix out(p_, N, N);
    for (size_t w = 0; w < x.c.size(); ++w) {
        if (!x.c[w]) continue;
        out = out.add(t_matrix(w).scaled(x.c[w]));
    }
    return out;
}

} // namespace hclab::hecke
