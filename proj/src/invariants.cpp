#include "hclab/invariants.hpp"

#include "hclab/parallel.hpp"
#include "hclab/permutation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hclab::invariants {

using chevalley::GuardError;
using chevalley::Mat;
using chevalley::SubgroupTag;

PolyContext::PolyContext(int nvars, int max_degree) : nvars_(nvars), maxd_(max_degree) {
    mons_.resize(size_t(maxd_) + 1);
    index_.resize(size_t(maxd_) + 1);
    shift_.resize(size_t(maxd_) + 1);
    for (int d = 0; d <= maxd_; ++d) {
        // lex-descending exponent vectors of total degree d
        std::vector<uint16_t> e(size_t(nvars_), 0);
        std::function<void(int, int)> gen = [&](int pos, int rem) {
            if (pos == nvars_ - 1) {
                e[size_t(pos)] = uint16_t(rem);
                mons_[size_t(d)].push_back(e);
                return;
            }
            for (int a = rem; a >= 0; --a) {
                e[size_t(pos)] = uint16_t(a);
                gen(pos + 1, rem - a);
            }
        };
        if (nvars_ == 0) {
            if (d == 0) mons_[0].push_back({});
        } else {
            gen(0, d);
        }
        if (mons_[size_t(d)].size() > kMonomialGuard)
            throw GuardError("monomial slice exceeds guard", mons_[size_t(d)].size());
        for (size_t i = 0; i < mons_[size_t(d)].size(); ++i) index_[size_t(d)][mons_[size_t(d)][i]] = i;
    }
    for (int d = 0; d < maxd_; ++d) {
        shift_[size_t(d)].resize(mons_[size_t(d)].size() * size_t(nvars_));
        for (size_t i = 0; i < mons_[size_t(d)].size(); ++i)
            for (int j = 0; j < nvars_; ++j) {
                std::vector<uint16_t> e = mons_[size_t(d)][i];
                e[size_t(j)] = uint16_t(e[size_t(j)] + 1);
                shift_[size_t(d)][i * size_t(nvars_) + size_t(j)] = index_[size_t(d) + 1].at(e);
            }
    }
}

size_t PolyContext::index(int d, const std::vector<uint16_t>& e) const {
    return index_[size_t(d)].at(e);
}

std::string PolyContext::monomial_label(int d, size_t i) const {
    const auto& e = mons_[size_t(d)][i];
    if (d == 0) return "1";
    std::string s;
    for (int j = 0; j < nvars_; ++j) {
        if (!e[size_t(j)]) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(j + 1);
        if (e[size_t(j)] > 1) s += "^" + std::to_string(int(e[size_t(j)]));
    }
    return s;
}

ActionSlices::ActionSlices(std::shared_ptr<const PolyContext> ctx, Mat g)
    : ctx_(std::move(ctx)), g_(std::move(g)) {}

const BitMatrix& ActionSlices::at(int d) {
    while (int(levels_.size()) <= d) {
        int cur = int(levels_.size());
        size_t cnt = ctx_->count(cur);
        BitMatrix m(cnt, cnt);
        if (cur == 0) {
            m.set(0, 0, true);
        } else {
            const BitMatrix& prev = levels_[size_t(cur) - 1];
            int nv = ctx_->nvars();
            for (size_t mi = 0; mi < cnt; ++mi) {
                // pick the first variable with positive exponent
                const auto& e = ctx_->monomial(cur, mi);
                int var = 0;
                while (!e[size_t(var)]) ++var;
                std::vector<uint16_t> pe = e;
                pe[size_t(var)] = uint16_t(pe[size_t(var)] - 1);
                size_t pi = ctx_->index(cur - 1, pe);
                // image(mon) = image(parent) * image(x_var); the image of a
                // variable is the linear form given by the matrix column
                const uint64_t* prow = prev.row(pi);
                uint64_t* row = m.row(mi);
                for (size_t w = 0; w < prev.words_per_row(); ++w) {
                    uint64_t bits = prow[w];
                    while (bits) {
                        size_t t = w * 64 + size_t(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        for (int i = 0; i < nv; ++i)
                            if (g_.at(i, var))
                                row[ctx_->shift(cur - 1, t, i) / 64] ^=
                                    uint64_t(1) << (ctx_->shift(cur - 1, t, i) % 64);
                    }
                }
            }
        }
        levels_.push_back(std::move(m));
    }
    return levels_[size_t(d)];
}

std::vector<uint64_t> euler_class_vector(const PolyContext& ctx) {
    int n = ctx.nvars();
    if (n > kEulerRankGuard) throw GuardError("euler class guard", uint64_t(n));
    int dc = (1 << n) - 1;
    if (ctx.max_degree() < dc) throw std::invalid_argument("context degree below euler class");
    // fold the product of all nonzero linear forms, degree by degree
    std::vector<uint64_t> cur((ctx.count(0) + 63) / 64, 0);
    cur[0] = 1; // the constant 1
    int d = 0;
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        std::vector<uint64_t> next((ctx.count(d + 1) + 63) / 64, 0);
        for (size_t w = 0; w < cur.size(); ++w) {
            uint64_t bits = cur[w];
            while (bits) {
                size_t mi = w * 64 + size_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                for (int j = 0; j < n; ++j)
                    if (mask & (1u << j)) {
                        size_t t = ctx.shift(d, mi, j);
                        next[t / 64] ^= uint64_t(1) << (t % 64);
                    }
            }
        }
        cur = std::move(next);
        ++d;
    }
    return cur;
}

std::string euler_class_string(int n) {
    PolyContext ctx(n, (1 << n) - 1);
    std::vector<uint64_t> c = euler_class_vector(ctx);
    int dc = (1 << n) - 1;
    std::string s;
    for (size_t i = 0; i < ctx.count(dc); ++i)
        if ((c[i / 64] >> (i % 64)) & 1) {
            if (!s.empty()) s += " + ";
            s += ctx.monomial_label(dc, i);
        }
    return s.empty() ? "0" : s;
}

std::vector<Mat> subgroup_generators(SubgroupTag tag, int parabolic_i, int n) {
    const uint32_t p = 2;
    std::vector<Mat> gens;
    auto unipotent = [&]() {
        for (int i = 0; i + 1 < n; ++i) gens.push_back(chevalley::transvection(n, p, i, i + 1, 1));
    };
    switch (tag) {
        case SubgroupTag::Trivial: break;
        case SubgroupTag::Borel:
        case SubgroupTag::Unipotent: unipotent(); break;
        case SubgroupTag::Parabolic:
            if (parabolic_i < 1 || parabolic_i > n - 1)
                throw std::invalid_argument("parabolic index out of range");
            unipotent();
            gens.push_back(chevalley::perm_matrix(perm_transposition(n, parabolic_i - 1), p));
            break;
        case SubgroupTag::Full:
            for (int i = 0; i + 1 < n; ++i) {
                gens.push_back(chevalley::transvection(n, p, i, i + 1, 1));
                gens.push_back(chevalley::transvection(n, p, i + 1, i, 1));
            }
            break;
        case SubgroupTag::Weyl:
            for (int i = 0; i + 1 < n; ++i)
                gens.push_back(chevalley::perm_matrix(perm_transposition(n, i), p));
            break;
        case SubgroupTag::ElementaryAbelian:
            throw std::invalid_argument("E_n does not act on its own cohomology this way");
    }
    return gens;
}

namespace {

// Basis (columns, monomial coordinates) of the joint fixed space of the
// generators on the degree-d slice.
BitMatrix invariant_slice_basis(const PolyContext& ctx,
                                std::vector<std::unique_ptr<ActionSlices>>& acts, int d) {
    size_t cnt = ctx.count(d);
    BitMatrix basis = BitMatrix::identity(cnt);
    for (auto& act : acts) {
        const BitMatrix& A = act->at(d);
        size_t dim = basis.cols();
        if (dim == 0) break;
        // W columns: image(b_j) - b_j in monomial coordinates
        BitMatrix W(cnt, dim);
        for (size_t j = 0; j < dim; ++j) {
            std::vector<uint64_t> img((cnt + 63) / 64, 0);
            for (size_t r = 0; r < cnt; ++r)
                if (basis.get(r, j))
                    for (size_t w = 0; w < A.words_per_row(); ++w) img[w] ^= A.row(r)[w];
            for (size_t r = 0; r < cnt; ++r) {
                bool v = ((img[r / 64] >> (r % 64)) & 1) ^ basis.get(r, j);
                if (v) W.set(r, j, true);
            }
        }
        BitRankKernel rk = rank_and_kernel(W);
        basis = basis.mul(rk.kernel);
    }
    return basis;
}

} // namespace

HilbertSeries invariant_dims(SubgroupTag tag, int parabolic_i, int n, int max_degree) {
    auto ctx = std::make_shared<const PolyContext>(n, max_degree);
    std::vector<Mat> gens = subgroup_generators(tag, parabolic_i, n);
    std::vector<std::unique_ptr<ActionSlices>> acts;
    for (const Mat& g : gens) acts.push_back(std::make_unique<ActionSlices>(ctx, g));
    HilbertSeries h;
    h.bound = max_degree;
    for (int d = 0; d <= max_degree; ++d)
        h.set(d, invariant_slice_basis(*ctx, acts, d).cols());
    return h;
}

SliceModel::SliceModel(int nvars, int max_poly_degree, unsigned jobs)
    : nvars_(nvars), maxd_(max_poly_degree), jobs_(jobs) {
    ctx_ = std::make_shared<const PolyContext>(nvars, std::max(max_poly_degree, (1 << nvars) - 1));
    euler_ = euler_class_vector(*ctx_);
    int dc = (1 << nvars_) - 1;

    // Borel-invariant basis per degree, multiplied through by the euler class
    std::vector<Mat> gens = subgroup_generators(SubgroupTag::Borel, 0, nvars_);
    std::vector<std::unique_ptr<ActionSlices>> acts;
    for (const Mat& g : gens) acts.push_back(std::make_unique<ActionSlices>(ctx_, g));
    basis_.resize(size_t(maxd_) + 1);
    std::vector<BitMatrix> inv(size_t(maxd_) + 1);
    for (int d = 0; d <= maxd_; ++d)
        if (d >= dc) inv[size_t(d)] = invariant_slice_basis(*ctx_, acts, d - dc);
    parallel_for(jobs_, size_t(maxd_) + 1, [&](size_t dd) {
        int d = int(dd);
        size_t cnt = ctx_->count(d);
        if (d < dc) {
            basis_[dd] = BitMatrix(cnt, 0);
            return;
        }
        const BitMatrix& ib = inv[dd];
        BitMatrix out(cnt, ib.cols());
        // multiply every invariant basis vector by the euler class
        for (size_t j = 0; j < ib.cols(); ++j)
            for (size_t mi = 0; mi < ctx_->count(d - dc); ++mi) {
                if (!ib.get(mi, j)) continue;
                for (size_t ew = 0; ew < euler_.size(); ++ew) {
                    uint64_t bits = euler_[ew];
                    while (bits) {
                        size_t ei = ew * 64 + size_t(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        // monomial product: exponent sum
                        std::vector<uint16_t> e = ctx_->monomial(d - dc, mi);
                        const auto& e2 = ctx_->monomial(dc, ei);
                        for (int v = 0; v < nvars_; ++v) e[size_t(v)] = uint16_t(e[size_t(v)] + e2[size_t(v)]);
                        out.flip(ctx_->index(d, e), j);
                    }
                }
            }
        basis_[dd] = std::move(out);
    });

    transfer_actions_.resize(size_t(std::max(nvars_ - 1, 0)));
    for (int par = 1; par <= nvars_ - 1; ++par) {
        auto reps = chevalley::parabolic_left_coset_reps(par, nvars_, 2);
        for (const Mat& r : reps)
            transfer_actions_[size_t(par) - 1].push_back(std::make_unique<ActionSlices>(ctx_, r));
    }
}

size_t SliceModel::dim(int d) const {
    if (d < 0 || d > maxd_) return 0;
    return basis_[size_t(d)].cols();
}

const BitMatrix& SliceModel::ehat_op(int letter, int d) {
    auto key = std::make_pair(letter, d);
    auto it = ehat_cache_.find(key);
    if (it != ehat_cache_.end()) return it->second;
    if (letter < 1 || letter > nvars_ - 1) throw std::invalid_argument("letter out of range");
    int par = nvars_ - letter; // reversed letter-to-parabolic assignment
    size_t cnt = ctx_->count(d);
    const BitMatrix& B = basis_[size_t(d)];
    size_t dim = B.cols();
    BitMatrix images(cnt, dim);
    for (auto& act : transfer_actions_[size_t(par) - 1]) {
        const BitMatrix& A = act->at(d);
        for (size_t j = 0; j < dim; ++j) {
            std::vector<uint64_t> img((cnt + 63) / 64, 0);
            for (size_t r = 0; r < cnt; ++r)
                if (B.get(r, j))
                    for (size_t w = 0; w < A.words_per_row(); ++w) img[w] ^= A.row(r)[w];
            for (size_t r = 0; r < cnt; ++r)
                if ((img[r / 64] >> (r % 64)) & 1) images.flip(r, j);
        }
    }
    auto coords = solve(B, images);
    if (!coords) throw std::logic_error("transfer image left the invariant slice");
    return ehat_cache_.emplace(key, std::move(*coords)).first->second;
}

BitMatrix SliceModel::e_op(int letter, int d) {
    BitMatrix e = ehat_op(letter, d);
    return e.add(BitMatrix::identity(e.rows())); // 1 - ehat at p = 2
}

const BitMatrix& SliceModel::steenrod_op(int k, int d) {
    auto key = std::make_pair(k, d);
    auto it = sq_cache_.find(key);
    if (it != sq_cache_.end()) return it->second;
    if (d + k > maxd_) throw std::invalid_argument("steenrod target degree out of range");
    const BitMatrix& B = basis_[size_t(d)];
    size_t cnt_t = ctx_->count(d + k);
    BitMatrix images(cnt_t, B.cols());
    // Sq^k on a monomial: distribute k among the variables, each share a
    // bitwise submask of the exponent (Lucas)
    for (size_t j = 0; j < B.cols(); ++j) {
        for (size_t mi = 0; mi < ctx_->count(d); ++mi) {
            if (!B.get(mi, j)) continue;
            const auto& e = ctx_->monomial(d, mi);
            std::vector<uint16_t> out(e.begin(), e.end());
            std::function<void(int, int)> distribute = [&](int var, int rem) {
                if (var == nvars_) {
                    if (rem == 0) images.flip(ctx_->index(d + k, out), j);
                    return;
                }
                int cap = std::min<int>(rem, e[size_t(var)]);
                for (int s = 0; s <= cap; ++s) {
                    if ((s & ~int(e[size_t(var)])) == 0) {
                        out[size_t(var)] = uint16_t(e[size_t(var)] + s);
                        distribute(var + 1, rem - s);
                        out[size_t(var)] = e[size_t(var)];
                    }
                }
            };
            distribute(0, k);
        }
    }
    auto coords = solve(basis_[size_t(d) + size_t(k)], images);
    if (!coords) throw std::logic_error("steenrod image left the invariant slice");
    return sq_cache_.emplace(key, std::move(*coords)).first->second;
}

BitMatrix SliceModel::word_op(const std::vector<Letter>& word, int d) {
    BitMatrix out = BitMatrix::identity(dim(d));
    for (const Letter& l : word) {
        BitMatrix op = l.hatted ? ehat_op(l.i, d) : e_op(l.i, d);
        out = out.mul(op);
    }
    return out;
}

std::vector<SliceModel::Letter> corner_word(int n, int k) {
    // ehat_n on letters k+1..k+n-1, e_k on letters 1..k-1 (commuting blocks)
    int m = n + k;
    std::vector<SliceModel::Letter> word;
    for (int top = m - 1; top >= k + 1; --top)
        for (int i = k + 1; i <= top; ++i) word.push_back({i, true});
    for (int top = k - 1; top >= 1; --top)
        for (int i = 1; i <= top; ++i) word.push_back({i, false});
    return word;
}

ModuleModel module_model(std::shared_ptr<SliceModel> slices, int n, int k, int D) {
    ModuleModel mm;
    mm.n = n;
    mm.k = k;
    mm.D = D;
    mm.slices = std::move(slices);
    std::vector<SliceModel::Letter> word = corner_word(n, k);
    for (int hd = 1; hd <= D; ++hd) {
        int d = hd - 1;
        if (d > mm.slices->max_poly_degree()) break;
        if (mm.slices->dim(d) == 0) continue;
        BitMatrix op = mm.slices->word_op(word, d);
        std::vector<size_t> piv = pivot_columns(op);
        if (!piv.empty()) mm.basis[hd] = op.columns(piv);
    }
    return mm;
}

ModuleModel module_model(int n, int k, int D, unsigned jobs) {
    if (n + k > kModelRankGuard) throw GuardError("model rank guard", uint64_t(n + k));
    if (D > kModelDegreeGuard) throw GuardError("model degree guard", uint64_t(D));
    auto slices = std::make_shared<SliceModel>(n + k, std::max(D - 1, 0), jobs);
    return module_model(std::move(slices), n, k, D);
}

size_t ModuleModel::dim(int hd) const {
    auto it = basis.find(hd);
    return it == basis.end() ? 0 : it->second.cols();
}

HilbertSeries ModuleModel::hilbert() const {
    HilbertSeries h;
    h.bound = D;
    for (const auto& [hd, b] : basis) h.set(hd, b.cols());
    return h;
}

GradedSpace ModuleModel::graded_space() const {
    GradedSpace gs;
    gs.d_min = 1;
    gs.d_max = D;
    for (const auto& [hd, b] : basis) {
        std::vector<std::string> labels;
        for (size_t j = 0; j < b.cols(); ++j)
            labels.push_back("e" + std::to_string(hd) + "_" + std::to_string(j));
        gs.labels[hd] = std::move(labels);
    }
    return gs;
}

BitMatrix ModuleModel::steenrod(int k_, int hd) const {
    const BitMatrix& src = basis.at(hd);
    size_t tdim = dim(hd + k_);
    if (tdim == 0) {
        // the image must vanish; certify by computing it
        BitMatrix sq = slices->steenrod_op(k_, hd - 1);
        BitMatrix img = sq.mul(src);
        if (!img.is_zero()) throw std::logic_error("steenrod image missed the empty target");
        return BitMatrix(0, src.cols());
    }
    BitMatrix sq = slices->steenrod_op(k_, hd - 1);
    BitMatrix img = sq.mul(src);
    auto coords = solve(basis.at(hd + k_), img);
    if (!coords) throw std::logic_error("steenrod image left the model");
    return *coords;
}

size_t truncated_hom(const ModuleModel& hsrc, const ModuleModel& hdst, int D) {
    // The summand labels are homological while the models are their duals, so
    // a module map hsrc -> hdst is a cohomological family dst-model ->
    // src-model; swap once here and work cohomologically below.
    const ModuleModel& src = hdst;
    const ModuleModel& dst = hsrc;
    // Families are assembled over the full build range of the models and
    // constrained there; the reported dimension is the rank of their
    // restriction to degrees <= D, so unconstrained families clinging to the
    // top of the range project away.
    int Dbuild = std::min(src.D, dst.D);
    if (D > Dbuild) throw std::invalid_argument("models were not built up to the requested degree");
    // unknowns: phi_hd of shape dst.dim(hd) x src.dim(hd)
    std::map<int, size_t> offset;
    size_t nunk = 0;
    for (int hd = 1; hd <= Dbuild; ++hd) {
        size_t s = src.dim(hd), t = dst.dim(hd);
        offset[hd] = nunk;
        nunk += s * t;
    }
    // constraints: Sq^k_dst . phi_hd = phi_{hd+k} . Sq^k_src
    std::vector<std::vector<uint64_t>> rows;
    size_t words = (nunk + 63) / 64;
    for (int hd = 1; hd <= Dbuild; ++hd) {
        size_t sdim = src.dim(hd);
        if (!sdim) continue;
        for (int k = 1; hd + k <= Dbuild; ++k) {
            size_t t2 = dst.dim(hd + k);
            size_t s2 = src.dim(hd + k);
            size_t t1 = dst.dim(hd);
            if (t2 == 0 && (t1 == 0 || s2 == 0)) continue;
            BitMatrix sq_src = src.steenrod(k, hd);                      // s2 x sdim
            BitMatrix sq_dst = t1 ? dst.steenrod(k, hd) : BitMatrix(0, 0); // t2 x t1
            for (size_t r = 0; r < t2; ++r)
                for (size_t c = 0; c < sdim; ++c) {
                    std::vector<uint64_t> row(words, 0);
                    bool nz = false;
                    // (Sq_dst . phi_hd)[r][c] = sum_l Sq_dst[r][l] phi_hd[l][c]
                    for (size_t l = 0; l < t1; ++l)
                        if (sq_dst.get(r, l)) {
                            size_t u = offset[hd] + l * sdim + c;
                            row[u / 64] ^= uint64_t(1) << (u % 64);
                            nz = true;
                        }
                    // (phi_{hd+k} . Sq_src)[r][c] = sum_l phi_{hd+k}[r][l] Sq_src[l][c]
                    for (size_t l = 0; l < s2; ++l)
                        if (sq_src.get(l, c)) {
                            size_t u = offset[hd + k] + r * s2 + l;
                            row[u / 64] ^= uint64_t(1) << (u % 64);
                            nz = true;
                        }
                    if (nz) rows.push_back(std::move(row));
                }
        }
    }
    BitMatrix sys(rows.size(), nunk);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t w = 0; w < words; ++w) sys.row(r)[w] = rows[r][w];
    BitMatrix kernel = rank_and_kernel(sys).kernel;
    // restriction to degrees <= D
    size_t low = 0;
    for (int hd = 1; hd <= D; ++hd) low += src.dim(hd) * dst.dim(hd);
    BitMatrix proj(low, kernel.cols());
    for (size_t r = 0; r < low; ++r)
        for (size_t c = 0; c < kernel.cols(); ++c)
            if (kernel.get(r, c)) proj.set(r, c, true);
    return rank_of(proj);
}

size_t hecke_operator_rank(int n, int max_poly_degree) {
    SliceModel slices(n, max_poly_degree);
    SymmetricGroup W(n);
    // flatten each T_w operator across all degrees
    size_t total = 0;
    for (int d = 0; d <= max_poly_degree; ++d) total += slices.dim(d) * slices.dim(d);
    BitMatrix flat(W.elements.size(), total);
    for (size_t w = 0; w < W.elements.size(); ++w) {
        size_t off = 0;
        for (int d = 0; d <= max_poly_degree; ++d) {
            size_t dim = slices.dim(d);
            if (!dim) continue;
            BitMatrix op = BitMatrix::identity(dim);
            for (int i : reduced_word(W.elements[w])) {
                // T_i = ehat(i) - 1 = ehat(i) + 1 at p = 2
                BitMatrix Ti = slices.ehat_op(i + 1, d).add(BitMatrix::identity(dim));
                op = op.mul(Ti);
            }
            for (size_t r = 0; r < dim; ++r)
                for (size_t c = 0; c < dim; ++c)
                    if (op.get(r, c)) flat.set(w, off + r * dim + c, true);
            off += dim * dim;
        }
    }
    return rank_of(flat);
}

} // namespace hclab::invariants
