#include "hclab/contraction.hpp"

#include "hclab/chevalley.hpp"
#include "hclab/hecke.hpp"
#include "hclab/invariants.hpp"
#include "hclab/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace hclab::contraction {

using chevalley::GuardError;

Backend backend_from_string(const std::string& s) {
    if (s == "hecke-regular") return Backend::HeckeRegular;
    if (s == "invariants") return Backend::Invariants;
    throw std::invalid_argument("unknown backend: " + s);
}

std::string backend_to_string(Backend b) {
    return b == Backend::HeckeRegular ? "hecke-regular" : "invariants";
}

namespace {

// ---- small backend-generic matrix helpers -------------------------------

BitMatrix scaled_mat(const BitMatrix& a, uint32_t c, uint32_t) {
    return c % 2 ? a : BitMatrix(a.rows(), a.cols());
}
FpMatrix scaled_mat(const FpMatrix& a, uint32_t c, uint32_t) { return a.scaled(c); }

BitMatrix identity_mat(size_t n, uint32_t, const BitMatrix*) { return BitMatrix::identity(n); }
FpMatrix identity_mat(size_t n, uint32_t p, const FpMatrix*) { return FpMatrix::identity(p, n); }

std::vector<uint32_t> first_kernel_column(const BitMatrix& m) {
    BitRankKernel rk = rank_and_kernel(m);
    std::vector<uint32_t> v;
    if (rk.kernel.cols()) {
        v.resize(m.cols());
        for (size_t i = 0; i < m.cols(); ++i) v[i] = rk.kernel.get(i, 0);
    }
    return v;
}
std::vector<uint32_t> first_kernel_column(const FpMatrix& m) {
    RankKernel rk = rank_and_kernel(m);
    std::vector<uint32_t> v;
    if (rk.kernel.cols()) {
        v.resize(m.cols());
        for (size_t i = 0; i < m.cols(); ++i) v[i] = rk.kernel.at(i, 0);
    }
    return v;
}

// Per-degree slot data for the whole complex.
template <class M>
struct Built {
    std::vector<int> degree_labels;
    // [node][slot] dims; node j = (j, m-j)... node index j runs 0..m with (n,k) = (j, m-j)
    std::vector<std::vector<size_t>> dims;
    // [edge j][slot]: d: node j -> node j+1, s: node j+1 -> node j
    std::vector<std::vector<M>> dmap, smap;
};

// ---- hecke-regular backend ----------------------------------------------

// ehat(i) on the Borel coset basis as a column-target table (multiplicities).
struct SparseEhat {
    std::vector<std::vector<uint32_t>> targets; // per column
};

template <class M>
M left_apply_ehat(const SparseEhat& op, const M& x, uint32_t p);

template <>
BitMatrix left_apply_ehat(const SparseEhat& op, const BitMatrix& x, uint32_t) {
    BitMatrix y(x.rows(), x.cols());
    for (size_t g = 0; g < op.targets.size(); ++g) {
        const uint64_t* src = x.row(g);
        for (uint32_t t : op.targets[g]) {
            uint64_t* dst = y.row(t);
            for (size_t w = 0; w < x.words_per_row(); ++w) dst[w] ^= src[w];
        }
    }
    return y;
}

template <>
FpMatrix left_apply_ehat(const SparseEhat& op, const FpMatrix& x, uint32_t p) {
    FpMatrix y(p, x.rows(), x.cols());
    for (size_t g = 0; g < op.targets.size(); ++g)
        for (uint32_t t : op.targets[g]) {
            const uint32_t* src = x.row(g);
            uint32_t* dst = y.row(t);
            for (size_t c = 0; c < x.cols(); ++c) dst[c] = (dst[c] + src[c]) % p;
        }
    return y;
}

struct HeckeWordLetter {
    int i;
    bool hatted;
};

std::vector<HeckeWordLetter> hat_ladder(int lo, int hi, bool hatted) {
    std::vector<HeckeWordLetter> w;
    for (int i : hecke::longest_ladder(lo, hi)) w.push_back({i, hatted});
    return w;
}

template <class M>
M apply_word(const std::vector<SparseEhat>& ehat, const std::vector<HeckeWordLetter>& word,
             const M& x0, uint32_t p) {
    M x = x0;
    // rightmost letter acts first
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        M hx = left_apply_ehat(ehat[size_t(it->i) - 1], x, p);
        if (it->hatted) {
            x = std::move(hx);
        } else {
            // e(i) = 1 - ehat(i)
            x = x.add(scaled_mat(hx, p - 1, p));
        }
    }
    return x;
}

template <class M>
Built<M> build_hecke_regular(int m, uint32_t p) {
    chevalley::CosetSpace cs = chevalley::enumerate_cosets(m, p);
    size_t N = cs.size();
    std::vector<SparseEhat> ehat;
    for (int i = 1; i <= m - 1; ++i) {
        SparseEhat op;
        op.targets.resize(N);
        for (size_t c = 0; c < N; ++c)
            for (const chevalley::Mat& gj : chevalley::parabolic_coset_reps(i, m, p))
                op.targets[c].push_back(cs.coset_of(chevalley::mat_mul(gj, cs.reps[c])));
        ehat.push_back(std::move(op));
    }

    M ident = identity_mat(N, p, static_cast<const M*>(nullptr));
    Built<M> built;
    built.degree_labels = {0};
    built.dims.assign(size_t(m) + 1, {});
    std::vector<M> bases;
    for (int j = 0; j <= m; ++j) {
        int k = m - j; // node (n, k) = (j, m - j)
        std::vector<HeckeWordLetter> word = hat_ladder(k + 1, m - 1, true);
        for (auto l : hat_ladder(1, k - 1, false)) word.push_back(l);
        M corner = apply_word(ehat, word, ident, p);
        std::vector<size_t> piv = pivot_columns(corner);
        bases.push_back(corner.columns(piv));
        built.dims[size_t(j)].push_back(piv.size());
    }
    for (int j = 0; j + 1 <= m; ++j) {
        int k = m - j; // node j = (j, k), edge to (j+1, k-1)
        std::vector<HeckeWordLetter> dword = hat_ladder(k, m - 1, true);
        for (auto l : hat_ladder(1, k - 1, false)) dword.push_back(l);
        std::vector<HeckeWordLetter> sword = hat_ladder(1, k - 1, false);
        for (auto l : hat_ladder(k, m - 1, true)) sword.push_back(l);
        M dimg = apply_word(ehat, dword, bases[size_t(j)], p);
        auto dm = solve(bases[size_t(j) + 1], dimg);
        if (!dm) throw std::logic_error("differential image left the target corner");
        M simg = apply_word(ehat, sword, bases[size_t(j) + 1], p);
        auto sm = solve(bases[size_t(j)], simg);
        if (!sm) throw std::logic_error("homotopy image left the target corner");
        built.dmap.push_back({std::move(*dm)});
        built.smap.push_back({std::move(*sm)});
    }
    return built;
}

// ---- invariants backend ---------------------------------------------------

Built<BitMatrix> build_invariants(int m, uint32_t p, int D, unsigned jobs) {
    if (p != 2) throw std::invalid_argument("the invariants backend is p = 2 only");
    auto slices = std::make_shared<invariants::SliceModel>(m, std::max(D - 1, 0), jobs);
    Built<BitMatrix> built;
    for (int hd = 1; hd <= D; ++hd) built.degree_labels.push_back(hd);
    built.dims.assign(size_t(m) + 1, std::vector<size_t>(built.degree_labels.size(), 0));
    std::vector<std::vector<BitMatrix>> bases(size_t(m) + 1,
                                              std::vector<BitMatrix>(built.degree_labels.size()));
    for (int j = 0; j <= m; ++j) {
        int n = j, k = m - j;
        std::vector<invariants::SliceModel::Letter> word = invariants::corner_word(n, k);
        for (size_t slot = 0; slot < built.degree_labels.size(); ++slot) {
            int d = built.degree_labels[slot] - 1;
            if (slices->dim(d) == 0) {
                bases[size_t(j)][slot] = BitMatrix(0, 0);
                continue;
            }
            BitMatrix corner = slices->word_op(word, d);
            std::vector<size_t> piv = pivot_columns(corner);
            bases[size_t(j)][slot] = corner.columns(piv);
            built.dims[size_t(j)][slot] = piv.size();
        }
    }
    for (int j = 0; j + 1 <= m; ++j) {
        int k = m - j;
        std::vector<invariants::SliceModel::Letter> dword, sword;
        for (int i : hecke::longest_ladder(k, m - 1)) dword.push_back({i, true});
        for (int i : hecke::longest_ladder(1, k - 1)) dword.push_back({i, false});
        for (int i : hecke::longest_ladder(1, k - 1)) sword.push_back({i, false});
        for (int i : hecke::longest_ladder(k, m - 1)) sword.push_back({i, true});
        std::vector<BitMatrix> dms(built.degree_labels.size()), sms(built.degree_labels.size());
        for (size_t slot = 0; slot < built.degree_labels.size(); ++slot) {
            int d = built.degree_labels[slot] - 1;
            size_t sdim = built.dims[size_t(j)][slot];
            size_t tdim = built.dims[size_t(j) + 1][slot];
            if (slices->dim(d) == 0 || (sdim == 0 && tdim == 0)) {
                dms[slot] = BitMatrix(tdim, sdim);
                sms[slot] = BitMatrix(sdim, tdim);
                continue;
            }
            BitMatrix dop = slices->word_op(dword, d);
            BitMatrix sop = slices->word_op(sword, d);
            BitMatrix dimg = sdim ? dop.mul(bases[size_t(j)][slot]) : BitMatrix(slices->dim(d), 0);
            BitMatrix simg = tdim ? sop.mul(bases[size_t(j) + 1][slot]) : BitMatrix(slices->dim(d), 0);
            if (tdim == 0) {
                if (!dimg.is_zero()) throw std::logic_error("differential image missed empty target");
                dms[slot] = BitMatrix(0, sdim);
            } else {
                auto dm = solve(bases[size_t(j) + 1][slot], dimg);
                if (!dm) throw std::logic_error("differential image left the target corner");
                dms[slot] = std::move(*dm);
            }
            if (sdim == 0) {
                if (!simg.is_zero()) throw std::logic_error("homotopy image missed empty target");
                sms[slot] = BitMatrix(0, tdim);
            } else {
                auto sm = solve(bases[size_t(j)][slot], simg);
                if (!sm) throw std::logic_error("homotopy image left the target corner");
                sms[slot] = std::move(*sm);
            }
        }
        built.dmap.push_back(std::move(dms));
        built.smap.push_back(std::move(sms));
    }
    return built;
}

// ---- certification --------------------------------------------------------

template <class M>
Certificate certify_built(Built<M>& built, int m, uint32_t p, Backend backend, int D) {
    Certificate cert;
    cert.m = m;
    cert.p = p;
    cert.backend = backend;
    cert.D = D;
    size_t slots = built.degree_labels.size();

    cert.d_squared_zero = true;
    cert.s_squared_zero = true;
    for (int j = 0; j + 2 <= m; ++j)
        for (size_t slot = 0; slot < slots; ++slot) {
            if (!built.dmap[size_t(j) + 1][slot].mul(built.dmap[size_t(j)][slot]).is_zero())
                cert.d_squared_zero = false;
            if (!built.smap[size_t(j)][slot].mul(built.smap[size_t(j) + 1][slot]).is_zero())
                cert.s_squared_zero = false;
        }

    cert.exact = true;
    cert.all_homotopy_invertible = true;
    for (int j = 0; j <= m; ++j) {
        NodeReport node;
        node.n = j;
        node.k = m - j;
        for (size_t slot = 0; slot < slots; ++slot) {
            DegreeReport dr;
            dr.d = built.degree_labels[slot];
            dr.dim = built.dims[size_t(j)][slot];
            dr.rank_in = (j >= 1) ? rank_of(built.dmap[size_t(j) - 1][slot]) : 0;
            dr.rank_out = (j + 1 <= m) ? rank_of(built.dmap[size_t(j)][slot]) : 0;
            if (dr.rank_in + dr.rank_out != dr.dim) cert.exact = false;
            // homotopy sweep over nonzero scalar pairs
            for (uint32_t lam = 1; lam < p; ++lam)
                for (uint32_t mu = 1; mu < p; ++mu) {
                    HomotopyVerdict v;
                    v.lam = lam;
                    v.mu = mu;
                    M op = identity_mat(dr.dim, p, static_cast<const M*>(nullptr));
                    bool have = false;
                    if (j >= 1) {
                        M a = built.dmap[size_t(j) - 1][slot].mul(built.smap[size_t(j) - 1][slot]);
                        op = scaled_mat(a, lam, p);
                        have = true;
                    }
                    if (j + 1 <= m) {
                        M b = built.smap[size_t(j)][slot].mul(built.dmap[size_t(j)][slot]);
                        M bs = scaled_mat(b, mu, p);
                        op = have ? op.add(bs) : std::move(bs);
                        have = true;
                    }
                    if (!have) op = identity_mat(dr.dim, p, static_cast<const M*>(nullptr));
                    v.invertible = (rank_of(op) == dr.dim);
                    if (!v.invertible) {
                        v.kernel_vector = first_kernel_column(op);
                        cert.all_homotopy_invertible = false;
                    }
                    dr.homotopy.push_back(std::move(v));
                }
            node.degrees.push_back(std::move(dr));
        }
        cert.nodes.push_back(std::move(node));
    }
    return cert;
}

} // namespace

Certificate certify(int m, uint32_t p, Backend backend, int D, unsigned jobs) {
    if (m < 0) throw std::invalid_argument("total must be nonnegative");
    if (m == 0) {
        // the complex is the ground class alone; exact relative to its augmentation
        Certificate cert;
        cert.m = 0;
        cert.p = p;
        cert.backend = backend;
        cert.D = (backend == Backend::Invariants) ? D : 0;
        NodeReport node;
        node.n = 0;
        node.k = 0;
        DegreeReport dr;
        dr.d = (backend == Backend::Invariants) ? 1 : 0;
        dr.dim = 1;
        dr.rank_in = 0;
        dr.rank_out = 1; // the augmentation is an isomorphism
        for (uint32_t lam = 1; lam < p; ++lam)
            for (uint32_t mu = 1; mu < p; ++mu) dr.homotopy.push_back({lam, mu, true, {}});
        node.degrees.push_back(dr);
        cert.nodes.push_back(node);
        cert.d_squared_zero = cert.s_squared_zero = true;
        cert.exact = true;
        cert.all_homotopy_invertible = true;
        return cert;
    }
    if (backend == Backend::HeckeRegular) {
        if (m > kHeckeRegularTotalGuard)
            throw GuardError("hecke-regular total guard", uint64_t(m));
        if (p == 2) {
            Built<BitMatrix> b = build_hecke_regular<BitMatrix>(m, p);
            return certify_built(b, m, p, backend, 0);
        }
        Built<FpMatrix> b = build_hecke_regular<FpMatrix>(m, p);
        return certify_built(b, m, p, backend, 0);
    }
    if (m > kInvariantsTotalGuard) throw GuardError("invariants total guard", uint64_t(m));
    if (D > kDegreeGuard) throw GuardError("degree guard", uint64_t(D));
    Built<BitMatrix> b = build_invariants(m, p, D, jobs);
    return certify_built(b, m, p, backend, D);
}

std::vector<std::vector<size_t>> node_dimensions(const Certificate& c) {
    std::vector<std::vector<size_t>> out;
    for (const auto& node : c.nodes) {
        std::vector<size_t> dims;
        for (const auto& dr : node.degrees) dims.push_back(dr.dim);
        out.push_back(dims);
    }
    return out;
}

} // namespace hclab::contraction
