#include "hclab/groupring.hpp"

#include "hclab/hecke.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hclab::groupring {

using chevalley::Mat;
using chevalley::SubgroupTag;

std::shared_ptr<const GLGroup> shared_group(int n, uint32_t p) {
    return std::make_shared<const GLGroup>(chevalley::build_group(n, p));
}

QElt q_zero(std::shared_ptr<const GLGroup> G) {
    QElt x;
    x.c.assign(G->elems.size(), Rational(0));
    x.G = std::move(G);
    return x;
}

QElt q_delta(std::shared_ptr<const GLGroup> G, uint32_t g, const Rational& c) {
    QElt x = q_zero(std::move(G));
    x.c[g] = c;
    return x;
}

static void require_same_group(const GLGroup* a, const GLGroup* b) {
    if (a->n != b->n || a->p != b->p)
        throw std::invalid_argument("group ring operands live in different groups");
}

QElt q_mul(const QElt& a, const QElt& b) {
    require_same_group(a.G.get(), b.G.get());
    QElt out = q_zero(a.G);
    for (uint32_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (uint32_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            out.c[a.G->mul(i, j)] += a.c[i] * b.c[j];
        }
    }
    return out;
}

QElt q_add(const QElt& a, const QElt& b) {
    require_same_group(a.G.get(), b.G.get());
    QElt out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
    return out;
}

QElt q_scale(const Rational& s, const QElt& a) {
    QElt out = a;
    for (auto& v : out.c) v *= s;
    return out;
}

FpElt fp_reduce(const QElt& a) {
    FpElt out;
    out.G = a.G;
    out.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i)
        out.c[i] = (a.c[i] == 0) ? 0 : reduce_mod_p(a.c[i], a.G->p);
    return out;
}

FpElt fp_mul(const FpElt& a, const FpElt& b) {
    require_same_group(a.G.get(), b.G.get());
    FpElt out;
    out.G = a.G;
    out.c.assign(a.c.size(), 0);
    uint32_t p = a.G->p;
    for (uint32_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (uint32_t j = 0; j < b.c.size(); ++j) {
            if (!b.c[j]) continue;
            uint32_t t = a.G->mul(i, j);
            out.c[t] = uint32_t((out.c[t] + uint64_t(a.c[i]) * b.c[j]) % p);
        }
    }
    return out;
}

FpElt fp_add(const FpElt& a, const FpElt& b) {
    require_same_group(a.G.get(), b.G.get());
    FpElt out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = (out.c[i] + b.c[i]) % a.G->p;
    return out;
}

QElt steinberg(int n, uint32_t p) {
    auto G = shared_group(n, p);
    std::vector<uint32_t> borel = G->subgroup_elems(SubgroupTag::Borel);
    uint64_t uni = chevalley::subgroup_order_formula({SubgroupTag::Unipotent, 0, n, p});
    uint64_t index = G->elems.size() / uni; // [GL_n : U_n]
    QElt out = q_zero(G);
    SymmetricGroup W(n);
    Rational scale(1, BigInt(index));
    for (const Perm& w : W.elements) {
        uint32_t wi = G->lookup(chevalley::perm_matrix(w, p));
        Rational sign = (perm_length(w) % 2 == 0) ? scale : -scale;
        for (uint32_t b : borel) out.c[G->mul(wi, b)] += sign;
    }
    return out;
}

bool steinberg_idempotent(const QElt& e) { return q_mul(e, e) == e; }

bool steinberg_p_local(const QElt& e, uint32_t p) {
    for (const Rational& v : e.c)
        if (!(v == 0) && !p_local_check(v, p)) return false;
    return true;
}

bool steinberg_chain(int k, uint32_t p) {
    auto Gbig = shared_group(k + 1, p);
    QElt ek1 = steinberg(k + 1, p);
    // embed e^St_k through GL_k x GL_1 < GL_{k+1}
    QElt small = steinberg(k, p);
    QElt ek = q_zero(Gbig);
    for (uint32_t i = 0; i < small.c.size(); ++i) {
        if (small.c[i] == 0) continue;
        Mat big = chevalley::mat_block_embed(small.G->elems[i], k + 1);
        ek.c[Gbig->lookup(big)] += small.c[i];
    }
    return q_mul(ek, ek1) == ek1 && q_mul(ek1, ek) == ek1;
}

CoinvariantSpace coinvariants(std::shared_ptr<const GLGroup> G, const std::vector<uint32_t>& H) {
    CoinvariantSpace cs;
    cs.G = G;
    cs.subgroup = H;
    size_t N = G->elems.size();
    std::vector<uint32_t> min_elem(N, UINT32_MAX);
    for (uint32_t g = 0; g < N; ++g) {
        if (min_elem[g] != UINT32_MAX) continue;
        // orbit Hg
        uint32_t mn = UINT32_MAX;
        std::vector<uint32_t> orbit;
        orbit.reserve(H.size());
        for (uint32_t h : H) {
            uint32_t x = G->mul(h, g);
            orbit.push_back(x);
            mn = std::min(mn, x);
        }
        for (uint32_t x : orbit) min_elem[x] = mn;
    }
    std::map<uint32_t, uint32_t> rep_index;
    for (uint32_t g = 0; g < N; ++g) rep_index[min_elem[g]] = 0;
    uint32_t idx = 0;
    for (auto& [rep, ri] : rep_index) {
        ri = idx++;
        cs.reps.push_back(rep);
    }
    cs.coset_label.resize(N);
    for (uint32_t g = 0; g < N; ++g) cs.coset_label[g] = rep_index[min_elem[g]];
    return cs;
}

TransferPair coinvariants_and_transfer(std::shared_ptr<const GLGroup> G,
                                       const std::vector<uint32_t>& H,
                                       const std::vector<uint32_t>& K) {
    // K must be a subgroup of H
    {
        std::vector<char> inH(G->elems.size(), 0);
        for (uint32_t h : H) inH[h] = 1;
        for (uint32_t k : K)
            if (!inH[k]) throw std::invalid_argument("K is not contained in H");
    }
    CoinvariantSpace MH = coinvariants(G, H);
    CoinvariantSpace MK = coinvariants(G, K);
    uint32_t p = G->p;

    FpMatrix quotient(p, MH.dim(), MK.dim());
    for (size_t c = 0; c < MK.dim(); ++c)
        quotient.add_at(MH.coset_label[MK.reps[c]], c, 1);

    // right coset representatives of K in H: H = ∐ K h_i
    std::map<uint32_t, uint32_t> seen; // canonical min of Kh -> h
    std::vector<uint32_t> hreps;
    for (uint32_t h : H) {
        uint32_t mn = UINT32_MAX;
        for (uint32_t k : K) mn = std::min(mn, G->mul(k, h));
        if (!seen.count(mn)) {
            seen[mn] = h;
            hreps.push_back(h);
        }
    }
    FpMatrix transfer(p, MK.dim(), MH.dim());
    for (size_t c = 0; c < MH.dim(); ++c)
        for (uint32_t h : hreps)
            transfer.add_at(MK.coset_label[G->mul(h, MH.reps[c])], c, 1);

    return {std::move(quotient), std::move(transfer), uint64_t(H.size() / K.size())};
}

SteinbergHeckeReport steinberg_vs_hecke(int n, uint32_t p) {
    auto G = shared_group(n, p);
    QElt est = steinberg(n, p);
    FpElt estp = fp_reduce(est);
    chevalley::CosetSpace cs = chevalley::enumerate_cosets(n, p);
    size_t N = cs.size();

    // composite: section [Bg] -> [g], left-multiply by e^St, project to M_B
    auto composite = [&](const std::vector<Mat>& sections) {
        FpMatrix M(p, N, N);
        for (size_t c = 0; c < N; ++c) {
            uint32_t g = G->lookup(sections[c]);
            for (uint32_t y = 0; y < estp.c.size(); ++y) {
                if (!estp.c[y]) continue;
                uint32_t t = cs.coset_of(G->elems[G->mul(y, g)]);
                M.add_at(t, c, estp.c[y]);
            }
        }
        return M;
    };

    std::vector<Mat> canonical(cs.reps.begin(), cs.reps.end());
    FpMatrix M1 = composite(canonical);

    // twisted section: premultiply every representative by a fixed b in B
    Mat b = chevalley::mat_identity(n, p);
    if (n >= 2) b.set(0, 1, 1);
    std::vector<Mat> twisted;
    twisted.reserve(N);
    for (const Mat& r : canonical) twisted.push_back(chevalley::mat_mul(b, r));
    FpMatrix M2 = composite(twisted);

    hecke::AlgebraPtr A = hecke::HeckeAlgebra::create(n, p);
    hecke::CosetModel model(n, p);
    FpMatrix Men = model.rep(hecke::longest_idempotent(A));

    SteinbergHeckeReport rep;
    rep.matches_e_n = (M1 == Men);
    rep.section_independent = (M1 == M2);
    return rep;
}

} // namespace hclab::groupring
