#include "hclab/chevalley.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace hclab::chevalley {

Mat mat_identity(int n, uint32_t p) {
    Mat m(n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat r(a.n, a.p);
    for (int i = 0; i < a.n; ++i)
        for (int l = 0; l < a.n; ++l) {
            uint32_t c = a.at(i, l);
            if (!c) continue;
            for (int j = 0; j < a.n; ++j)
                r.e[size_t(i) * a.n + j] =
                    uint32_t((r.e[size_t(i) * a.n + j] + uint64_t(c) * b.at(l, j)) % a.p);
        }
    return r;
}

int mat_rank(const Mat& a) {
    Fp F(a.p);
    Mat m = a;
    int r = 0;
    for (int c = 0; c < a.n && r < a.n; ++c) {
        int pr = -1;
        for (int i = r; i < a.n; ++i)
            if (m.at(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        for (int j = 0; j < a.n; ++j) {
            uint32_t t = m.at(r, j);
            m.set(r, j, m.at(pr, j));
            m.set(pr, j, t);
        }
        uint32_t inv = F.inv(m.at(r, c));
        for (int j = 0; j < a.n; ++j) m.set(r, j, F.mul(m.at(r, j), inv));
        for (int i = 0; i < a.n; ++i) {
            if (i == r || !m.at(i, c)) continue;
            uint32_t f = m.at(i, c);
            for (int j = 0; j < a.n; ++j) m.set(i, j, F.sub(m.at(i, j), F.mul(f, m.at(r, j))));
        }
        ++r;
    }
    return r;
}

std::optional<Mat> mat_inverse(const Mat& a) {
    Fp F(a.p);
    int n = a.n;
    Mat m = a, inv = mat_identity(n, a.p);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c)) { pr = i; break; }
        if (pr < 0) return std::nullopt;
        for (int j = 0; j < n; ++j) {
            std::swap(m.e[size_t(c) * n + j], m.e[size_t(pr) * n + j]);
            std::swap(inv.e[size_t(c) * n + j], inv.e[size_t(pr) * n + j]);
        }
        uint32_t iv = F.inv(m.at(c, c));
        for (int j = 0; j < n; ++j) {
            m.set(c, j, F.mul(m.at(c, j), iv));
            inv.set(c, j, F.mul(inv.at(c, j), iv));
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || !m.at(i, c)) continue;
            uint32_t f = m.at(i, c);
            for (int j = 0; j < n; ++j) {
                m.set(i, j, F.sub(m.at(i, j), F.mul(f, m.at(c, j))));
                inv.set(i, j, F.sub(inv.at(i, j), F.mul(f, inv.at(c, j))));
            }
        }
    }
    return inv;
}

Mat mat_block_embed(const Mat& g, int total) {
    Mat r = mat_identity(total, g.p);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) r.set(i, j, g.at(i, j));
    return r;
}

Mat perm_matrix(const Perm& w, uint32_t p) {
    Mat m(int(w.size()), p);
    for (size_t i = 0; i < w.size(); ++i) m.set(int(i), int(w[i]), 1);
    return m;
}

Mat transvection(int n, uint32_t p, int i, int j, uint32_t t) {
    Mat m = mat_identity(n, p);
    m.set(i, j, t);
    return m;
}

SubgroupTag subgroup_tag_from_string(const std::string& s) {
    if (s == "trivial") return SubgroupTag::Trivial;
    if (s == "borel") return SubgroupTag::Borel;
    if (s == "unipotent") return SubgroupTag::Unipotent;
    if (s == "parabolic") return SubgroupTag::Parabolic;
    if (s == "full") return SubgroupTag::Full;
    if (s == "weyl") return SubgroupTag::Weyl;
    if (s == "elementary") return SubgroupTag::ElementaryAbelian;
    throw std::invalid_argument("unknown subgroup tag: " + s);
}

std::string subgroup_tag_to_string(SubgroupTag t) {
    switch (t) {
        case SubgroupTag::Trivial: return "trivial";
        case SubgroupTag::Borel: return "borel";
        case SubgroupTag::Unipotent: return "unipotent";
        case SubgroupTag::Parabolic: return "parabolic";
        case SubgroupTag::Full: return "full";
        case SubgroupTag::Weyl: return "weyl";
        case SubgroupTag::ElementaryAbelian: return "elementary";
    }
    return "?";
}

uint64_t full_group_order(int n, uint32_t p) {
    uint64_t ord = 1, pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    uint64_t pi = 1;
    for (int i = 0; i < n; ++i) {
        ord *= (pn - pi);
        pi *= p;
    }
    return ord;
}

uint64_t subgroup_order_formula(const SubgroupDescriptor& d) {
    uint64_t punits = 1;
    for (int i = 0; i < d.n * (d.n - 1) / 2; ++i) punits *= d.p;
    uint64_t diag = 1;
    for (int i = 0; i < d.n; ++i) diag *= (d.p - 1);
    switch (d.tag) {
        case SubgroupTag::Trivial: return 1;
        case SubgroupTag::Borel: return diag * punits;
        case SubgroupTag::Unipotent: return punits;
        case SubgroupTag::Parabolic:
            if (d.parabolic_i < 1 || d.parabolic_i > d.n - 1)
                throw std::invalid_argument("parabolic index out of range");
            return diag * punits * (d.p + 1);
        case SubgroupTag::Full: return full_group_order(d.n, d.p);
        case SubgroupTag::Weyl: {
            uint64_t f = 1;
            for (int i = 2; i <= d.n; ++i) f *= uint64_t(i);
            return f;
        }
        case SubgroupTag::ElementaryAbelian: {
            uint64_t o = 1;
            for (int i = 0; i < d.n; ++i) o *= d.p;
            return o;
        }
    }
    return 0;
}

static bool is_upper_triangular(const Mat& g) {
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < i; ++j)
            if (g.at(i, j)) return false;
    return true;
}

static bool is_unipotent(const Mat& g) {
    if (!is_upper_triangular(g)) return false;
    for (int i = 0; i < g.n; ++i)
        if (g.at(i, i) != 1) return false;
    return true;
}

static bool in_parabolic(const Mat& g, int i1) {
    // zero below the diagonal except possibly at (i1+1, i1), 1-based
    for (int r = 0; r < g.n; ++r)
        for (int c = 0; c < r; ++c)
            if (g.at(r, c) && !(r == i1 && c == i1 - 1)) return false;
    return true;
}

static bool is_perm_matrix(const Mat& g) {
    for (int i = 0; i < g.n; ++i) {
        int ones = 0;
        for (int j = 0; j < g.n; ++j) {
            if (g.at(i, j) == 1) ++ones;
            else if (g.at(i, j)) return false;
        }
        if (ones != 1) return false;
    }
    return true;
}

std::vector<Mat> group_generators(int n, uint32_t p) {
    std::vector<Mat> gens;
    for (int i = 0; i + 1 < n; ++i) {
        gens.push_back(transvection(n, p, i, i + 1, 1));
        gens.push_back(transvection(n, p, i + 1, i, 1));
    }
    if (p > 2) {
        // primitive root on the first diagonal slot
        Fp F(p);
        uint32_t a = 2;
        for (;; ++a) {
            bool prim = true;
            uint32_t x = 1;
            for (uint32_t e = 1; e < p - 1; ++e) {
                x = F.mul(x, a);
                if (x == 1) { prim = false; break; }
            }
            if (prim) break;
        }
        Mat d = mat_identity(n, p);
        d.set(0, 0, a);
        gens.push_back(d);
    }
    if (gens.empty()) gens.push_back(mat_identity(n, p)); // GL_1(F_2)
    return gens;
}

GLGroup build_group(int n, uint32_t p) {
    uint64_t ord = full_group_order(n, p);
    if (ord > kGroupOrderGuard)
        throw GuardError("group order exceeds enumeration guard", ord);
    GLGroup G;
    G.n = n;
    G.p = p;
    std::vector<Mat> gens = group_generators(n, p);
    std::unordered_map<uint64_t, char> seen;
    std::deque<Mat> queue;
    Mat id = mat_identity(n, p);
    queue.push_back(id);
    seen[id.encode()] = 1;
    std::vector<Mat> found;
    while (!queue.empty()) {
        Mat g = queue.front();
        queue.pop_front();
        found.push_back(g);
        for (const Mat& s : gens) {
            Mat h = mat_mul(g, s);
            uint64_t code = h.encode();
            if (!seen.count(code)) {
                seen[code] = 1;
                queue.push_back(h);
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const Mat& a, const Mat& b) { return a.encode() < b.encode(); });
    G.elems = std::move(found);
    for (uint32_t i = 0; i < G.elems.size(); ++i) G.index[G.elems[i].encode()] = i;
    if (G.elems.size() != ord)
        throw std::logic_error("group enumeration does not match the order formula");
    return G;
}

uint32_t GLGroup::id() const { return lookup(mat_identity(n, p)); }

uint32_t GLGroup::lookup(const Mat& m) const {
    auto it = index.find(m.encode());
    if (it == index.end()) throw std::logic_error("element not in group table");
    return it->second;
}

uint32_t GLGroup::mul(uint32_t a, uint32_t b) const {
    return lookup(mat_mul(elems[a], elems[b]));
}

uint32_t GLGroup::inv(uint32_t a) const {
    return lookup(*mat_inverse(elems[a]));
}

std::vector<uint32_t> GLGroup::subgroup_elems(SubgroupTag tag, int parabolic_i) const {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < elems.size(); ++i) {
        const Mat& g = elems[i];
        bool in = false;
        switch (tag) {
            case SubgroupTag::Trivial: in = (g == mat_identity(n, p)); break;
            case SubgroupTag::Borel: in = is_upper_triangular(g); break;
            case SubgroupTag::Unipotent: in = is_unipotent(g); break;
            case SubgroupTag::Parabolic: in = in_parabolic(g, parabolic_i); break;
            case SubgroupTag::Full: in = true; break;
            case SubgroupTag::Weyl: in = is_perm_matrix(g); break;
            case SubgroupTag::ElementaryAbelian:
                throw std::invalid_argument("E_n is not a subgroup of GL_n");
        }
        if (in) out.push_back(i);
    }
    return out;
}

uint64_t group_order(const SubgroupDescriptor& d) {
    uint64_t formula = subgroup_order_formula(d);
    if (formula > kGroupOrderGuard)
        throw GuardError("subgroup order exceeds enumeration guard", formula);
    if (d.tag == SubgroupTag::ElementaryAbelian) return formula; // translations, not matrices
    if (full_group_order(d.n, d.p) <= kGroupOrderGuard) {
        GLGroup G = build_group(d.n, d.p);
        uint64_t count = G.subgroup_elems(d.tag, d.parabolic_i).size();
        if (count != formula)
            throw std::logic_error("subgroup enumeration does not match the order formula");
    }
    return formula;
}

Mat canonical_coset_rep(const Mat& g) {
    Fp F(g.p);
    Mat m = g;
    int n = m.n;
    std::vector<int> lead(n, -1);
    for (int i = n - 1; i >= 0; --i) {
        // clear this row at the leading columns of the rows below, bottom-up
        for (int j = n - 1; j > i; --j) {
            uint32_t v = m.at(i, lead[j]);
            if (!v) continue;
            uint32_t f = F.mul(v, F.inv(m.at(j, lead[j])));
            for (int t = 0; t < n; ++t) m.set(i, t, F.sub(m.at(i, t), F.mul(f, m.at(j, t))));
        }
        int c = 0;
        while (c < n && !m.at(i, c)) ++c;
        if (c == n) throw std::invalid_argument("matrix is singular");
        uint32_t inv = F.inv(m.at(i, c));
        for (int t = 0; t < n; ++t) m.set(i, t, F.mul(m.at(i, t), inv));
        lead[i] = c;
    }
    return m;
}

uint32_t CosetSpace::coset_of(const Mat& g) const {
    auto it = index.find(canonical_coset_rep(g).encode());
    if (it == index.end()) throw std::logic_error("coset not in table");
    return it->second;
}

uint64_t coset_count_formula(int n, uint32_t p) {
    SymmetricGroup W(n);
    uint64_t total = 0;
    for (const Perm& w : W.elements) {
        uint64_t t = 1;
        for (int i = 0; i < perm_length(w); ++i) t *= p;
        total += t;
    }
    return total;
}

CosetSpace enumerate_cosets(int n, uint32_t p) {
    uint64_t expect = coset_count_formula(n, p);
    if (expect > kCosetGuard) throw GuardError("coset count exceeds guard", expect);
    CosetSpace cs;
    cs.n = n;
    cs.p = p;
    std::vector<Mat> gens = group_generators(n, p);
    std::set<uint64_t> seen;
    std::deque<Mat> queue;
    Mat start = canonical_coset_rep(mat_identity(n, p));
    queue.push_back(start);
    seen.insert(start.encode());
    std::vector<Mat> reps;
    while (!queue.empty()) {
        Mat r = queue.front();
        queue.pop_front();
        reps.push_back(r);
        for (const Mat& s : gens) {
            Mat h = canonical_coset_rep(mat_mul(r, s));
            if (seen.insert(h.encode()).second) queue.push_back(h);
        }
    }
    std::sort(reps.begin(), reps.end(),
              [](const Mat& a, const Mat& b) { return a.encode() < b.encode(); });
    cs.reps = std::move(reps);
    for (uint32_t i = 0; i < cs.reps.size(); ++i) cs.index[cs.reps[i].encode()] = i;
    if (cs.reps.size() != expect)
        throw std::logic_error("coset enumeration does not match Poincare count");
    return cs;
}

std::vector<Mat> parabolic_coset_reps(int i, int n, uint32_t p) {
    // right cosets B g_j with P_i = ∐ B g_j, as the coinvariant transfer needs
    if (i < 1 || i > n - 1) throw std::invalid_argument("parabolic index out of range");
    std::vector<Mat> reps;
    reps.push_back(mat_identity(n, p));
    Mat wi = perm_matrix(perm_transposition(n, i - 1), p);
    for (uint32_t t = 0; t < p; ++t)
        reps.push_back(mat_mul(wi, transvection(n, p, i - 1, i, t)));
    for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = a + 1; b < reps.size(); ++b) {
            Mat q = mat_mul(reps[b], *mat_inverse(reps[a]));
            if (is_upper_triangular(q)) throw std::logic_error("parabolic reps not distinct");
        }
    return reps;
}

std::vector<Mat> parabolic_left_coset_reps(int i, int n, uint32_t p) {
    // left cosets g_j B with P_i = ∐ g_j B, as the invariant transfer needs
    if (i < 1 || i > n - 1) throw std::invalid_argument("parabolic index out of range");
    std::vector<Mat> reps;
    reps.push_back(mat_identity(n, p));
    Mat wi = perm_matrix(perm_transposition(n, i - 1), p);
    for (uint32_t t = 0; t < p; ++t)
        reps.push_back(mat_mul(transvection(n, p, i - 1, i, t), wi));
    for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = a + 1; b < reps.size(); ++b) {
            Mat q = mat_mul(*mat_inverse(reps[a]), reps[b]);
            if (is_upper_triangular(q)) throw std::logic_error("parabolic reps not distinct");
        }
    return reps;
}

uint64_t parabolic_index(int i, int n, uint32_t p) {
    SubgroupDescriptor par{SubgroupTag::Parabolic, i, n, p};
    SubgroupDescriptor bor{SubgroupTag::Borel, 0, n, p};
    uint64_t idx = subgroup_order_formula(par) / subgroup_order_formula(bor);
    if (idx != p + 1) throw std::logic_error("parabolic index is not p+1");
    return idx;
}

Perm bruhat_cell(const Mat& g) {
    int n = g.n;
    // R(i,j) = rank of the submatrix on rows i..n-1, columns 0..j
    auto R = [&](int i, int j) -> int {
        if (i >= n || j < 0) return 0;
        Mat sub(n, g.p); // embed; rank routine ignores zero padding
        for (int r = i; r < n; ++r)
            for (int c = 0; c <= j; ++c) sub.set(r - i, c, g.at(r, c));
        return mat_rank(sub);
    };
    Perm w(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int v = R(i, j) - R(i + 1, j) - R(i, j - 1) + R(i + 1, j - 1);
            if (v == 1) { w[i] = uint8_t(j); break; }
        }
    }
    return w;
}

uint64_t count_epis_formula(int m, int n, uint32_t p) {
    if (m < n) return 0;
    uint64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    uint64_t out = 1, pi = 1;
    for (int i = 0; i < n; ++i) {
        out *= (pm - pi);
        pi *= p;
    }
    return out;
}

namespace {

// rank of an m x n matrix over F_p given as rows
int rect_rank(std::vector<std::vector<uint32_t>> rows, int n, uint32_t p) {
    Fp F(p);
    int r = 0;
    int m = int(rows.size());
    for (int c = 0; c < n && r < m; ++c) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (rows[i][c]) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        uint32_t inv = F.inv(rows[r][c]);
        for (int j = 0; j < n; ++j) rows[r][j] = F.mul(rows[r][j], inv);
        for (int i = 0; i < m; ++i) {
            if (i == r || !rows[i][c]) continue;
            uint32_t f = rows[i][c];
            for (int j = 0; j < n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        ++r;
    }
    return r;
}

} // namespace

uint64_t count_epis_bruteforce(int m, int n, uint32_t p) {
    uint64_t total = 1;
    for (int i = 0; i < m * n; ++i) {
        total *= p;
        if (total > kEpiBruteGuard)
            throw GuardError("epi brute force exceeds guard", total);
    }
    uint64_t count = 0;
    std::vector<uint32_t> flat(size_t(m) * n, 0);
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (auto& v : flat) { v = uint32_t(c % p); c /= p; }
        std::vector<std::vector<uint32_t>> rows(m, std::vector<uint32_t>(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = flat[size_t(i) * n + j];
        if (rect_rank(std::move(rows), n, p) == n) ++count;
    }
    return count;
}

uint64_t count_epis(int m, int n, uint32_t p) {
    uint64_t f = count_epis_formula(m, n, p);
    uint64_t total = 1;
    bool fits = true;
    for (int i = 0; i < m * n; ++i) {
        total *= p;
        if (total > kEpiBruteGuard) { fits = false; break; }
    }
    if (fits && count_epis_bruteforce(m, n, p) != f)
        throw std::logic_error("epi count formula disagrees with brute force");
    return f;
}

namespace {

std::string perm_key(const std::vector<uint16_t>& g) {
    return std::string(reinterpret_cast<const char*>(g.data()), g.size() * sizeof(uint16_t));
}

std::vector<uint16_t> perm_mul16(const std::vector<uint16_t>& a, const std::vector<uint16_t>& b) {
    std::vector<uint16_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

std::vector<uint16_t> perm_inv16(const std::vector<uint16_t>& a) {
    std::vector<uint16_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = uint16_t(i);
    return r;
}

uint64_t wreath_order(int n, uint32_t p) {
    // o_k = p * o_{k-1}^p, saturating once past the guard
    unsigned __int128 o = 1;
    for (int k = 1; k <= n; ++k) {
        unsigned __int128 pw = 1;
        for (uint32_t i = 0; i < p; ++i) {
            pw *= o;
            if (pw > kWreathOrderGuard) return kWreathOrderGuard + 1;
        }
        o = p * pw;
        if (o > kWreathOrderGuard) return kWreathOrderGuard + 1;
    }
    return uint64_t(o);
}

} // namespace

uint32_t WreathGroup::lookup(const std::vector<uint16_t>& g) const {
    auto it = index.find(perm_key(g));
    if (it == index.end()) throw std::logic_error("permutation not in wreath group");
    return it->second;
}

uint32_t WreathGroup::mul(uint32_t a, uint32_t b) const {
    return lookup(perm_mul16(elems[a], elems[b]));
}

uint32_t WreathGroup::inv(uint32_t a) const { return lookup(perm_inv16(elems[a])); }

WreathGroup build_wreath(int n, uint32_t p) {
    uint64_t ord = wreath_order(n, p);
    if (ord > kWreathOrderGuard) throw GuardError("wreath order exceeds guard", ord);
    WreathGroup W;
    W.p = p;
    W.n = n;
    size_t deg = 1;
    for (int i = 0; i < n; ++i) deg *= p;
    W.degree = deg;

    // generators: recursively, the top digit rotation plus the lower wreath
    // group embedded in the first subtree
    std::vector<std::vector<uint16_t>> gens;
    size_t block = deg / (n > 0 ? p : 1);
    std::vector<uint16_t> ident(deg);
    for (size_t t = 0; t < deg; ++t) ident[t] = uint16_t(t);
    if (n >= 1) {
        std::vector<uint16_t> rot(deg);
        for (size_t t = 0; t < deg; ++t) rot[t] = uint16_t((t + block) % deg);
        gens.push_back(rot);
        if (n >= 2) {
            // embed the whole lower wreath group in subtree 0; conjugation by
            // the rotation reaches the other subtrees during closure
            WreathGroup sub = build_wreath(n - 1, p);
            for (const auto& lg : sub.elems) {
                std::vector<uint16_t> g = ident;
                for (size_t t = 0; t < sub.degree; ++t) g[t] = lg[t];
                gens.push_back(g);
            }
        }
    }

    std::deque<std::vector<uint16_t>> queue;
    W.index[perm_key(ident)] = 0;
    W.elems.push_back(ident);
    queue.push_back(ident);
    while (!queue.empty()) {
        auto g = queue.front();
        queue.pop_front();
        for (const auto& s : gens) {
            auto h = perm_mul16(g, s);
            std::string key = perm_key(h);
            if (!W.index.count(key)) {
                W.index[key] = uint32_t(W.elems.size());
                W.elems.push_back(h);
                queue.push_back(h);
            }
        }
    }
    if (W.elems.size() != ord) throw std::logic_error("wreath enumeration mismatch");

    // translations: digit j (1-based from the top) incremented mod p
    for (int j = 1; j <= n; ++j) {
        size_t stride = 1;
        for (int t = 0; t < n - j; ++t) stride *= p;
        std::vector<uint16_t> tr(deg);
        for (size_t t = 0; t < deg; ++t) {
            size_t digit = (t / stride) % p;
            tr[t] = uint16_t(t - digit * stride + ((digit + 1) % p) * stride);
        }
        W.translations.push_back(W.lookup(tr));
    }
    return W;
}

TransRepReport transrep_injectivity(uint32_t p, int n, int m) {
    if (m > 3) throw GuardError("transrep guard: m <= 3", uint64_t(m));
    WreathGroup W = build_wreath(n, p);
    Fp F(p);

    // --- U_n-orbits of epimorphisms E_m ->> E_n, phi(v) = v A, A in F_p^{m x n}
    std::vector<Mat> U; // upper unitriangular n x n
    {
        int nup = n * (n - 1) / 2;
        uint64_t total = 1;
        for (int i = 0; i < nup; ++i) total *= p;
        for (uint64_t code = 0; code < total; ++code) {
            Mat u = mat_identity(n, p);
            uint64_t c = code;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    u.set(i, j, uint32_t(c % p));
                    c /= p;
                }
            U.push_back(u);
        }
    }
    auto mat_key = [&](const std::vector<std::vector<uint32_t>>& rows) {
        uint64_t code = 0;
        for (const auto& r : rows)
            for (uint32_t v : r) code = code * p + v;
        return code;
    };
    uint64_t nmat = 1;
    for (int i = 0; i < m * n; ++i) {
        nmat *= p;
        if (nmat > kEpiBruteGuard) throw GuardError("epi enumeration exceeds guard", nmat);
    }
    std::set<uint64_t> orbit_reps;
    std::vector<std::vector<std::vector<uint32_t>>> orbit_rep_mats;
    std::set<uint64_t> seen;
    for (uint64_t code = 0; code < nmat; ++code) {
        std::vector<std::vector<uint32_t>> A(m, std::vector<uint32_t>(n));
        uint64_t c = code;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) { A[i][j] = uint32_t(c % p); c /= p; }
        if (seen.count(mat_key(A))) continue;
        // rank n?
        {
            auto rows = A;
            if (rect_rank(std::move(rows), n, p) != n) continue;
        }
        // orbit under right multiplication by U_n; keep the minimal key
        uint64_t best = ~uint64_t(0);
        std::vector<std::vector<uint32_t>> bestA;
        for (const Mat& u : U) {
            std::vector<std::vector<uint32_t>> Au(m, std::vector<uint32_t>(n, 0));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    uint64_t s = 0;
                    for (int l = 0; l < n; ++l) s += uint64_t(A[i][l]) * u.at(l, j);
                    Au[i][j] = uint32_t(s % p);
                }
            uint64_t k = mat_key(Au);
            seen.insert(k);
            if (k < best) { best = k; bestA = Au; }
        }
        if (orbit_reps.insert(best).second) orbit_rep_mats.push_back(bestA);
    }

    // --- transitive representations E_m -> W up to conjugacy
    // elements of order dividing p (the identity sits at index 0)
    std::vector<uint32_t> unipotents;
    for (uint32_t i = 0; i < W.elems.size(); ++i) {
        uint32_t x = i;
        for (uint32_t t = 1; t < p; ++t) x = W.mul(x, i);
        if (x == 0) unipotents.push_back(i);
    }

    auto commutes = [&](uint32_t a, uint32_t b) { return W.mul(a, b) == W.mul(b, a); };
    auto transitive = [&](const std::vector<uint32_t>& tuple) {
        std::vector<char> vis(W.degree, 0);
        std::vector<size_t> stack{0};
        vis[0] = 1;
        size_t cnt = 1;
        while (!stack.empty()) {
            size_t x = stack.back();
            stack.pop_back();
            for (uint32_t g : tuple) {
                size_t y = W.elems[g][x];
                if (!vis[y]) { vis[y] = 1; ++cnt; stack.push_back(y); }
            }
        }
        return cnt == W.degree;
    };
    auto conj_canon = [&](const std::vector<uint32_t>& tuple) {
        std::vector<uint32_t> best;
        for (uint32_t h = 0; h < uint32_t(W.elems.size()); ++h) {
            uint32_t hinv = W.inv(h);
            std::vector<uint32_t> c(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) c[i] = W.mul(W.mul(h, tuple[i]), hinv);
            if (best.empty() || c < best) best = c;
        }
        return best;
    };

    std::set<std::vector<uint32_t>> trans_classes;
    std::vector<uint32_t> tuple(size_t(m), 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == m) {
            if (!transitive(tuple)) return;
            trans_classes.insert(conj_canon(tuple));
            return;
        }
        for (uint32_t g : unipotents) {
            bool ok = true;
            for (int q = 0; q < pos; ++q)
                if (!commutes(tuple[q], g)) { ok = false; break; }
            if (!ok) continue;
            tuple[pos] = g;
            rec(pos + 1);
        }
    };
    if (m == 0) {
        if (W.degree == 1) trans_classes.insert({});
    } else {
        rec(0);
    }

    // --- induced map: orbit of A  ->  class of translations by the rows of A
    std::set<std::vector<uint32_t>> image_classes;
    for (const auto& A : orbit_rep_mats) {
        std::vector<uint32_t> tup(size_t(m), 0u);
        for (int i = 0; i < m; ++i) {
            // translation by the vector row_i(A): compose digit translations
            uint32_t g = 0; // identity index
            for (int j = 0; j < n; ++j)
                for (uint32_t t = 0; t < A[i][size_t(j)]; ++t)
                    g = W.mul(g, W.translations[size_t(j)]);
            tup[size_t(i)] = g;
        }
        image_classes.insert(conj_canon(tup));
    }

    TransRepReport rep;
    rep.epi_orbit_count = orbit_reps.size();
    rep.transrep_count = trans_classes.size();
    rep.injective = (image_classes.size() == orbit_reps.size());
    return rep;
}

} // namespace hclab::chevalley
