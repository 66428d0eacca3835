// Acceptance suite: runs every gate criterion at zero tolerance and prints one
// pass/fail line per criterion. Exit code 0 iff all pass within budget.

#include "hclab/chevalley.hpp"
#include "hclab/contraction.hpp"
#include "hclab/groupring.hpp"
#include "hclab/hecke.hpp"
#include "hclab/invariants.hpp"
#include "hclab/qwords.hpp"
#include "hclab/workbench.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace hclab;

namespace {

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> check;
};

bool check_presentations(std::string& detail) {
    for (uint32_t p : {2u, 3u, 5u})
        for (int n = 1; n <= 5; ++n) {
            hecke::PresentationReport rep = hecke::verify_presentation(n, p);
            if (!rep.all()) {
                detail = "presentation failed at n=" + std::to_string(n) + " p=" + std::to_string(p);
                return false;
            }
        }
    return true;
}

bool check_longest_idempotents(std::string& detail) {
    for (uint32_t p : {2u, 3u}) {
        hecke::AlgebraPtr A4 = hecke::HeckeAlgebra::create(4, p);
        hecke::HeckeElement explicit_word = A4->unit();
        for (int i : {1, 2, 3, 1, 2, 1}) explicit_word = A4->mul(explicit_word, A4->e(i));
        if (!(hecke::longest_idempotent(A4) == explicit_word)) {
            detail = "e_4 disagrees with the explicit word at p=" + std::to_string(p);
            return false;
        }
        for (int n = 1; n <= 4; ++n) {
            hecke::AlgebraPtr A = hecke::HeckeAlgebra::create(n, p);
            if (hecke::absorption_solution_dimension(A) != 1) {
                detail = "absorption space not one-dimensional at n=" + std::to_string(n);
                return false;
            }
        }
        for (int k = 1; k <= 4; ++k)
            if (!hecke::ek_recursion_check(k, k + 1, p)) {
                detail = "recursion failed at k=" + std::to_string(k) + " p=" + std::to_string(p);
                return false;
            }
    }
    return true;
}

bool check_key_identity(std::string& detail) {
    for (uint32_t p : {2u, 3u})
        for (int m = 2; m <= 5; ++m)
            for (int k = 1; k <= m - 1; ++k) {
                hecke::KeyIdentityReport rep = hecke::key_identity(m - k, k, p);
                if (!rep.all()) {
                    detail = "identity failed at (n,k)=(" + std::to_string(m - k) + "," +
                             std::to_string(k) + ") p=" + std::to_string(p);
                    return false;
                }
                for (uint32_t lam = 1; lam < p; ++lam)
                    for (uint32_t mu = 1; mu < p; ++mu)
                        if (!hecke::corner_combination_invertible(m - k, k, p, lam, mu)) {
                            detail = "corner combination singular at (n,k)=(" +
                                     std::to_string(m - k) + "," + std::to_string(k) + ")";
                            return false;
                        }
            }
    return true;
}

bool check_ds_squares(std::string& detail) {
    for (uint32_t p : {2u, 3u})
        for (int m = 1; m <= 5; ++m)
            for (int k = 2; k <= m; ++k) {
                auto [d1, s1] = hecke::ds_elements(m - k, k, p);
                auto [d2, s2] = hecke::ds_elements(m - k + 1, k - 1, p);
                if (!d1.alg->mul(d2, d1).is_zero() || !s1.alg->mul(s1, s2).is_zero()) {
                    detail = "a square failed at total " + std::to_string(m) + " p=" +
                             std::to_string(p);
                    return false;
                }
            }
    return true;
}

bool check_steinberg(std::string& detail) {
    for (auto [p, n] : std::vector<std::pair<uint32_t, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        groupring::QElt e = groupring::steinberg(n, p);
        if (!groupring::steinberg_idempotent(e) || !groupring::steinberg_p_local(e, p)) {
            detail = "steinberg failed at (p,n)=(" + std::to_string(p) + "," + std::to_string(n) + ")";
            return false;
        }
    }
    for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{2, 1}, {2, 2}, {3, 1}})
        if (!groupring::steinberg_chain(k, p)) {
            detail = "chain failed at (p,k)=(" + std::to_string(p) + "," + std::to_string(k) + ")";
            return false;
        }
    for (int n = 1; n <= 3; ++n) {
        groupring::SteinbergHeckeReport rep = groupring::steinberg_vs_hecke(n, 2);
        if (!rep.matches_e_n || !rep.section_independent) {
            detail = "hecke comparison failed at n=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

bool check_hilbert_bridge(std::string& detail) {
    for (int m = 0; m <= 3; ++m) {
        invariants::SliceModel slices(m, 20);
        for (int hd = 1; hd <= 21; ++hd) {
            uint64_t words = qwords::free_count(2, m, hd);
            size_t inv = slices.dim(hd - 1);
            if (words != inv) {
                detail = "bridge mismatch at m=" + std::to_string(m) + " degree " +
                         std::to_string(hd) + ": words " + std::to_string(words) +
                         " vs invariants " + std::to_string(inv);
                return false;
            }
        }
    }
    return true;
}

bool check_connectivity(std::string& detail) {
    auto c_of = [](uint32_t p, int k) {
        int64_t pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        return 2 * pk - 1 - k;
    };
    for (int k = 0; k <= 6; ++k) {
        qwords::BottomReport r = qwords::bottom_degree(2, k);
        if (r.degree != c_of(2, k) || r.multiplicity != 1) {
            detail = "word bottom failed at p=2 k=" + std::to_string(k);
            return false;
        }
    }
    for (int k = 0; k <= 4; ++k) {
        qwords::BottomReport r = qwords::bottom_degree(3, k);
        if (r.degree != c_of(3, k) || r.multiplicity != 1) {
            detail = "word bottom failed at p=3 k=" + std::to_string(k);
            return false;
        }
    }
    for (int k = 1; k <= 3; ++k) {
        int bottom = int(c_of(2, k));
        invariants::ModuleModel lk = invariants::module_model(0, k, bottom + 1);
        for (int hd = 1; hd < bottom; ++hd)
            if (lk.dim(hd) != 0) {
                detail = "invariant model nonzero below the bottom at k=" + std::to_string(k);
                return false;
            }
        if (lk.dim(bottom) != 1) {
            detail = "invariant model bottom multiplicity wrong at k=" + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool check_steenrod_hecke_commutation(std::string& detail) {
    for (int n = 1; n <= 3; ++n) {
        invariants::SliceModel slices(n, 20);
        for (int d = 0; d <= 20; ++d) {
            if (!slices.dim(d)) continue;
            for (int k = 1; d + k <= 20; ++k) {
                if (!slices.dim(d + k)) continue;
                const BitMatrix& sq = slices.steenrod_op(k, d);
                for (int i = 1; i <= n - 1; ++i) {
                    BitMatrix lhs = slices.ehat_op(i, d + k).mul(sq);
                    BitMatrix rhs = sq.mul(slices.ehat_op(i, d));
                    if (!(lhs == rhs)) {
                        detail = "commutation failed at n=" + std::to_string(n) + " d=" +
                                 std::to_string(d) + " k=" + std::to_string(k);
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool check_truncated_hom(std::string& detail) {
    auto slices1 = std::make_shared<invariants::SliceModel>(1, 29);
    auto slices2 = std::make_shared<invariants::SliceModel>(2, 29);
    auto slices3 = std::make_shared<invariants::SliceModel>(3, 29);
    std::vector<invariants::ModuleModel> total1, total2, total3;
    for (int k = 0; k <= 1; ++k)
        total1.push_back(invariants::module_model(slices1, 1 - k, k, 30));
    for (int k = 0; k <= 2; ++k)
        total2.push_back(invariants::module_model(slices2, 2 - k, k, 30));
    for (int k = 0; k <= 3; ++k)
        total3.push_back(invariants::module_model(slices3, 3 - k, k, 30));
    for (const auto& src : total1)
        for (const auto& dst : total2)
            if (invariants::truncated_hom(src, dst, 16) != 0) {
                detail = "total-1 -> total-2 hom nonzero";
                return false;
            }
    for (const auto& src : total2)
        for (const auto& dst : total3)
            if (invariants::truncated_hom(src, dst, 16) != 0) {
                detail = "total-2 -> total-3 hom nonzero";
                return false;
            }
    for (int n = 1; n <= 3; ++n) {
        size_t fact = 1;
        for (int i = 2; i <= n; ++i) fact *= size_t(i);
        if (invariants::hecke_operator_rank(n, 12) != fact) {
            detail = "operator images dependent at n=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

bool check_contraction(std::string& detail) {
    for (uint32_t p : {2u, 3u})
        for (int m = 0; m <= 4; ++m) {
            contraction::Certificate c =
                contraction::certify(m, p, contraction::Backend::HeckeRegular, 0);
            if (!(c.d_squared_zero && c.s_squared_zero && c.exact && c.all_homotopy_invertible)) {
                detail = "hecke-regular certificate failed at m=" + std::to_string(m) + " p=" +
                         std::to_string(p);
                return false;
            }
        }
    for (int m = 0; m <= 3; ++m) {
        contraction::Certificate c =
            contraction::certify(m, 2, contraction::Backend::Invariants, 24);
        if (!(c.d_squared_zero && c.s_squared_zero && c.exact && c.all_homotopy_invertible)) {
            detail = "invariants certificate failed at m=" + std::to_string(m);
            return false;
        }
    }
    return true;
}

bool check_counting(std::string& detail) {
    for (uint32_t p : {2u, 3u})
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                uint64_t formula = chevalley::count_epis_formula(m, n, p);
                if (chevalley::count_epis_bruteforce(m, n, p) != formula) {
                    detail = "epi count mismatch at (m,n,p)=(" + std::to_string(m) + "," +
                             std::to_string(n) + "," + std::to_string(p) + ")";
                    return false;
                }
            }
    for (int n = 1; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m) {
            chevalley::TransRepReport r = chevalley::transrep_injectivity(2, n, m);
            if (!r.injective) {
                detail = "transrep not injective at (n,m)=(" + std::to_string(n) + "," +
                         std::to_string(m) + ")";
                return false;
            }
        }
    return true;
}

bool check_determinism(std::string& detail) {
    std::vector<workbench::Request> requests(3);
    requests[0].command = "contraction.certify";
    requests[0].params = {{"p", "2"}, {"m", "2"}, {"max-degree", "16"}, {"backend", "invariants"}};
    requests[1].command = "invariants.hilbert";
    requests[1].params = {{"p", "2"}, {"n", "1"}, {"k", "1"}, {"max-degree", "14"}};
    requests[2].command = "words.count";
    requests[2].params = {{"p", "3"}, {"n", "0"}, {"k", "2"}, {"max-degree", "20"}};
    for (auto& r : requests) {
        workbench::Request r1 = r, r4 = r;
        r1.jobs = 1;
        r4.jobs = 4;
        if (workbench::run(r1).payload != workbench::run(r4).payload) {
            detail = "payload differs across worker counts for " + r.command;
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "Hecke presentation, n <= 5, p in {2,3,5}, dimension n!", 30, check_presentations},
        {2, "longest-word idempotents: e_4 word, uniqueness, recursion", 10,
         check_longest_idempotents},
        {3, "key identity + corner invertibility, n+k <= 5, p in {2,3}", 60, check_key_identity},
        {4, "d^2 = 0 and s^2 = 0 for all totals <= 5, p in {2,3}", 10, check_ds_squares},
        {5, "Steinberg idempotents, chain, and Hecke comparison", 60, check_steinberg},
        {6, "two-model Hilbert agreement, m <= 3, degrees <= 21", 120, check_hilbert_bridge},
        {7, "connectivity: bottom degree 2p^k - 1 - k, multiplicity 1", 30, check_connectivity},
        {8, "Steenrod-Hecke commutation, n <= 3, degrees <= 20", 120,
         check_steenrod_hecke_commutation},
        {9, "truncated Hom vanishing at D = 16 and operator independence", 300,
         check_truncated_hom},
        {10, "contraction certificates, hecke-regular m <= 4, invariants m <= 3", 300,
         check_contraction},
        {11, "epi counting formula vs brute force; transrep injectivity", 30, check_counting},
        {12, "byte-identical reports across worker counts", 60, check_determinism},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = secs < c.budget_seconds;
        if (ok && in_budget) {
            std::printf("[PASS] criterion %2d: %s (%.2fs)\n", c.id, c.name.c_str(), secs);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s (%.2fs)%s%s\n", c.id, c.name.c_str(), secs,
                        detail.empty() ? "" : " -- ", detail.c_str());
            if (!in_budget && ok)
                std::printf("       exceeded the %.0fs runtime budget\n", c.budget_seconds);
        }
        std::fflush(stdout);
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
}
