// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned in code; runtimes are measured and enforced.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gphelix/error_analysis.hpp"
#include "gphelix/kmd.hpp"
#include "gphelix/operators.hpp"
#include "gphelix/reduction.hpp"

using namespace gphelix;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, bool ok, double secs, double budget, const std::string& detail) {
    const bool in_budget = secs < budget;
    const bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("criterion %d: %s  (%.1fs / budget %.0fs)  %s\n", id, pass ? "PASS" : "FAIL", secs, budget,
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

const RadialProfile& profile40() {
    static RadialProfile p = solve_profile(40.0, 1e-10);
    return p;
}

const RadialProfile& profile100() {
    static RadialProfile p = solve_profile(100.0, 1e-10);
    return p;
}

// 1. Profile equation: residual, tail law, T(r) < 0.
void criterion1() {
    Timer t;
    const RadialProfile p = solve_profile(40.0, 1e-10);
    const double res = profile_residual(p, 40.0);
    bool ok = res < 1e-8;
    auto tail = [&](double r) { return std::pow(r, 4) * std::fabs(eval_rho(p, r).rho - 1.0 + 0.5 / (r * r)); };
    const double v10 = tail(10.0), v20 = tail(20.0), v40 = tail(39.9);
    ok = ok && v10 / v20 < 2.0 && v20 / v10 < 2.0 && v20 / v40 < 2.0 && v40 / v20 < 2.0;
    bool tneg = true;
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        tneg = tneg && (p.rho_prime[i] - p.rho[i] / p.grid[i] < 0.0);
    ok = ok && tneg;
    report(1, ok, t.seconds(), 5.0,
           fmt("residual=%.2e tail(10,20,40)=(%.3f,%.3f,%.3f) T<0:%s", res, v10, v20, v40, tneg ? "yes" : "no"));
}

// 2. Kernel of the planar GL linearization: order >= 1.9 under h -> h/2.
void criterion2() {
    Timer t;
    double res[2];
    int idx = 0;
    for (double h : {0.1, 0.05}) {
        CartesianGrid patch{-2.0, -2.0, h, static_cast<int>(4.0 / h) + 1, static_cast<int>(4.0 / h) + 1};
        res[idx++] = kernel_residual(profile40(), patch);
    }
    const double order = std::log2(res[0] / res[1]);
    report(2, order >= 1.9, t.seconds(), 30.0, fmt("order=%.3f (res %.2e -> %.2e)", order, res[0], res[1]));
}

// 3. Oracle equivalence: closed forms vs finite differences at 20 far-field
// points, plus the L0 / L' / E identity, all with order >= 1.9 (matches that
// are already at the interpolation noise floor count as equivalent).
void criterion3() {
    Timer t;
    const RadialProfile& p = profile100();
    const VortexConfiguration cfg = make_config(2, 0, 1e-2, 0.5, 1.0);
    OperatorParams par = OperatorParams::from_config(cfg);
    FieldSampler vd = [&](cplx z) { return eval_Vd(cfg, p, z); };
    FieldSampler psi = [](cplx z) {
        return cplx(0.3 * std::sin(0.21 * z.real()), 0.2 * std::cos(0.17 * z.imag()));
    };
    FieldSampler phi = [&](cplx z) { return cplx(0, 1) * vd(z) * psi(z); };
    const double floor_abs = 1e-10;
    bool ok = true;
    double worst_order = 99.0;
    int below_floor = 0;
    for (int k = 0; k < 20; ++k) {
        const cplx z = std::polar(cfg.d_eps * (0.30 + 0.02 * k), 0.37 + 0.29 * k);
        double ea[2], eb[2], ec[2], rel[2];
        int idx = 0;
        for (double h : {0.08, 0.04}) {
            const SPartsAt fd = apply_S_parts_at(vd, z, h, par);
            ea[idx] = std::abs(fd.a - closed_form_Ea(cfg, p, z));
            eb[idx] = std::abs(fd.b - closed_form_Eb(cfg, p, z));
            ec[idx] = std::abs(fd.c - closed_form_Ec(cfg, p, z));
            const cplx lhs = apply_L0_at(phi, vd, z, h, par);
            const cplx rhs = cplx(0, 1) * vd(z) * apply_Lprime_at(psi, cfg, p, z, h, par) +
                             cplx(0, 1) * closed_form_E(ErrorComponent::total, cfg, p, z) * psi(z);
            rel[idx] = std::abs(lhs - rhs);
            ++idx;
        }
        for (auto* e : {&ea, &eb, &ec, &rel}) {
            if ((*e)[0] < floor_abs) {
                ++below_floor;
                continue;
            }
            const double order = std::log2((*e)[0] / (*e)[1]);
            worst_order = std::min(worst_order, order);
            ok = ok && order >= 1.9;
        }
    }
    report(3, ok, t.seconds(), 120.0, fmt("worst order=%.3f (noise-floor matches: %d/80)", worst_order, below_floor));
}

// 4. ||R||_** times |log eps| stays within 50% across three eps decades.
void criterion4() {
    Timer t;
    std::vector<double> scaled;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const VortexConfiguration cfg = make_config(2, 0, eps, 0.0, 1.0);
        FieldSampler R = [&](cplx z) { return closed_form_R(ErrorComponent::total, cfg, profile40(), z); };
        const NormReport rep = norm_star_star(R, cfg, profile40());
        scaled.push_back(rep.value * cfg.log_eps_abs);
    }
    const double lo = std::min({scaled[0], scaled[1], scaled[2]});
    const double hi = std::max({scaled[0], scaled[1], scaled[2]});
    const bool ok = (hi - lo) / lo < 0.5;
    report(4, ok, t.seconds(), 300.0,
           fmt("||R||_** |log eps| = %.3f / %.3f / %.3f (spread %.0f%%)", scaled[0], scaled[1], scaled[2],
               100.0 * (hi - lo) / lo));
}

// 5. Reduction coefficients at eps = 1e-4 for n in {2,3}, c in {0, 0.5},
// with the worst gap shrinking from 1e-3 to 1e-5.
void criterion5() {
    Timer t;
    const RadialProfile& p = profile40();
    auto worst_gap = [&](double eps) {
        double worst = 0.0;
        for (int n : {2, 3}) {
            for (double c : {0.0, 0.5}) {
                const double dh = std::sqrt((n - 1.0) / (1.0 - c));
                const VortexConfiguration cfg = make_config(n, 0, eps, c, dh);
                const double s = eps * std::sqrt(cfg.log_eps_abs);
                const double gb = std::fabs(compute_B(ErrorComponent::b, cfg, p) / (kPi * dh * s) - 1.0);
                const double ga = std::fabs(compute_B(ErrorComponent::a, cfg, p) * dh / ((n - 1.0) * kPi * s) + 1.0);
                worst = std::max({worst, gb, ga});
                if (c != 0.0) {
                    const double gc = std::fabs(compute_B(ErrorComponent::c, cfg, p) / (c * kPi * dh * s) + 1.0);
                    worst = std::max(worst, gc);
                }
            }
        }
        return worst;
    };
    const double g4 = worst_gap(1e-4);
    const double g3 = worst_gap(1e-3);
    const double g5 = worst_gap(1e-5);
    const bool ok = g4 < 0.2 && g5 < g3;
    report(5, ok, t.seconds(), 600.0, fmt("worst gaps: %.4f (1e-3) -> %.4f (1e-4) -> %.4f (1e-5)", g3, g4, g5));
}

// 6. Radius law: roots within 15% at 1e-4 and 10% at 1e-5, both families.
void criterion6() {
    Timer t;
    const RadialProfile& p = profile40();
    bool ok = true;
    std::string detail;
    struct Case {
        int n_plus, n_minus;
        double c, blo, bhi;
    };
    const std::vector<Case> cases{{2, 0, 0.0, 0.5, 2.0}, {3, 0, 0.0, 0.7, 2.8}, {2, 0, 0.5, 0.6, 2.8},
                                  {5, 1, 0.0, 0.8, 3.0}};
    for (const Case& cs : cases) {
        for (double eps : {1e-4, 1e-5}) {
            const double tol = (eps == 1e-4) ? 0.15 : 0.10;
            const ReductionReport rep = solve_dhat(cs.n_plus, cs.n_minus, cs.c, eps, cs.blo, cs.bhi, p);
            const double gap = std::fabs(rep.d_hat_root - rep.asymptotic_root) / rep.asymptotic_root;
            ok = ok && gap < tol;
            detail += fmt("(%d,%d,c=%.1f,%.0e): %.1f%% ", cs.n_plus, cs.n_minus, cs.c, eps, 100.0 * gap);
        }
    }
    report(6, ok, t.seconds(), 900.0, detail);
}

// 7. KMD exact families: spectral residual < 1e-10, rotation rate within 1e-4.
void criterion7() {
    Timer t;
    bool ok = true;
    std::string detail;
    struct Fam {
        HelixFamily fam;
        int n;
        double nu;
    };
    for (const Fam& f : {Fam{HelixFamily::polygon, 3, 0.2}, Fam{HelixFamily::central_minus, 5, 0.0}}) {
        const FilamentState st = helix_exact(f.n, f.nu, 0.0, 64, f.fam);
        const auto rhs = kmd_rhs(st);
        double residual = 0.0;
        for (int k = 0; k < st.n_filaments(); ++k)
            for (int m = 0; m < st.M; ++m)
                residual = std::max(residual, std::abs(rhs[k][m] + cplx(0, 1) * f.nu * st.f[k][m]));
        const EquilibriumReport rep = relative_equilibrium_check(f.n, f.nu, f.fam, 1.0, 1e-3, 64, 0.0);
        const double dh2 = (f.fam == HelixFamily::polygon) ? (f.n - 1.0) / (1.0 - f.nu) : (f.n - 3.0) / (1.0 - f.nu);
        const double nu_expect = (f.fam == HelixFamily::polygon) ? 1.0 - (f.n - 1.0) / dh2 : 1.0 - (f.n - 3.0) / dh2;
        const double nu_err = std::fabs(rep.nu_recovered - nu_expect);
        ok = ok && residual < 1e-10 && nu_err < 1e-4;
        detail += fmt("[res=%.1e nu_err=%.1e] ", residual, nu_err);
    }
    report(7, ok, t.seconds(), 60.0, detail);
}

// 8. Decomposition suite: exact split, reflection symmetry, even-part and
// w_x2x2 orthogonality under quadrature.
void criterion8() {
    Timer t;
    const RadialProfile& p = profile40();
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    FieldSampler h = [](cplx z) {
        return cplx(std::sin(0.11 * z.real()) * 0.7 + 0.1, std::cos(0.13 * z.imag()) - 0.2);
    };
    const OddEvenSplit split = odd_even_split(h, cfg);
    std::mt19937 rng(20260808);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double split_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const cplx z = cfg.xi[k % 2] + cplx(2.0 * cfg.R_eps * unif(rng), 2.0 * cfg.R_eps * unif(rng));
        split_err = std::max(split_err, std::abs(split.odd(z) + split.even(z) - h(z)));
    }
    double refl_err = 0.0;
    for (int k = 0; k < 50; ++k) {
        const cplx z = cfg.xi[0] + std::polar(0.45 * cfg.R_eps * (0.02 + 0.019 * k), 0.13 * k);
        refl_err = std::max(refl_err, std::abs(split.odd(reflect_vortex(cfg, 0, z)) - std::conj(split.odd(z))));
    }
    // even part of the error does not project on the kernel
    FieldSampler R = [&](cplx z) { return closed_form_R(ErrorComponent::total, cfg, p, z); };
    const OddEvenSplit rsplit = odd_even_split(R, cfg);
    const double Pe = project_against_kernel(rsplit.even, cfg, p, cfg.R_eps, 48, 192);
    // quadrature tolerance: the refinement target (1e-4) times the natural
    // scale of the kernel projections, eps sqrt|log eps|
    const double quad_tol = 1e-4 * cfg.eps * std::sqrt(cfg.log_eps_abs);
    // w_x2x2 orthogonality
    double orth = 0.0;
    {
        const GaussRule g = gauss_legendre(64, 0.0, cfg.R_eps);
        const int M = 128;
        for (int i = 0; i < 64; ++i)
            for (int m = 0; m < M; ++m) {
                const double th = 2.0 * kPi * m / M;
                const cplx z = std::polar(g.x[i], th);
                orth += g.w[i] * g.x[i] * std::real(eval_w_x2x2(p, z) * std::conj(eval_w(p, z).w_x1)) *
                        (2.0 * kPi / M);
            }
    }
    const bool ok = split_err < 1e-12 && refl_err < 1e-12 && std::fabs(Pe) < quad_tol && std::fabs(orth) < 1e-10;
    report(8, ok, t.seconds(), 60.0,
           fmt("split=%.1e refl=%.1e even-proj=%.1e orth=%.1e", split_err, refl_err, Pe, orth));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures;
}
