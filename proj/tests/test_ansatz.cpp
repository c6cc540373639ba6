#include <cmath>

#include "doctest.h"
#include "gphelix/ansatz.hpp"

using namespace gphelix;

namespace {

const RadialProfile& profile() {
    static RadialProfile p = solve_profile(40.0, 1e-10);
    return p;
}

}  // namespace

TEST_CASE("make_config: two antipodal vortices") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    const double expect = 1.0 / (1e-3 * std::sqrt(std::log(1e3)));
    CHECK(cfg.d_eps == doctest::Approx(expect).epsilon(1e-12));
    CHECK(cfg.xi.size() == 2);
    CHECK(std::abs(cfg.xi[0] - cplx(cfg.d_eps, 0.0)) < 1e-9);
    CHECK(std::abs(cfg.xi[1] + cplx(cfg.d_eps, 0.0)) < 1e-9);
    CHECK(cfg.n == 2);
    CHECK(cfg.R_eps <= cfg.d_eps / 2.0 + 1e-12);
}

TEST_CASE("make_config: five outer vortices plus central degree -1") {
    const VortexConfiguration cfg = make_config(5, 1, 1e-3, 0.5, 1.4);
    CHECK(cfg.xi.size() == 6);
    CHECK(cfg.degrees.back() == -1);
    CHECK(std::abs(cfg.xi.back()) == 0.0);
    CHECK(cfg.n == 4);
    for (int j = 0; j < 5; ++j) CHECK(std::abs(cfg.xi[j]) == doctest::Approx(cfg.d_eps));
}

TEST_CASE("make_config: rejects out-of-range parameters") {
    CHECK_THROWS_AS(make_config(2, 0, 0.3, 0.0, 1.0), std::invalid_argument);   // eps >= e^-2 <=> R_eps > d_eps/2
    CHECK_THROWS_AS(make_config(2, 0, 1e-3, 1.0, 1.0), std::invalid_argument);  // c >= 1
    CHECK_THROWS_AS(make_config(1, 0, 1e-3, 0.0, 1.0), std::invalid_argument);  // n_plus < 2
    CHECK_THROWS_AS(make_config(3, 1, 1e-3, 0.0, 1.0), std::invalid_argument);  // central family needs n_plus >= 4
    CHECK_THROWS_AS(make_config(2, 0, 1e-3, 0.0, -1.0), std::invalid_argument);
    // explicit alpha0 violating R_eps <= d_eps/2
    CHECK_THROWS_AS(make_config(2, 0, 1e-3, 0.0, 1.0, 10.0), std::invalid_argument);
}

TEST_CASE("eval_Vd: zero at a vortex center, conjugation symmetry") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    CHECK(std::abs(eval_Vd(cfg, profile(), cfg.xi[0])) == 0.0);
    for (const cplx z : {cplx(3.0, 2.0), cplx(-10.0, 55.0), cplx(0.3, -0.7)}) {
        const cplx lhs = eval_Vd(cfg, profile(), std::conj(z));
        const cplx rhs = std::conj(eval_Vd(cfg, profile(), z));
        CHECK(std::abs(lhs - rhs) < 1e-13);
    }
}

TEST_CASE("eval_Vd: rotation covariance by 2 pi / n_plus") {
    for (int n : {2, 3, 5}) {
        const VortexConfiguration cfg = make_config(n, 0, 1e-3, 0.0, 1.0);
        const cplx rot = std::polar(1.0, 2.0 * kPi / n);
        for (const cplx z : {cplx(4.0, 1.0), cplx(-7.0, 3.0), cplx(100.0, -40.0)}) {
            const cplx a = eval_Vd(cfg, profile(), rot * z);
            const cplx b = eval_Vd(cfg, profile(), z);
            CHECK(std::abs(a - b) < 1e-11);
        }
    }
}

TEST_CASE("eval_Vd: modulus approaches 1 far away") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-2, 0.0, 1.0);
    const double far = 10.0 * cfg.d_eps;
    const double bound = 2.0 / (2.0 * std::pow(9.0 * cfg.d_eps, 2)) + 1e-6;
    for (double th : {0.1, 1.3, 2.9}) {
        const double dev = std::fabs(std::abs(eval_Vd(cfg, profile(), std::polar(far, th))) - 1.0);
        CHECK(dev < bound);
    }
}

TEST_CASE("eval_Vd: zero set is exactly the vortex centers") {
    const VortexConfiguration cfg = make_config(3, 0, 1e-2, 0.0, 1.0);
    double min_outside = 1.0;
    for (int ir = 0; ir < 60; ++ir)
        for (int im = 0; im < 120; ++im) {
            const double r = cfg.d_eps * (0.2 + 1.8 * ir / 59.0);
            const cplx z = std::polar(r, 2.0 * kPi * im / 120.0);
            double nearest = 1e300;
            for (const cplx& xi : cfg.xi) nearest = std::min(nearest, std::abs(z - xi));
            if (nearest > 1e-3) min_outside = std::min(min_outside, std::abs(eval_Vd(cfg, profile(), z)));
        }
    CHECK(min_outside > 0.0);
}

TEST_CASE("eval_logderiv_Vd: single vortex frame gives (rho'/rho, i/r)") {
    const VortexConfiguration cfg = make_config_diagnostic(1, 0, 1e-3, 0.0, 1.0);
    const double r = 2.5;
    const cplx z = cfg.xi[0] + cplx(r, 0.0);
    const LogDeriv ld = eval_logderiv_Vd(cfg, profile(), z);
    const RhoEval q = eval_rho(profile(), r);
    CHECK(ld.dx1.real() == doctest::Approx(q.rho_prime / q.rho).epsilon(1e-10));
    CHECK(std::fabs(ld.dx1.imag()) < 1e-12);
    CHECK(std::fabs(ld.dx2.real()) < 1e-12);
    CHECK(ld.dx2.imag() == doctest::Approx(1.0 / r).epsilon(1e-10));
}

TEST_CASE("eval_logderiv_Vd: symmetric pair cancels the radial part on the imaginary axis") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    const LogDeriv ld = eval_logderiv_Vd(cfg, profile(), cplx(0.0, 7.0));
    CHECK(std::fabs(ld.dx1.real()) < 1e-12);
}

TEST_CASE("eval_logderiv_Vd: rejects evaluation at a center") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    CHECK_THROWS_AS(eval_logderiv_Vd(cfg, profile(), cfg.xi[0]), std::domain_error);
}

TEST_CASE("eval_logderiv_Vd: matches centered differences of log V_d") {
    const VortexConfiguration cfg = make_config(3, 0, 1e-2, 0.3, 1.2);
    const cplx z = cfg.xi[0] + cplx(3.0, 2.0);
    const LogDeriv ld = eval_logderiv_Vd(cfg, profile(), z);
    auto logVd = [&](cplx y) { return std::log(eval_Vd(cfg, profile(), y)); };
    for (double h : {1e-3, 5e-4}) {
        const cplx d1 = (logVd(z + h) - logVd(z - h)) / (2.0 * h);
        const cplx d2 = (logVd(z + cplx(0, h)) - logVd(z - cplx(0, h))) / (2.0 * h);
        const double da = h / std::abs(z);
        const cplx rot = std::polar(1.0, da);
        const cplx dsv = (logVd(rot * z) - logVd(z / rot)) / (2.0 * da);
        CHECK(std::abs(d1 - ld.dx1) < 1e-5);
        CHECK(std::abs(d2 - ld.dx2) < 1e-5);
        CHECK(std::abs(dsv - ld.ds) < 2e-4);
    }
}

TEST_CASE("lift_3d: x3 = 0 agrees with eval_Vd at z = (r/eps) e^{i theta}") {
    const VortexConfiguration cfg = make_config(3, 0, 1e-2, 0.0, 1.0);
    const double r = 0.8, th = 0.9;
    const cplx a = lift_3d(cfg, profile(), r, th, 0.0);
    const cplx b = eval_Vd(cfg, profile(), (r / cfg.eps) * std::polar(1.0, th));
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("lift_3d: screw identity e^{-i n x3} u(r,theta,x3) = u(r,theta-x3,0)") {
    for (int nm : {0, 1}) {
        const VortexConfiguration cfg = nm == 0 ? make_config(3, 0, 1e-2, 0.0, 1.0) : make_config(5, 1, 1e-2, 0.0, 1.3);
        for (double x3 : {0.3, 1.1}) {
            for (double th : {0.0, 0.7, 2.2}) {
                const double r = 0.5;
                const cplx lhs = std::polar(1.0, -cfg.n * x3) * lift_3d(cfg, profile(), r, th, x3);
                const cplx rhs = lift_3d(cfg, profile(), r, th - x3, 0.0);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("lift_3d: zero set at x3 = pi/2 sits at the rotated polygon") {
    const VortexConfiguration cfg = make_config(4, 0, 1e-2, 0.0, 1.0);
    const double x3 = kPi / 2.0;
    for (int k = 0; k < 4; ++k) {
        const cplx zero = cfg.xi[k] * std::polar(1.0, x3);
        const cplx u = lift_3d(cfg, profile(), cfg.eps * std::abs(zero), std::arg(zero), x3);
        CHECK(std::abs(u) < 1e-12);
    }
}

TEST_CASE("check_psi_symmetries: constant i passes both constraints") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    std::vector<cplx> pts{cplx(1.0, 2.0), cplx(-3.0, 0.5), cplx(10.0, -4.0)};
    const SymmetryReport rep = check_psi_symmetries([](cplx) { return cplx(0.0, 1.0); }, cfg, pts);
    CHECK(rep.conj_deviation < 1e-15);
    CHECK(rep.rotation_deviation < 1e-15);
}

TEST_CASE("check_psi_symmetries: z - conj(z) is a failing witness") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    std::vector<cplx> pts{cplx(1.0, 2.0)};
    const SymmetryReport rep = check_psi_symmetries([](cplx z) { return z - std::conj(z); }, cfg, pts);
    CHECK(rep.conj_deviation > 1.0);
}

TEST_CASE("check_psi_symmetries: z^{n_plus} is rotation invariant") {
    const VortexConfiguration cfg = make_config(3, 0, 1e-3, 0.0, 1.0);
    std::vector<cplx> pts{cplx(1.0, 2.0), cplx(0.3, -0.8)};
    const SymmetryReport rep = check_psi_symmetries([](cplx z) { return z * z * z; }, cfg, pts);
    CHECK(rep.rotation_deviation < 1e-12);
}

TEST_CASE("cutoffs: plateau, support and the quintic transition value") {
    const VortexConfiguration cfg = make_config(2, 0, 1e-3, 0.0, 1.0);
    CHECK(cutoff_eta(cfg, cfg.xi[0]) == doctest::Approx(1.0));
    CHECK(cutoff_eta(cfg, cfg.xi[0] + cplx(2.5, 0.0)) == 0.0);
    CHECK(eta1(1.5) == doctest::Approx(0.5));
    CHECK(cutoff_chi_j(cfg, 0, cfg.xi[0] + cplx(3.0, 0.0)) == doctest::Approx(0.5));
    for (double t0 : {1.0, 2.0}) {
        const double h = 1e-4;
        const double d2 = (eta1(t0 + h) - 2.0 * eta1(t0) + eta1(t0 - h)) / (h * h);
        CHECK(std::fabs(d2) < 1e-2);
    }
    CHECK(cutoff_eta_jR(cfg, 0, cfg.R_eps, cfg.xi[0] + cplx(0.9 * cfg.R_eps, 0.0)) == doctest::Approx(1.0));
    CHECK(cutoff_eta_jR(cfg, 0, cfg.R_eps, cfg.xi[0] + cplx(2.1 * cfg.R_eps, 0.0)) == 0.0);
}

TEST_CASE("field: polar sampling and CSV export") {
    PolarGrid g{1.0, 0.5, 4, 8};
    const ComplexField f = sample_polar(g, [](cplx z) { return z; });
    CHECK(f.values.size() == 32);
    CHECK(std::abs(f.values[0] - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("config JSON round trip") {
    const VortexConfiguration cfg = make_config(3, 0, 1e-3, 0.25, 1.2);
    const VortexConfiguration back = config_from_json(config_to_json(cfg));
    CHECK(back.n_plus == cfg.n_plus);
    CHECK(back.eps == doctest::Approx(cfg.eps).epsilon(1e-15));
    CHECK(back.d_eps == doctest::Approx(cfg.d_eps).epsilon(1e-12));
}
