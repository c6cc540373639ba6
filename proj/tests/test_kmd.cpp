#include <cmath>

#include "doctest.h"
#include "gphelix/kmd.hpp"

using namespace gphelix;

TEST_CASE("helix_exact: polygon family geometry") {
    const FilamentState st = helix_exact(2, 0.0, 0.0, 64);
    CHECK(st.n_filaments() == 2);
    // d_hat = 1 for n = 2, nu = 0; antipodal helices
    CHECK(std::abs(st.f[0][0] - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(st.f[0][0] + st.f[1][0]) < 1e-14);
    CHECK_THROWS_AS(helix_exact(2, 1.5, 0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(helix_exact(1, 0.0, 0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(helix_exact(2, 0.0, 0.0, 60), std::invalid_argument);
}

TEST_CASE("kmd_rhs equals -i nu f on the exact helix") {
    for (int n : {2, 3, 5}) {
        for (double nu : {0.0, 0.2, -0.5}) {
            const FilamentState st = helix_exact(n, nu, 0.0, 64);
            const auto rhs = kmd_rhs(st);
            double worst = 0.0;
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < st.M; ++m)
                    worst = std::max(worst, std::abs(rhs[k][m] + cplx(0, 1) * nu * st.f[k][m]));
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("kmd_rhs: central degree -1 family is a relative equilibrium") {
    const FilamentState st = helix_exact(5, 0.0, 0.0, 64, HelixFamily::central_minus);
    CHECK(st.n_filaments() == 6);
    CHECK(st.degrees[0] == -1);
    // d_hat = sqrt((N-3)/(1-nu)) = sqrt(2)
    CHECK(std::abs(st.f[1][0]) == doctest::Approx(std::sqrt(2.0)));
    const auto rhs = kmd_rhs(st);
    double worst = 0.0;
    for (int k = 0; k < st.n_filaments(); ++k)
        for (int m = 0; m < st.M; ++m) worst = std::max(worst, std::abs(rhs[k][m]));  // nu = 0: stationary shape
    CHECK(worst < 1e-10);
}

TEST_CASE("kmd_rhs: two straight filaments rotate like a point-vortex pair") {
    // z-independent reduction: f_{1,2} = ±a, degrees +1:
    // df/dt = 2i d_j d_k (f_k - f_j)/|f_k-f_j|^2 = 2i (2a)/(4a^2) = i/a at f = a
    const double a = 1.3;
    FilamentState st;
    st.M = 32;
    st.f = {std::vector<cplx>(32, cplx(a, 0.0)), std::vector<cplx>(32, cplx(-a, 0.0))};
    st.degrees = {1, 1};
    st.collision_tol = 1e-6;
    const auto rhs = kmd_rhs(st);
    CHECK(std::abs(rhs[0][0] - cplx(0.0, 1.0 / a)) < 1e-13);
    CHECK(std::abs(rhs[1][0] + cplx(0.0, 1.0 / a)) < 1e-13);
}

TEST_CASE("kmd_rhs: single filament reduces to the free Schroedinger term") {
    FilamentState st;
    st.M = 64;
    st.f = {std::vector<cplx>(64)};
    st.degrees = {1};
    for (int m = 0; m < 64; ++m) st.f[0][m] = 0.3 * std::polar(1.0, 2.0 * st.z_at(m));
    const auto rhs = kmd_rhs(st);
    for (int m = 0; m < 64; ++m) {
        // f = 0.3 e^{2iz}: dzz f = -4 f, rhs = i dzz f = -4 i f
        CHECK(std::abs(rhs[0][m] + 4.0 * cplx(0, 1) * st.f[0][m]) < 1e-10);
    }
}

TEST_CASE("kmd_rhs detects collisions") {
    FilamentState st;
    st.M = 32;
    st.f = {std::vector<cplx>(32, cplx(0.0, 0.0)), std::vector<cplx>(32, cplx(1e-9, 0.0))};
    st.degrees = {1, 1};
    st.collision_tol = 1e-3;
    CHECK_THROWS_AS(kmd_rhs(st), CollisionError);
}

TEST_CASE("step: helix rotates exactly at rate nu") {
    const int n = 3;
    const double nu = 0.2, T = 1.0, dt = 1e-3;
    const int M = 64;
    FilamentState st = helix_exact(n, nu, 0.0, M);
    st = integrate(st, T, dt);
    const FilamentState exact = helix_exact(n, nu, T, M);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < M; ++m) worst = std::max(worst, std::abs(st.f[k][m] - exact.f[k][m]));
    CHECK(worst < 1e-6);
}

TEST_CASE("step: dt halving reduces the terminal error by >= 3.5x") {
    const int n = 3;
    const double nu = 0.2, T = 0.5;
    const int M = 64;
    const FilamentState exact = helix_exact(n, nu, T, M);
    double errs[2];
    int idx = 0;
    for (double dt : {2e-3, 1e-3}) {
        FilamentState st = integrate(helix_exact(n, nu, 0.0, M), T, dt);
        double worst = 0.0;
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < M; ++m) worst = std::max(worst, std::abs(st.f[k][m] - exact.f[k][m]));
        errs[idx++] = worst;
    }
    CHECK(errs[0] / errs[1] >= 3.5);
}

TEST_CASE("step: a single straight filament is invariant") {
    FilamentState st;
    st.M = 32;
    st.f = {std::vector<cplx>(32, cplx(0.7, -0.2))};
    st.degrees = {1};
    const FilamentState out = integrate(st, 0.5, 1e-2);
    for (int m = 0; m < 32; ++m) CHECK(std::abs(out.f[0][m] - cplx(0.7, -0.2)) < 1e-13);
}

TEST_CASE("step: time reversal returns the state to O(dt^3) per pair") {
    FilamentState st = helix_exact(3, 0.2, 0.0, 64);
    // perturb a little so the state is generic
    for (int m = 0; m < st.M; ++m) st.f[0][m] += 0.01 * std::polar(1.0, 3.0 * st.z_at(m));
    const double dt = 1e-3;
    const FilamentState back = step(step(st, dt), -dt);
    double worst = 0.0;
    for (int k = 0; k < st.n_filaments(); ++k)
        for (int m = 0; m < st.M; ++m) worst = std::max(worst, std::abs(back.f[k][m] - st.f[k][m]));
    CHECK(worst < 10.0 * dt * dt * dt);
}

TEST_CASE("spectral accuracy: doubling M leaves the rhs unchanged to 1e-10") {
    const int n = 3;
    const double nu = 0.2;
    for (int M : {64, 128}) {
        FilamentState st = helix_exact(n, nu, 0.0, M);
        // smooth analytic perturbation
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < M; ++m) st.f[k][m] += 0.05 * std::polar(1.0, 2.0 * st.z_at(m) + k);
        const auto rhs = kmd_rhs(st);
        // compare at the common z = 0 sample
        static cplx coarse;
        if (M == 64)
            coarse = rhs[0][0];
        else
            CHECK(std::abs(rhs[0][0] - coarse) < 1e-10);
    }
}

TEST_CASE("centroid conservation under stepping") {
    FilamentState st = helix_exact(3, 0.2, 0.0, 64);
    for (int m = 0; m < st.M; ++m) st.f[1][m] += 0.05 * std::polar(1.0, st.z_at(m));
    const cplx c0 = centroid(st);
    const FilamentState out = integrate(st, 1.0, 1e-3);
    CHECK(std::abs(centroid(out) - c0) < 1e-8);
}

TEST_CASE("relative_equilibrium_check: exact family stays put, nu recovered") {
    const EquilibriumReport rep = relative_equilibrium_check(3, 0.2, HelixFamily::polygon, 1.0, 1e-3, 64, 0.0);
    CHECK(rep.max_deviation < 1e-6);
    const double d_hat = std::sqrt((3.0 - 1.0) / (1.0 - 0.2));
    CHECK(std::fabs(rep.nu_recovered - (1.0 - 2.0 / (d_hat * d_hat))) < 1e-4);
    CHECK(rep.centroid_drift < 1e-10);
}

TEST_CASE("relative_equilibrium_check: small perturbations grow at a finite rate") {
    const EquilibriumReport rep = relative_equilibrium_check(3, 0.2, HelixFamily::polygon, 1.0, 1e-3, 64, 1e-3, 4242);
    CHECK(rep.initial_deviation > 0.0);
    CHECK(rep.max_deviation < 0.5);  // no blow-up before the collision tolerance
    const double lambda = std::log(std::max(rep.growth_factor, 1e-12)) / 1.0;
    CHECK(std::isfinite(lambda));
    CHECK(lambda < 10.0);
}

TEST_CASE("resolution guard flags underresolved curves") {
    FilamentState st = helix_exact(2, 0.0, 0.0, 64);
    CHECK(st.high_mode_fraction(0) < 1e-10);
    for (int m = 0; m < st.M; ++m) st.f[0][m] += 0.5 * std::polar(1.0, 30.0 * st.z_at(m));
    CHECK(st.high_mode_fraction(0) > 1e-6);
}
