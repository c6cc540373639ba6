#include "gphelix/kmd.hpp"

#include <cmath>
#include <limits>
#include <fstream>
#include <iomanip>
#include <random>

namespace gphelix {

namespace {

const cplx kI(0.0, 1.0);

// signed mode number for index m in an M-point FFT
int mode_of(int m, int M) { return (m <= M / 2) ? m : m - M; }

std::vector<cplx> second_derivative_spectral(const std::vector<cplx>& f) {
    const int M = static_cast<int>(f.size());
    std::vector<cplx> hat = f;
    fft_pow2(hat, -1);
    for (int m = 0; m < M; ++m) {
        const double k = mode_of(m, M);
        hat[m] *= -k * k;
    }
    fft_pow2(hat, +1);
    for (auto& v : hat) v /= static_cast<double>(M);
    return hat;
}

std::vector<std::vector<cplx>> interaction(const FilamentState& st) {
    const int n = st.n_filaments();
    std::vector<std::vector<cplx>> out(n, std::vector<cplx>(st.M, cplx(0, 0)));
    for (int m = 0; m < st.M; ++m) {
        for (int k = 0; k < n; ++k) {
            cplx acc(0, 0);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                const cplx diff = st.f[k][m] - st.f[j][m];
                const double d2 = std::norm(diff);
                if (d2 < st.collision_tol * st.collision_tol)
                    throw CollisionError("kmd: filament pair distance below collision tolerance");
                acc += static_cast<double>(st.degrees[j] * st.degrees[k]) * diff / d2;
            }
            out[k][m] = 2.0 * kI * acc;
        }
    }
    return out;
}

// exact linear flow e^{-i m^2 dt} in Fourier space
void linear_flow(std::vector<cplx>& f, double dt) {
    const int M = static_cast<int>(f.size());
    fft_pow2(f, -1);
    for (int m = 0; m < M; ++m) {
        const double k = mode_of(m, M);
        const double phase = -k * k * dt;
        f[m] *= cplx(std::cos(phase), std::sin(phase));
    }
    fft_pow2(f, +1);
    for (auto& v : f) v /= static_cast<double>(M);
}

}  // namespace

double FilamentState::min_pair_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m)
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) best = std::min(best, std::abs(f[a][m] - f[b][m]));
    return best;
}

double FilamentState::high_mode_fraction(int k) const {
    std::vector<cplx> hat = f.at(k);
    fft_pow2(hat, -1);
    double total = 0.0, high = 0.0;
    for (int m = 0; m < M; ++m) {
        const double e = std::norm(hat[m]);
        total += e;
        if (std::abs(mode_of(m, M)) > M / 3) high += e;
    }
    return total > 0.0 ? high / total : 0.0;
}

void FilamentState::check_invariants() const {
    if (!is_pow2(static_cast<std::size_t>(M))) throw std::runtime_error("FilamentState: M must be a power of two");
    for (const auto& curve : f)
        if (static_cast<int>(curve.size()) != M) throw std::runtime_error("FilamentState: curve length mismatch");
    if (f.size() != degrees.size()) throw std::runtime_error("FilamentState: degrees mismatch");
    if (f.size() > 1 && min_pair_distance() <= collision_tol)
        throw CollisionError("FilamentState: filaments closer than collision tolerance");
    // resolution guard, scaled by the dominant curve so that numerically
    // zero filaments (pure rounding noise) do not trip it
    double global_max = 0.0;
    std::vector<double> totals(f.size(), 0.0), highs(f.size(), 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::vector<cplx> hat = f[k];
        fft_pow2(hat, -1);
        for (int m = 0; m < M; ++m) {
            const double e = std::norm(hat[m]);
            totals[k] += e;
            if (std::abs(mode_of(m, M)) > M / 3) highs[k] += e;
        }
        global_max = std::max(global_max, totals[k]);
    }
    for (std::size_t k = 0; k < f.size(); ++k)
        if (global_max > 0.0 && highs[k] >= 1e-6 * std::max(totals[k], 1e-12 * global_max))
            throw std::runtime_error("FilamentState: curve underresolved (high-mode energy above guard)");
}

FilamentState helix_exact(int n, double nu, double t, int M, HelixFamily family) {
    if (nu >= 1.0) throw std::invalid_argument("helix_exact: need nu < 1");
    if (!is_pow2(static_cast<std::size_t>(M))) throw std::invalid_argument("helix_exact: M must be a power of two");
    FilamentState st;
    st.t = t;
    st.M = M;
    if (family == HelixFamily::polygon) {
        if (n < 2) throw std::invalid_argument("helix_exact: polygon family needs n >= 2");
        const double d_hat = std::sqrt((n - 1.0) / (1.0 - nu));
        st.collision_tol = 1e-3 * d_hat;
        for (int k = 0; k < n; ++k) {
            const cplx phase = std::polar(d_hat, 2.0 * kPi * k / n - nu * t);
            std::vector<cplx> curve(M);
            for (int m = 0; m < M; ++m) curve[m] = phase * std::polar(1.0, st.z_at(m));
            st.f.push_back(std::move(curve));
            st.degrees.push_back(+1);
        }
    } else {
        if (n < 4) throw std::invalid_argument("helix_exact: central family needs N >= 4 ring filaments");
        const double d_hat = std::sqrt((n - 3.0) / (1.0 - nu));
        st.collision_tol = 1e-3 * d_hat;
        st.f.push_back(std::vector<cplx>(M, cplx(0.0, 0.0)));  // straight central filament
        st.degrees.push_back(-1);
        for (int k = 0; k < n; ++k) {
            const cplx phase = std::polar(d_hat, 2.0 * kPi * k / n - nu * t);
            std::vector<cplx> curve(M);
            for (int m = 0; m < M; ++m) curve[m] = phase * std::polar(1.0, st.z_at(m));
            st.f.push_back(std::move(curve));
            st.degrees.push_back(+1);
        }
    }
    st.check_invariants();
    return st;
}

std::vector<std::vector<cplx>> kmd_rhs(const FilamentState& state) {
    state.check_invariants();
    auto out = interaction(state);
    for (int k = 0; k < state.n_filaments(); ++k) {
        const auto dzz = second_derivative_spectral(state.f[k]);
        for (int m = 0; m < state.M; ++m) out[k][m] += kI * dzz[m];
    }
    return out;
}

FilamentState step(const FilamentState& state, double dt) {
    // Lawson two-stage rule: u' = L u + N(u), with L exact in Fourier space.
    FilamentState out = state;
    const auto N0 = interaction(state);
    const int n = state.n_filaments();

    // predictor: f1 = e^{L dt} (f + dt N0)
    std::vector<std::vector<cplx>> f1(n);
    for (int k = 0; k < n; ++k) {
        f1[k] = state.f[k];
        for (int m = 0; m < state.M; ++m) f1[k][m] += dt * N0[k][m];
        linear_flow(f1[k], dt);
    }
    FilamentState mid = state;
    mid.f = f1;
    mid.t = state.t + dt;
    const auto N1 = interaction(mid);

    for (int k = 0; k < n; ++k) {
        std::vector<cplx> a = state.f[k];
        for (int m = 0; m < state.M; ++m) a[m] += 0.5 * dt * N0[k][m];
        linear_flow(a, dt);
        for (int m = 0; m < state.M; ++m) out.f[k][m] = a[m] + 0.5 * dt * N1[k][m];
    }
    out.t = state.t + dt;
    out.check_invariants();
    return out;
}

FilamentState integrate(FilamentState state, double T, double dt) {
    const long steps = std::lround(T / dt);
    for (long s = 0; s < steps; ++s) state = step(state, dt);
    return state;
}

cplx centroid(const FilamentState& state) {
    cplx acc(0, 0);
    for (int k = 0; k < state.n_filaments(); ++k) {
        cplx mean(0, 0);
        for (int m = 0; m < state.M; ++m) mean += state.f[k][m];
        acc += static_cast<double>(state.degrees[k]) * mean / static_cast<double>(state.M);
    }
    return acc;
}

EquilibriumReport relative_equilibrium_check(int n, double nu, HelixFamily family, double T, double dt, int M,
                                             double delta, unsigned seed) {
    if (delta < 0.0) throw std::invalid_argument("relative_equilibrium_check: delta must be >= 0");
    FilamentState st = helix_exact(n, nu, 0.0, M, family);
    const FilamentState exact_T = helix_exact(n, nu, T, M, family);

    if (delta > 0.0) {
        // smooth random perturbation: a few low Fourier modes per filament
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (auto& curve : st.f) {
            for (int mode = -2; mode <= 2; ++mode) {
                const cplx amp = delta * cplx(unif(rng), unif(rng));
                for (int m = 0; m < M; ++m) curve[m] += amp * std::polar(1.0, mode * st.z_at(m));
            }
        }
    }
    EquilibriumReport rep;
    for (int k = 0; k < st.n_filaments(); ++k)
        for (int m = 0; m < M; ++m)
            rep.initial_deviation = std::max(rep.initial_deviation, std::abs(st.f[k][m] - helix_exact(n, nu, 0.0, M, family).f[k][m]));

    const cplx centroid0 = centroid(st);
    // phase of the first ring filament's fundamental mode before/after
    const int ring0 = (family == HelixFamily::central_minus) ? 1 : 0;
    auto mode1 = [&](const FilamentState& s) {
        std::vector<cplx> hat = s.f[ring0];
        fft_pow2(hat, -1);
        return hat[1] / static_cast<double>(s.M);
    };
    const cplx c1_0 = mode1(st);

    const FilamentState fin = integrate(st, T, dt);
    for (int k = 0; k < fin.n_filaments(); ++k)
        for (int m = 0; m < M; ++m)
            rep.max_deviation = std::max(rep.max_deviation, std::abs(fin.f[k][m] - exact_T.f[k][m]));
    rep.growth_factor = (rep.initial_deviation > 0.0) ? rep.max_deviation / rep.initial_deviation : 0.0;
    rep.nu_recovered = -std::arg(mode1(fin) / c1_0) / T;
    rep.centroid_drift = std::abs(centroid(fin) - centroid0);
    return rep;
}

void append_trajectory_csv(const FilamentState& state, const std::string& path, bool header) {
    std::ofstream os(path, header ? std::ios::trunc : std::ios::app);
    if (!os) throw std::runtime_error("append_trajectory_csv: cannot open " + path);
    if (header) os << "t,k,z_index,Re_f,Im_f\n";
    os << std::setprecision(17);
    for (int k = 0; k < state.n_filaments(); ++k)
        for (int m = 0; m < state.M; ++m)
            os << state.t << ',' << k << ',' << m << ',' << state.f[k][m].real() << ',' << state.f[k][m].imag() << '\n';
}

}  // namespace gphelix
