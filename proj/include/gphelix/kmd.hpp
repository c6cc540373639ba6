// Klein-Majda-Damodaran system for n nearly parallel filaments with periodic
// z on [0, 2pi): -i dt f_k - dzz f_k - 2 sum_{j!=k} d_j d_k (f_k-f_j)/|f_k-f_j|^2 = 0.
// Spectral in z, integrating-factor two-stage stepping in t.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gphelix/numerics.hpp"

namespace gphelix {

struct CollisionError : std::runtime_error {
    explicit CollisionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FilamentState {
    double t = 0.0;
    int M = 0;                             // z samples, power of two
    std::vector<std::vector<cplx>> f;      // [filament][z index]
    std::vector<int> degrees;              // +1 / -1
    double collision_tol = 1e-6;

    int n_filaments() const { return static_cast<int>(f.size()); }
    double z_at(int m) const { return 2.0 * kPi * m / M; }
    // smallest pairwise distance over the z grid
    double min_pair_distance() const;
    // fraction of spectral energy in the highest third of modes (resolution guard)
    double high_mode_fraction(int k) const;
    void check_invariants() const;  // throws CollisionError / runtime_error
};

enum class HelixFamily { polygon, central_minus };

// Exact rotating-helix families: f_k = d_hat e^{i(z - nu t)} e^{2 i (k-1) pi / n},
// d_hat = sqrt((n-1)/(1-nu)); the central_minus family adds f_0 = 0 of degree -1
// and uses d_hat = sqrt((N-3)/(1-nu)) for its N ring filaments.
FilamentState helix_exact(int n, double nu, double t, int M, HelixFamily family = HelixFamily::polygon);

// d f_k / dt = i [ dzz f_k + 2 sum_{j!=k} d_j d_k (f_k - f_j)/|f_k - f_j|^2 ].
std::vector<std::vector<cplx>> kmd_rhs(const FilamentState& state);

// One integrating-factor step: linear phase e^{-i m^2 dt} exact per mode,
// interaction advanced with a two-stage explicit rule (observed order >= 2).
FilamentState step(const FilamentState& state, double dt);

FilamentState integrate(FilamentState state, double T, double dt);

// weighted centroid sum_k d_k mean_z f_k (conserved for equal degrees)
cplx centroid(const FilamentState& state);

struct EquilibriumReport {
    double max_deviation = 0.0;       // from the rotated exact family at time T
    double growth_factor = 0.0;       // deviation(T) / deviation(0), delta > 0 runs
    double nu_recovered = 0.0;        // from the phase drift of the first ring mode
    double centroid_drift = 0.0;
    double initial_deviation = 0.0;
};
EquilibriumReport relative_equilibrium_check(int n, double nu, HelixFamily family, double T, double dt, int M,
                                             double delta, unsigned seed = 12345);

// CSV rows t,k,z_index,Re f,Im f (appends snapshots).
void append_trajectory_csv(const FilamentState& state, const std::string& path, bool header);

}  // namespace gphelix
