// Multi-vortex configurations and the product ansatz V_d: n+ vortices of
// degree +1 on a regular polygon of radius d_eps, optionally one degree -1
// vortex at the origin, plus the screw-symmetric 3D lift.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gphelix/field.hpp"
#include "gphelix/profile.hpp"

namespace gphelix {

struct VortexConfiguration {
    int n_plus = 0;    // degree +1 vortices on the polygon
    int n_minus = 0;   // 0 or 1 (degree -1 at the origin)
    double eps = 0.0;  // in (0, e^-2)
    double c = 0.0;    // speed coefficient, c < 1
    double d_hat = 0.0;
    double alpha0 = 0.0;  // coefficient of R_eps

    // derived
    double log_eps_abs = 0.0;  // |log eps|
    double d_eps = 0.0;        // d_hat / (eps sqrt|log eps|)
    double R_eps = 0.0;        // alpha0 / (eps |log eps|), <= d_eps/2
    int n = 0;                 // n_plus - n_minus

    std::vector<cplx> xi;       // vortex centers; polygon first, then origin
    std::vector<int> degrees;   // +1 / -1 matching xi
    std::vector<double> phi;    // polar angle of each center (0 for the origin)

    int total() const { return n_plus + n_minus; }
    // smallest center-to-center distance
    double min_separation() const;
};

// Validates all parameter ranges. alpha0 defaults to d_hat/sqrt(2), which
// makes R_eps hit d_eps/2 exactly at the largest admissible eps = e^-2.
VortexConfiguration make_config(int n_plus, int n_minus, double eps, double c, double d_hat,
                                std::optional<double> alpha0 = std::nullopt);

// Single-vortex (or otherwise out-of-range) configuration for diagnostics;
// skips the vortex-count requirements but keeps the eps/c range checks.
VortexConfiguration make_config_diagnostic(int n_plus, int n_minus, double eps, double c, double d_hat);

cplx eval_Vd(const VortexConfiguration& cfg, const RadialProfile& p, cplx z);

struct LogDeriv {
    cplx dx1, dx2;  // grad V_d / V_d, Cartesian components
    cplx ds;        // angular derivative about the origin, over V_d
};
// Sum of per-vortex logarithmic derivatives; z must avoid the centers.
LogDeriv eval_logderiv_Vd(const VortexConfiguration& cfg, const RadialProfile& p, cplx z);

// 3D approximation: polygon rotated by e^{i x3}, evaluated at (r/eps) e^{i theta}.
cplx lift_3d(const VortexConfiguration& cfg, const RadialProfile& p, double r, double theta, double x3);

// Max deviations of the two symmetry constraints on the perturbation:
//   psi(x1,-x2) = -conj(psi(x1,x2))   and   psi(e^{2 i pi/n+} z) = psi(z).
struct SymmetryReport {
    double conj_deviation = 0.0;
    double rotation_deviation = 0.0;
};
SymmetryReport check_psi_symmetries(const FieldSampler& psi, const VortexConfiguration& cfg,
                                    const std::vector<cplx>& samples);

// Cut-off machinery: eta = sum_j eta1(|z-xi_j|); eta_{j,R}; chi_j with scale 2.
double cutoff_eta(const VortexConfiguration& cfg, cplx z);
double cutoff_eta_jR(const VortexConfiguration& cfg, int j, double R, cplx z);
double cutoff_chi_j(const VortexConfiguration& cfg, int j, cplx z);

// Geometry of the vortex-centered polar frame and its angular derivatives:
//   r_j e^{i theta_j} = z - xi_j,
//   ds r_j = |xi_j| sin(theta_j - phi_j), ds theta_j = 1 + (|xi_j|/r_j) cos(theta_j - phi_j), ...
struct AngularFrame {
    double r, theta;
    double ds_r, ds_theta;
    double dss_r, dss_theta;
};
AngularFrame angular_frame(cplx z, cplx xi, double phi);

// JSON round-trip for configurations.
std::string config_to_json(const VortexConfiguration& cfg);
VortexConfiguration config_from_json(const std::string& text);

}  // namespace gphelix
