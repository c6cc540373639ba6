// Lyapunov-Schmidt projections of the error against the vortex kernel w_x1,
// the balance relation for the helix radius d_hat, and the root location for
// both vortex families.
#pragma once

#include <string>

#include "gphelix/error_analysis.hpp"

namespace gphelix {

// c_* = Re int chi |w_x1|^2 over B(0,4) (chi vanishes beyond 4);
// polar quadrature refined until the stated relative change is met.
double compute_c_star(const RadialProfile& p, double R_eps, double rel_tol = 1e-8);

// B_x = Re int_{B(0,R_proj)} i w(z) R_x(z + xi_1) conj(w_x1(z)) dA.
// The projection ball uses half the nearest-neighbor vortex distance, which
// maximizes the logarithmic coverage the leading-order coefficients assume.
double compute_B(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p,
                 double rel_tol = 1e-4);

double projection_radius(const VortexConfiguration& cfg);

// Projection of an arbitrary R-like sampler (in the global variable) against
// the vortex-1 kernel; used for the additivity and orthogonality checks.
double project_against_kernel(const FieldSampler& R_global, const VortexConfiguration& cfg,
                              const RadialProfile& p, double radius, int n_rad = 48, int n_ang = 128);

struct BalanceResult {
    double measured = 0.0;   // B_a + B_b + B_c
    double model = 0.0;      // eps sqrt|log eps| (-a0/d_hat + a1~ d_hat)
    double a0 = 0.0;         // (n-1) pi, or (n_plus - 3) pi for the central family
    double a1_tilde = 0.0;   // (1-c) pi
    double B_a = 0.0, B_b = 0.0, B_c = 0.0;
};
BalanceResult balance(const VortexConfiguration& cfg, const RadialProfile& p);

struct BracketError : std::runtime_error {
    BracketError(const std::string& msg, double flo, double fhi)
        : std::runtime_error(msg), f_lo(flo), f_hi(fhi) {}
    double f_lo, f_hi;
};

struct ReductionReport {
    double c_star = 0.0;
    double B_a = 0.0, B_b = 0.0, B_c = 0.0;
    double balance_measured = 0.0, balance_model = 0.0;
    double d_hat_root = 0.0;
    double asymptotic_root = 0.0;
    int n_plus = 0, n_minus = 0;
    double eps = 0.0, c = 0.0;
    std::string note;
};

// Bisection on the measured balance over [bracket_lo, bracket_hi] to relative
// tolerance 1e-3; reports the distance to the asymptotic root.
ReductionReport solve_dhat(int n_plus, int n_minus, double c, double eps, double bracket_lo, double bracket_hi,
                           const RadialProfile& p);

double asymptotic_root(int n_plus, int n_minus, double c);

std::string reduction_report_to_json(const ReductionReport& r);

}  // namespace gphelix
