// Degree-1 Ginzburg-Landau vortex profile: the modulus rho solves
//   rho'' + rho'/r - rho/r^2 + (1 - rho^2) rho = 0,  rho(0+)=0, rho(inf)=1,
// and the vortex field is w(z) = rho(|z|) e^{i arg z}.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gphelix/numerics.hpp"

namespace gphelix {

struct RadialProfile {
    std::vector<double> grid;        // strictly increasing radii, uniform spacing dr
    std::vector<double> rho;         // 0 < rho < 1
    std::vector<double> rho_prime;   // > 0
    std::vector<double> rho_second;  // tabulated for interpolation of rho'
    double alpha = 0.0;              // near-origin slope, rho = alpha r - alpha r^3/8 + O(r^5)
    double R_cut = 40.0;             // matching radius; asymptotic tail used beyond
    double tol = 1e-10;
    double dr = 0.0;
};

struct ProfileSolveError : std::runtime_error {
    ProfileSolveError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo, bracket_hi;
};

RadialProfile solve_profile(double R_cut = 40.0, double tol = 1e-10);

struct RhoEval {
    double rho, rho_prime, rho_second;
};
// Total on r >= 0: series below the first node, table interpolation up to
// R_cut, far-field asymptotics 1 - 1/(2r^2), 1/r^3, -3/r^4 beyond.
RhoEval eval_rho(const RadialProfile& p, double r);

struct WEval {
    cplx w, w_x1, w_x2;
};
WEval eval_w(const RadialProfile& p, cplx z);

// Second derivative of w along x2 (closed form via rho'', used by the
// reduction orthogonality checks).
cplx eval_w_x2x2(const RadialProfile& p, cplx z);

// Discrete ODE residual of the tabulated solution, using 4th-order finite
// differences of the rho' table (independent of the identity used to fill
// rho_second). Returns max |residual| over interior nodes with r <= r_max.
double profile_residual(const RadialProfile& p, double r_max);

// Winding number of w around the circle |z| = radius via phase accumulation.
int winding_number(const RadialProfile& p, double radius, int samples = 720);

// CSV columns r,rho,rho_prime; JSON header carries alpha, R_cut, tol.
void save_profile_csv(const RadialProfile& p, const std::string& csv_path, const std::string& json_path);
RadialProfile load_profile_csv(const std::string& csv_path, const std::string& json_path);

}  // namespace gphelix
