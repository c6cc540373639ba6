// Discrete application of the solution operator S and its parts, the
// linearizations L0, L', L_j^eps around the ansatz, the planar GL
// linearization L around a single vortex, and the far-field nonlinearity.
// Everything is centered finite differences; these provide the oracle side
// of the closed-form error expansions.
#pragma once

#include <functional>

#include "gphelix/ansatz.hpp"
#include "gphelix/field.hpp"

namespace gphelix {

struct OperatorParams {
    double eps = 0.0;  // 0 switches the symmetry/traveling terms off
    double c = 0.0;
    int n = 0;
    int order = 2;  // stencil order, 2 or 4

    double log_eps_abs() const;  // |log eps|, 0 when eps == 0
    static OperatorParams from_config(const VortexConfiguration& cfg, int order = 2);
};

// S(v) = Lap v + eps^2 (dss v - 2 n i ds v - n^2 v) - i c|log eps| eps^2 (i n v - ds v) + (1-|v|^2) v
// on a polar field; boundary rings (stencil halo) are set to NaN.
ComplexField apply_S(const ComplexField& field, const OperatorParams& par);

struct SParts {
    ComplexField a, b, c;
};
SParts apply_S_parts(const ComplexField& field, const OperatorParams& par);

// Pointwise variants built on a local polar patch with radial step h and
// matched arc step; used for convergence-order studies.
cplx apply_S_at(const FieldSampler& v, cplx z, double h, const OperatorParams& par);
struct SPartsAt {
    cplx a, b, c;
};
SPartsAt apply_S_parts_at(const FieldSampler& v, cplx z, double h, const OperatorParams& par);

// L0(phi) around V_d (real-linear; the projection term breaks complex linearity).
ComplexField apply_L0(const ComplexField& phi, const FieldSampler& Vd, const OperatorParams& par);
cplx apply_L0_at(const FieldSampler& phi, const FieldSampler& Vd, cplx z, double h, const OperatorParams& par);

// L'(psi) with analytic drift coefficients from eval_logderiv_Vd.
ComplexField apply_Lprime(const ComplexField& psi, const VortexConfiguration& cfg, const RadialProfile& p,
                          const OperatorParams& par);
cplx apply_Lprime_at(const FieldSampler& psi, const VortexConfiguration& cfg, const RadialProfile& p, cplx z,
                     double h, const OperatorParams& par);

// alpha_j(z) = V_d(z) / w(z - xi_j)
cplx alpha_j(const VortexConfiguration& cfg, const RadialProfile& p, int j, cplx z);

// L_j^eps(phi_j)(zt) = i w(zt) L'(psi)(zt + xi_j) with psi = phi_j(. - xi_j)/(i w(. - xi_j)).
// phi_j is sampled in the translated variable zt.
cplx apply_Lj_at(const FieldSampler& phi_j, const VortexConfiguration& cfg, const RadialProfile& p, int j, cplx zt,
                 double h, const OperatorParams& par);
// Independent algebraic route: L_j^eps(phi_j) = L0(alpha_j phi_j)/alpha_j - (E/V_d) phi_j,
// with E evaluated by finite differences of S(V_d). Used to cross-check apply_Lj_at.
cplx apply_Lj_at_via_L0(const FieldSampler& phi_j, const VortexConfiguration& cfg, const RadialProfile& p, int j,
                        cplx zt, double h, const OperatorParams& par);

// Planar GL linearization around the standard vortex:
//   L(phi) = Lap phi + (1-|w|^2) phi - 2 Re(conj(w) phi) w.
ComplexField apply_L_gl(const ComplexField& phi, const RadialProfile& p, cplx vortex_center = cplx(0, 0));

// max |L(w_x1)| over the interior of the patch (translation-invariance kernel).
double kernel_residual(const RadialProfile& p, const CartesianGrid& patch);
// same for an arbitrary sampled kernel candidate
double gl_residual(const RadialProfile& p, const CartesianGrid& patch, const FieldSampler& phi);

// Far-field nonlinearity N(psi) = i (grad psi)^2 + eps^2 (ds psi)^2 + i (e^{-2 Im psi} - 1 + 2 Im psi),
// gradients by centered differences at step h.
cplx nonlinear_N_far_at(const FieldSampler& psi, cplx z, double h, const OperatorParams& par);
ComplexField nonlinear_N_far(const ComplexField& psi, const OperatorParams& par);

}  // namespace gphelix
