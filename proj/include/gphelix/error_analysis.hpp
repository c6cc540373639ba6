// Closed-form expansions of the ansatz error E = S(V_d) split into the planar
// GL part (a), the screw-symmetry part (b) and the traveling-wave part (c),
// together with the weighted norms, angular Fourier analysis and the odd/even
// reflection decomposition used by the reduction.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gphelix/ansatz.hpp"

namespace gphelix {

enum class ErrorComponent { a, b, c, total };

// E_x(z) = S_x(V_d)(z) in closed form; domain error at vortex centers.
cplx closed_form_E(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p, cplx z);
// R_x with E_x = i V_d R_x, evaluated without dividing by V_d.
cplx closed_form_R(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p, cplx z);

inline cplx closed_form_Ea(const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    return closed_form_E(ErrorComponent::a, cfg, p, z);
}
inline cplx closed_form_Eb(const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    return closed_form_E(ErrorComponent::b, cfg, p, z);
}
inline cplx closed_form_Ec(const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    return closed_form_E(ErrorComponent::c, cfg, p, z);
}

// Field wrapper tagged by component, carrying the representation E = i V_d R.
struct ErrorField {
    ErrorComponent component;
    const VortexConfiguration* cfg;
    const RadialProfile* profile;
    cplx E(cplx z) const { return closed_form_E(component, *cfg, *profile, z); }
    cplx R(cplx z) const { return closed_form_R(component, *cfg, *profile, z); }
};

// Per-ring angular Fourier analysis in the frame of vortex j, against the
// basis h = h1 sin(k theta) + i h2 cos(k theta). Requires the reflection
// symmetry h(conj zt) = -conj(h(zt)) in that frame.
struct FourierModes {
    std::vector<double> radii;
    std::vector<std::vector<double>> h1, h2;  // [ring][k], k = 0..K_max
    double max_symmetry_violation = 0.0;
    double max_reconstruction_error = 0.0;
};
FourierModes fourier_decompose(const FieldSampler& h, const VortexConfiguration& cfg, int j, int K_max,
                               const std::vector<double>& ring_radii, int samples_per_ring = 256,
                               double sym_tol = 1e-8);

// Reflection-based odd/even split: odd = sum_j eta_{j,R_eps} * (h + conj h o R_j)/2.
struct OddEvenSplit {
    FieldSampler odd, even;
};
OddEvenSplit odd_even_split(const FieldSampler& h, const VortexConfiguration& cfg);
cplx reflect_vortex(const VortexConfiguration& cfg, int j, cplx z);

struct NormReport {
    std::string norm_id;
    double value = 0.0;
    // contributing terms (zero when a norm has no such part)
    double near_vortex = 0.0;   // sum_j of the near-disk Hoelder/C^{k,alpha} pieces
    double far_sup = 0.0;        // weighted far-field sup group
    double holder_re = 0.0;      // weighted Hoelder seminorm, real part
    double holder_im = 0.0;      // weighted Hoelder seminorm, imaginary part
    double alpha = 0.5, sigma = 0.5;
    double R_eps = 0.0;
    std::string note;
};

// The ** norm of the global error estimate. Sampled sups and sampled Hoelder
// pairs (a lower bound of the true sup; adequate for trend acceptance tests).
NormReport norm_star_star(const FieldSampler& h, const VortexConfiguration& cfg, const RadialProfile& p,
                          double alpha = 0.5, double sigma = 0.5);

// The * norm on perturbations psi (derivatives by finite differences).
NormReport norm_star(const FieldSampler& psi, const VortexConfiguration& cfg, const RadialProfile& p,
                     double alpha = 0.5, double sigma = 0.5);

// | . |_sharp seminorm on psi (log-weighted growth up to R_eps).
NormReport seminorm_sharp(const FieldSampler& psi, const VortexConfiguration& cfg, const RadialProfile& p,
                          double alpha = 0.5, double sigma = 0.5);

// | . |_sharpsharp seminorm on error-like fields.
NormReport seminorm_sharpsharp(const FieldSampler& h, const VortexConfiguration& cfg, const RadialProfile& p,
                               double alpha = 0.5, double sigma = 0.5);

// The explicit slowly-decaying odd combination extracted from the screw part
// of the error, reflected and cut off; R^o = Rhat_o + Rtilde_o.
struct ErrorDecomposition {
    FieldSampler R_total;   // closed-form R of the full error
    FieldSampler R_odd;     // reflection-odd part, localized by eta_{j,R_eps}
    FieldSampler R_even;    // R_total - R_odd
    FieldSampler Rhat_o;    // slow-decay odd representative
    FieldSampler Rtilde_o;  // R_odd - Rhat_o
};
ErrorDecomposition build_Rhat_o(const VortexConfiguration& cfg, const RadialProfile& p);

std::string norm_report_to_json(const NormReport& r);

}  // namespace gphelix
