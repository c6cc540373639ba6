#include "gphelix/operators.hpp"

#include <cmath>
#include <limits>

namespace gphelix {

namespace {

const cplx kI(0.0, 1.0);
const double kNaN = std::numeric_limits<double>::quiet_NaN();

int halo_of(const OperatorParams& par) {
    if (par.order != 2 && par.order != 4) throw std::invalid_argument("OperatorParams: stencil order must be 2 or 4");
    return par.order == 4 ? 2 : 1;
}

struct PolarStencil {
    // derivatives of a polar field at node (i,j)
    cplx v, dr, drr, ds, dss;
};

// centered differences, order 2 or 4, periodic in s
PolarStencil polar_derivs(const ComplexField& f, const PolarGrid& g, int i, int j, int order) {
    const double dr = g.dr, ds = g.ds();
    auto at = [&](int ii, int jj) -> cplx {
        jj = ((jj % g.ns) + g.ns) % g.ns;
        return f.values[static_cast<std::size_t>(ii) * g.ns + jj];
    };
    PolarStencil st;
    st.v = at(i, j);
    if (order == 4) {
        st.dr = (at(i - 2, j) - 8.0 * at(i - 1, j) + 8.0 * at(i + 1, j) - at(i + 2, j)) / (12.0 * dr);
        st.drr = (-at(i - 2, j) + 16.0 * at(i - 1, j) - 30.0 * at(i, j) + 16.0 * at(i + 1, j) - at(i + 2, j)) /
                 (12.0 * dr * dr);
        st.ds = (at(i, j - 2) - 8.0 * at(i, j - 1) + 8.0 * at(i, j + 1) - at(i, j + 2)) / (12.0 * ds);
        st.dss = (-at(i, j - 2) + 16.0 * at(i, j - 1) - 30.0 * at(i, j) + 16.0 * at(i, j + 1) - at(i, j + 2)) /
                 (12.0 * ds * ds);
    } else {
        st.dr = (at(i + 1, j) - at(i - 1, j)) / (2.0 * dr);
        st.drr = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (dr * dr);
        st.ds = (at(i, j + 1) - at(i, j - 1)) / (2.0 * ds);
        st.dss = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (ds * ds);
    }
    return st;
}

const PolarGrid& polar_of(const ComplexField& f, const char* who) {
    if (!std::holds_alternative<PolarGrid>(f.grid)) throw std::invalid_argument(std::string(who) + ": polar field required");
    return std::get<PolarGrid>(f.grid);
}

void check_margin(const PolarGrid& g, const OperatorParams& par, const char* who) {
    if (g.nr < 2 * halo_of(par) + 1) throw std::invalid_argument(std::string(who) + ": insufficient radial margin");
    if (par.eps > 0.0) {
        const double weight = par.eps * par.eps / (g.ds() * g.ds());
        if (!(weight > 0.0) || !std::isfinite(weight))
            throw std::invalid_argument(std::string(who) + ": eps^2 angular stencil weight underflows");
    }
}

// generic loop over interior nodes; boundary halo marked NaN
template <class F>
ComplexField map_interior(const ComplexField& f, const OperatorParams& par, const char* who, F&& kernel) {
    const PolarGrid& g = polar_of(f, who);
    f.check();
    check_margin(g, par, who);
    ComplexField out;
    out.grid = g;
    out.values.assign(f.values.size(), cplx(kNaN, kNaN));
    const int halo = halo_of(par);
    for (int i = halo; i < g.nr - halo; ++i)
        for (int j = 0; j < g.ns; ++j)
            out.values[static_cast<std::size_t>(i) * g.ns + j] = kernel(i, j);
    return out;
}

cplx S_terms(const PolarStencil& st, double r, const OperatorParams& par, int which /*0=S,1=a,2=b,3=c*/) {
    const double eps2 = par.eps * par.eps;
    const double lg = par.log_eps_abs();
    const cplx lap = st.drr + st.dr / r + st.dss / (r * r);
    const cplx a = lap + (1.0 - std::norm(st.v)) * st.v;
    const cplx b = eps2 * (st.dss - 2.0 * par.n * kI * st.ds - static_cast<double>(par.n) * par.n * st.v);
    const cplx c = -kI * par.c * lg * eps2 * (kI * static_cast<double>(par.n) * st.v - st.ds);
    switch (which) {
        case 1: return a;
        case 2: return b;
        case 3: return c;
        default: return a + b + c;
    }
}

}  // namespace

double OperatorParams::log_eps_abs() const { return eps > 0.0 ? std::fabs(std::log(eps)) : 0.0; }

OperatorParams OperatorParams::from_config(const VortexConfiguration& cfg, int order) {
    OperatorParams par;
    par.eps = cfg.eps;
    par.c = cfg.c;
    par.n = cfg.n;
    par.order = order;
    return par;
}

ComplexField apply_S(const ComplexField& field, const OperatorParams& par) {
    const PolarGrid& g = polar_of(field, "apply_S");
    return map_interior(field, par, "apply_S", [&](int i, int j) {
        return S_terms(polar_derivs(field, g, i, j, par.order), g.radius(i), par, 0);
    });
}

SParts apply_S_parts(const ComplexField& field, const OperatorParams& par) {
    const PolarGrid& g = polar_of(field, "apply_S_parts");
    SParts out;
    out.a = map_interior(field, par, "apply_S_parts", [&](int i, int j) {
        return S_terms(polar_derivs(field, g, i, j, par.order), g.radius(i), par, 1);
    });
    out.b = map_interior(field, par, "apply_S_parts", [&](int i, int j) {
        return S_terms(polar_derivs(field, g, i, j, par.order), g.radius(i), par, 2);
    });
    out.c = map_interior(field, par, "apply_S_parts", [&](int i, int j) {
        return S_terms(polar_derivs(field, g, i, j, par.order), g.radius(i), par, 3);
    });
    return out;
}

namespace {

// small polar patch centered on z; radial step h, angular step h/r
ComplexField patch_around(const FieldSampler& v, cplx z, double h, int halo) {
    const double r = std::abs(z);
    if (r <= (halo + 1) * h) throw std::invalid_argument("pointwise operator: point too close to the origin for step h");
    PolarGrid g;
    g.dr = h;
    g.nr = 2 * halo + 1;
    g.r0 = r - halo * h;
    // angular step h/r, embedded in a notional full circle; we only fill the
    // stencil column and wrap indices far apart, so ns just needs to exceed
    // the stencil width
    g.ns = 2 * halo + 1;
    ComplexField f;
    f.grid = g;
    f.values.resize(static_cast<std::size_t>(g.nr) * g.ns);
    const double s0 = std::arg(z);
    const double ds = h / r;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ns; ++j) {
            const double rr = g.r0 + i * g.dr;
            const double ss = s0 + (j - halo) * ds;
            f.values[static_cast<std::size_t>(i) * g.ns + j] = v(rr * cplx(std::cos(ss), std::sin(ss)));
        }
    return f;
}

// derivatives at the center of such a patch, honoring the custom angular step
PolarStencil patch_derivs(const ComplexField& f, double r, double h, int halo, int order) {
    const int ns = 2 * halo + 1;
    auto at = [&](int i, int j) -> cplx { return f.values[static_cast<std::size_t>(i + halo) * ns + (j + halo)]; };
    const double ds = h / r;
    PolarStencil st;
    st.v = at(0, 0);
    if (order == 4) {
        st.dr = (at(-2, 0) - 8.0 * at(-1, 0) + 8.0 * at(1, 0) - at(2, 0)) / (12.0 * h);
        st.drr = (-at(-2, 0) + 16.0 * at(-1, 0) - 30.0 * at(0, 0) + 16.0 * at(1, 0) - at(2, 0)) / (12.0 * h * h);
        st.ds = (at(0, -2) - 8.0 * at(0, -1) + 8.0 * at(0, 1) - at(0, 2)) / (12.0 * ds);
        st.dss = (-at(0, -2) + 16.0 * at(0, -1) - 30.0 * at(0, 0) + 16.0 * at(0, 1) - at(0, 2)) / (12.0 * ds * ds);
    } else {
        st.dr = (at(1, 0) - at(-1, 0)) / (2.0 * h);
        st.drr = (at(1, 0) - 2.0 * at(0, 0) + at(-1, 0)) / (h * h);
        st.ds = (at(0, 1) - at(0, -1)) / (2.0 * ds);
        st.dss = (at(0, 1) - 2.0 * at(0, 0) + at(0, -1)) / (ds * ds);
    }
    return st;
}

}  // namespace

cplx apply_S_at(const FieldSampler& v, cplx z, double h, const OperatorParams& par) {
    const int halo = halo_of(par);
    const ComplexField f = patch_around(v, z, h, halo);
    return S_terms(patch_derivs(f, std::abs(z), h, halo, par.order), std::abs(z), par, 0);
}

SPartsAt apply_S_parts_at(const FieldSampler& v, cplx z, double h, const OperatorParams& par) {
    const int halo = halo_of(par);
    const ComplexField f = patch_around(v, z, h, halo);
    const PolarStencil st = patch_derivs(f, std::abs(z), h, halo, par.order);
    return {S_terms(st, std::abs(z), par, 1), S_terms(st, std::abs(z), par, 2), S_terms(st, std::abs(z), par, 3)};
}

namespace {

cplx L0_terms(const PolarStencil& st, double r, cplx vd, const OperatorParams& par) {
    const double eps2 = par.eps * par.eps;
    const double lg = par.log_eps_abs();
    const cplx lap = st.drr + st.dr / r + st.dss / (r * r);
    cplx out = lap + (1.0 - std::norm(vd)) * st.v - 2.0 * std::real(std::conj(vd) * st.v) * vd;
    out += eps2 * (st.dss - 2.0 * par.n * kI * st.ds - static_cast<double>(par.n) * par.n * st.v);
    out += -kI * par.c * lg * eps2 * (kI * static_cast<double>(par.n) * st.v - st.ds);
    return out;
}

}  // namespace

ComplexField apply_L0(const ComplexField& phi, const FieldSampler& Vd, const OperatorParams& par) {
    const PolarGrid& g = polar_of(phi, "apply_L0");
    return map_interior(phi, par, "apply_L0", [&](int i, int j) {
        return L0_terms(polar_derivs(phi, g, i, j, par.order), g.radius(i), Vd(g.point(i, j)), par);
    });
}

cplx apply_L0_at(const FieldSampler& phi, const FieldSampler& Vd, cplx z, double h, const OperatorParams& par) {
    const int halo = halo_of(par);
    const ComplexField f = patch_around(phi, z, h, halo);
    return L0_terms(patch_derivs(f, std::abs(z), h, halo, par.order), std::abs(z), Vd(z), par);
}

namespace {

cplx Lprime_terms(const PolarStencil& st, double r, double s, const LogDeriv& ld, cplx vd,
                  const OperatorParams& par) {
    const double eps2 = par.eps * par.eps;
    const double lg = par.log_eps_abs();
    const double cs = std::cos(s), sn = std::sin(s);
    const cplx dx1 = cs * st.dr - sn / r * st.ds;
    const cplx dx2 = sn * st.dr + cs / r * st.ds;
    const cplx lap = st.drr + st.dr / r + st.dss / (r * r);
    cplx out = lap + 2.0 * (ld.dx1 * dx1 + ld.dx2 * dx2) - 2.0 * kI * std::norm(vd) * std::imag(st.v);
    out += eps2 * (st.dss + 2.0 * ld.ds * st.ds - 2.0 * kI * static_cast<double>(par.n) * st.ds);
    out += kI * par.c * lg * eps2 * st.ds;
    return out;
}

}  // namespace

ComplexField apply_Lprime(const ComplexField& psi, const VortexConfiguration& cfg, const RadialProfile& p,
                          const OperatorParams& par) {
    const PolarGrid& g = polar_of(psi, "apply_Lprime");
    const int halo = halo_of(par);
    const double cell = std::max(g.dr, 1.0);
    return map_interior(psi, par, "apply_Lprime", [&](int i, int j) -> cplx {
        const cplx z = g.point(i, j);
        for (const cplx& xi : cfg.xi)
            if (std::abs(z - xi) < (halo + 0.5) * cell) return cplx(kNaN, kNaN);
        return Lprime_terms(polar_derivs(psi, g, i, j, par.order), g.radius(i), g.angle(j),
                            eval_logderiv_Vd(cfg, p, z), eval_Vd(cfg, p, z), par);
    });
}

cplx apply_Lprime_at(const FieldSampler& psi, const VortexConfiguration& cfg, const RadialProfile& p, cplx z,
                     double h, const OperatorParams& par) {
    const int halo = halo_of(par);
    for (const cplx& xi : cfg.xi)
        if (std::abs(z - xi) < (halo + 1) * h) throw std::domain_error("apply_Lprime_at: stencil touches a vortex center");
    const ComplexField f = patch_around(psi, z, h, halo);
    return Lprime_terms(patch_derivs(f, std::abs(z), h, halo, par.order), std::abs(z), std::arg(z),
                        eval_logderiv_Vd(cfg, p, z), eval_Vd(cfg, p, z), par);
}

cplx alpha_j(const VortexConfiguration& cfg, const RadialProfile& p, int j, cplx z) {
    cplx prod(1.0, 0.0);
    for (std::size_t m = 0; m < cfg.xi.size(); ++m) {
        if (static_cast<int>(m) == j) continue;
        const cplx wm = eval_w(p, z - cfg.xi[m]).w;
        prod *= (cfg.degrees[m] > 0) ? wm : std::conj(wm);
    }
    if (cfg.degrees.at(j) < 0) {
        // V_d / w_j with a conjugate central factor: V_d = conj(w_j) * rest
        const cplx wj = eval_w(p, z - cfg.xi[j]).w;
        return prod * std::conj(wj) / wj;
    }
    return prod;
}

cplx apply_Lj_at(const FieldSampler& phi_j, const VortexConfiguration& cfg, const RadialProfile& p, int j, cplx zt,
                 double h, const OperatorParams& par) {
    const cplx xi = cfg.xi.at(j);
    FieldSampler psi = [&](cplx z) -> cplx {
        const cplx wz = eval_w(p, z - xi).w;
        return phi_j(z - xi) / (kI * wz);
    };
    const cplx w = eval_w(p, zt).w;
    return kI * w * apply_Lprime_at(psi, cfg, p, zt + xi, h, par);
}

cplx apply_Lj_at_via_L0(const FieldSampler& phi_j, const VortexConfiguration& cfg, const RadialProfile& p, int j,
                        cplx zt, double h, const OperatorParams& par) {
    const cplx xi = cfg.xi.at(j);
    FieldSampler phi_glob = [&](cplx z) { return phi_j(z - xi) * alpha_j(cfg, p, j, z); };
    FieldSampler Vd = [&](cplx z) { return eval_Vd(cfg, p, z); };
    const cplx z = zt + xi;
    const cplx L0v = apply_L0_at(phi_glob, Vd, z, h, par);
    const cplx E = apply_S_at(Vd, z, h, par);
    return L0v / alpha_j(cfg, p, j, z) - E / eval_Vd(cfg, p, z) * phi_j(zt);
}

ComplexField apply_L_gl(const ComplexField& phi, const RadialProfile& p, cplx vortex_center) {
    if (!std::holds_alternative<CartesianGrid>(phi.grid))
        throw std::invalid_argument("apply_L_gl: cartesian field required");
    const CartesianGrid& g = std::get<CartesianGrid>(phi.grid);
    phi.check();
    if (g.nx < 3 || g.ny < 3) throw std::invalid_argument("apply_L_gl: patch too small");
    ComplexField out;
    out.grid = g;
    out.values.assign(phi.values.size(), cplx(kNaN, kNaN));
    auto at = [&](int i, int j) { return phi.values[static_cast<std::size_t>(i) * g.ny + j]; };
    for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.ny - 1; ++j) {
            const cplx lap = (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j)) / (g.h * g.h);
            const cplx w = eval_w(p, g.point(i, j) - vortex_center).w;
            out.values[static_cast<std::size_t>(i) * g.ny + j] =
                lap + (1.0 - std::norm(w)) * at(i, j) - 2.0 * std::real(std::conj(w) * at(i, j)) * w;
        }
    return out;
}

double gl_residual(const RadialProfile& p, const CartesianGrid& patch, const FieldSampler& phi) {
    const ComplexField f = sample_cartesian(patch, phi);
    const ComplexField Lf = apply_L_gl(f, p);
    double worst = 0.0;
    for (int i = 1; i < patch.nx - 1; ++i)
        for (int j = 1; j < patch.ny - 1; ++j)
            worst = std::max(worst, std::abs(Lf.values[static_cast<std::size_t>(i) * patch.ny + j]));
    return worst;
}

double kernel_residual(const RadialProfile& p, const CartesianGrid& patch) {
    return gl_residual(p, patch, [&](cplx z) { return eval_w(p, z).w_x1; });
}

cplx nonlinear_N_far_at(const FieldSampler& psi, cplx z, double h, const OperatorParams& par) {
    // Cartesian centered gradients; ds = x1 d_x2 - x2 d_x1
    const cplx dx1 = (psi(z + h) - psi(z - h)) / (2.0 * h);
    const cplx dx2 = (psi(z + kI * h) - psi(z - kI * h)) / (2.0 * h);
    const cplx ds = z.real() * dx2 - z.imag() * dx1;
    const double im = std::imag(psi(z));
    return kI * (dx1 * dx1 + dx2 * dx2) + par.eps * par.eps * (ds * ds) +
           kI * (std::exp(-2.0 * im) - 1.0 + 2.0 * im);
}

ComplexField nonlinear_N_far(const ComplexField& psi, const OperatorParams& par) {
    const PolarGrid& g = polar_of(psi, "nonlinear_N_far");
    return map_interior(psi, par, "nonlinear_N_far", [&](int i, int j) {
        const PolarStencil st = polar_derivs(psi, g, i, j, par.order);
        const double r = g.radius(i), s = g.angle(j);
        const double cs = std::cos(s), sn = std::sin(s);
        const cplx dx1 = cs * st.dr - sn / r * st.ds;
        const cplx dx2 = sn * st.dr + cs / r * st.ds;
        const double im = std::imag(st.v);
        return kI * (dx1 * dx1 + dx2 * dx2) + par.eps * par.eps * (st.ds * st.ds) +
               kI * (std::exp(-2.0 * im) - 1.0 + 2.0 * im);
    });
}

}  // namespace gphelix
