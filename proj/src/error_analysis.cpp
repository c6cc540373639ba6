#include "gphelix/error_analysis.hpp"

#include <cmath>
#include <limits>

#include "nlohmann/json.hpp"

namespace gphelix {

namespace {

const cplx kI(0.0, 1.0);

struct FactorData {
    double rho, rho_over_r, a;  // a = rho'/rho
    cplx g1, g2;                // grad w / w (already conjugated for deg -1)
    cplx Ls, Qs;                // ds log w, dss w / w (conjugated for deg -1)
};

// per-factor quantities entering every closed form
FactorData factor_data(const VortexConfiguration& cfg, const RadialProfile& p, std::size_t j, cplx z) {
    const cplx rel = z - cfg.xi[j];
    const double r = std::abs(rel);
    if (r < 1e-12) throw std::domain_error("closed form: evaluation at a vortex center");
    const RhoEval q = eval_rho(p, r);
    FactorData f;
    f.rho = q.rho;
    f.rho_over_r = q.rho / r;
    f.a = q.rho_prime / q.rho;
    const double ct = rel.real() / r, st = rel.imag() / r;
    f.g1 = cplx(f.a * ct, -st / r);
    f.g2 = cplx(f.a * st, ct / r);
    const AngularFrame fr = angular_frame(z, cfg.xi[j], cfg.phi[j]);
    f.Ls = cplx(fr.ds_r * f.a, fr.ds_theta);
    const double b = q.rho_second / q.rho;
    f.Qs = cplx(fr.dss_r * f.a + fr.ds_r * fr.ds_r * b - fr.ds_theta * fr.ds_theta,
                2.0 * fr.ds_r * f.a * fr.ds_theta + fr.dss_theta);
    if (cfg.degrees[j] < 0) {
        f.g1 = std::conj(f.g1);
        f.g2 = std::conj(f.g2);
        f.Ls = std::conj(f.Ls);
        f.Qs = std::conj(f.Qs);
    }
    return f;
}

// bracket X with S_a(V_d) = V_d X_a etc.
cplx bracket(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    const std::size_t N = cfg.xi.size();
    std::vector<FactorData> f;
    f.reserve(N);
    for (std::size_t j = 0; j < N; ++j) f.push_back(factor_data(cfg, p, j, z));

    auto bracket_a = [&]() {
        double pot = 0.0, prod2 = 1.0;
        cplx cross(0.0, 0.0);
        cplx sum_g1(0.0, 0.0), sum_g2(0.0, 0.0);
        cplx sum_g1sq(0.0, 0.0), sum_g2sq(0.0, 0.0);
        for (const auto& fd : f) {
            pot -= (1.0 - fd.rho * fd.rho);
            prod2 *= fd.rho * fd.rho;
            sum_g1 += fd.g1;
            sum_g2 += fd.g2;
            sum_g1sq += fd.g1 * fd.g1;
            sum_g2sq += fd.g2 * fd.g2;
        }
        // sum over ordered pairs of grad log w_a . grad log w_b
        cross = (sum_g1 * sum_g1 - sum_g1sq) + (sum_g2 * sum_g2 - sum_g2sq);
        return pot + (1.0 - prod2) + cross;
    };
    auto bracket_b = [&]() {
        cplx sumL(0.0, 0.0), sumQ(0.0, 0.0), sumL2(0.0, 0.0);
        for (const auto& fd : f) {
            sumL += fd.Ls;
            sumQ += fd.Qs;
            sumL2 += fd.Ls * fd.Ls;
        }
        const cplx dssV_over_V = sumQ + sumL * sumL - sumL2;
        const double n = cfg.n;
        return dssV_over_V - 2.0 * n * kI * sumL - n * n;
    };
    auto bracket_c = [&]() {
        cplx sumL(0.0, 0.0);
        for (const auto& fd : f) sumL += fd.Ls;
        return sumL - kI * static_cast<double>(cfg.n);
    };

    const double eps2 = cfg.eps * cfg.eps;
    switch (comp) {
        case ErrorComponent::a: return bracket_a();
        case ErrorComponent::b: return eps2 * bracket_b();
        case ErrorComponent::c: return kI * cfg.c * cfg.log_eps_abs * eps2 * bracket_c();
        case ErrorComponent::total: break;
    }
    return bracket_a() + eps2 * bracket_b() + kI * cfg.c * cfg.log_eps_abs * eps2 * bracket_c();
}

}  // namespace

cplx closed_form_E(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    return eval_Vd(cfg, p, z) * bracket(comp, cfg, p, z);
}

cplx closed_form_R(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    // E = i V_d R  =>  R = -i * bracket
    return -kI * bracket(comp, cfg, p, z);
}

FourierModes fourier_decompose(const FieldSampler& h, const VortexConfiguration& cfg, int j, int K_max,
                               const std::vector<double>& ring_radii, int samples_per_ring, double sym_tol) {
    const cplx xi = cfg.xi.at(j);
    FourierModes out;
    out.radii = ring_radii;
    const int M = samples_per_ring;
    out.h1.assign(ring_radii.size(), std::vector<double>(K_max + 1, 0.0));
    out.h2.assign(ring_radii.size(), std::vector<double>(K_max + 1, 0.0));
    for (std::size_t ring = 0; ring < ring_radii.size(); ++ring) {
        const double r = ring_radii[ring];
        std::vector<cplx> vals(M);
        double scale = 0.0;
        for (int m = 0; m < M; ++m) {
            const double th = 2.0 * kPi * m / M;
            vals[m] = h(xi + r * cplx(std::cos(th), std::sin(th)));
            scale = std::max(scale, std::abs(vals[m]));
        }
        // reflection symmetry in the vortex frame: h(conj zt) = -conj h(zt)
        for (int m = 0; m < M; ++m) {
            const cplx mirror = vals[(M - m) % M];
            const double dev = std::abs(mirror + std::conj(vals[m]));
            out.max_symmetry_violation = std::max(out.max_symmetry_violation, dev);
        }
        if (out.max_symmetry_violation > sym_tol * std::max(1.0, scale))
            throw std::invalid_argument("fourier_decompose: input violates the reflection symmetry");
        for (int k = 0; k <= K_max; ++k) {
            double c1 = 0.0, c2 = 0.0;
            for (int m = 0; m < M; ++m) {
                const double th = 2.0 * kPi * m / M;
                c1 += vals[m].real() * std::sin(k * th);
                c2 += vals[m].imag() * std::cos(k * th);
            }
            out.h1[ring][k] = (k == 0) ? 0.0 : 2.0 * c1 / M;
            out.h2[ring][k] = (k == 0) ? c2 / M : 2.0 * c2 / M;
        }
        for (int m = 0; m < M; ++m) {
            const double th = 2.0 * kPi * m / M;
            cplx rec(0.0, 0.0);
            for (int k = 0; k <= K_max; ++k) rec += cplx(out.h1[ring][k] * std::sin(k * th), out.h2[ring][k] * std::cos(k * th));
            out.max_reconstruction_error = std::max(out.max_reconstruction_error, std::abs(rec - vals[m]));
        }
    }
    return out;
}

cplx reflect_vortex(const VortexConfiguration& cfg, int j, cplx z) {
    return cplx(2.0 * cfg.xi.at(j).real() - z.real(), z.imag());
}

OddEvenSplit odd_even_split(const FieldSampler& h, const VortexConfiguration& cfg) {
    OddEvenSplit out;
    const VortexConfiguration c = cfg;  // capture by value; samplers may outlive caller scope
    out.odd = [h, c](cplx z) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < c.xi.size(); ++j) {
            const double cut = cutoff_eta_jR(c, static_cast<int>(j), c.R_eps, z);
            if (cut == 0.0) continue;
            const cplx zr = reflect_vortex(c, static_cast<int>(j), z);
            acc += cut * 0.5 * (h(z) + std::conj(h(zr)));
        }
        return acc;
    };
    FieldSampler odd = out.odd;
    out.even = [h, odd](cplx z) { return h(z) - odd(z); };
    return out;
}

namespace {

// ---- sampled norm machinery ------------------------------------------------

struct SampleSets {
    std::vector<cplx> near;                    // union of the r_j < 3 disks (per vortex)
    std::vector<cplx> far;                     // min_j r_j > 2, out to ~4/eps
    std::vector<cplx> mid;                     // 2 < r_j < 2 R_eps band around each vortex
};

double min_rj(const VortexConfiguration& cfg, cplx z) {
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& xi : cfg.xi) m = std::min(m, std::abs(z - xi));
    return m;
}

SampleSets make_samples(const VortexConfiguration& cfg, double near_rmax) {
    SampleSets s;
    const int n_ang = 16;
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        for (int ir = 0; ir < 10; ++ir) {
            const double r = 0.25 + (near_rmax - 0.3) * ir / 9.0;
            for (int m = 0; m < n_ang; ++m) {
                const double th = 2.0 * kPi * (m + 0.37 * (ir + 1)) / n_ang;
                s.near.push_back(cfg.xi[j] + r * cplx(std::cos(th), std::sin(th)));
            }
        }
        // log-spaced band 2 < r_j < 2 R_eps
        const int nr = 24;
        for (int ir = 0; ir < nr; ++ir) {
            const double r = 2.2 * std::pow(2.0 * cfg.R_eps / 2.2, ir / (nr - 1.0));
            for (int m = 0; m < n_ang; ++m) {
                const double th = 2.0 * kPi * (m + 0.61 * (ir + 1)) / n_ang;
                const cplx z = cfg.xi[j] + r * cplx(std::cos(th), std::sin(th));
                if (min_rj(cfg, z) > 2.0) s.mid.push_back(z);
            }
        }
        // far fan out to 4/eps
        const double far_max = 4.0 / cfg.eps;
        const int nf = 28;
        for (int ir = 0; ir < nf; ++ir) {
            const double r = 2.2 * std::pow(far_max / 2.2, ir / (nf - 1.0));
            for (int m = 0; m < n_ang; ++m) {
                const double th = 2.0 * kPi * (m + 0.23 * (ir + 1)) / n_ang;
                const cplx z = cfg.xi[j] + r * cplx(std::cos(th), std::sin(th));
                if (min_rj(cfg, z) > 2.0) s.far.push_back(z);
            }
        }
    }
    return s;
}

double weight_re(const VortexConfiguration& cfg, cplx z) {
    double w = cfg.eps * cfg.eps;
    for (const cplx& xi : cfg.xi) w += 1.0 / std::norm(z - xi);
    return w;
}

double weight_im(const VortexConfiguration& cfg, cplx z, double sigma) {
    double w = std::pow(cfg.eps, 2.0 - sigma);
    for (const cplx& xi : cfg.xi) w += std::pow(std::abs(z - xi), sigma - 2.0);
    return w;
}

// sampled Hoelder quotient sup of re/im part over pairs at dyadic separations
template <class Part>
double holder_quotient(const FieldSampler& h, cplx z, double delta0, double alpha, Part part) {
    double best = 0.0;
    const cplx hz = h(z);
    for (int lvl = 0; lvl < 3; ++lvl) {
        const double d = delta0 / (1 << lvl);
        for (int k = 0; k < 8; ++k) {
            const double th = 2.0 * kPi * (k + 0.5 * lvl) / 8.0;
            const cplx y = z + d * cplx(std::cos(th), std::sin(th));
            best = std::max(best, std::fabs(part(h(y)) - part(hz)) / std::pow(d, alpha));
        }
    }
    return best;
}

double holder_quotient_cplx(const FieldSampler& h, cplx z, double delta0, double alpha) {
    double best = 0.0;
    const cplx hz = h(z);
    for (int lvl = 0; lvl < 3; ++lvl) {
        const double d = delta0 / (1 << lvl);
        for (int k = 0; k < 8; ++k) {
            const double th = 2.0 * kPi * (k + 0.5 * lvl) / 8.0;
            const cplx y = z + d * cplx(std::cos(th), std::sin(th));
            best = std::max(best, std::abs(h(y) - hz) / std::pow(d, alpha));
        }
    }
    return best;
}

// second differences of a sampler (for the C^{2,alpha} and D^2 pieces)
cplx fd_dx1(const FieldSampler& f, cplx z, double h) { return (f(z + h) - f(z - h)) / (2.0 * h); }
cplx fd_dx2(const FieldSampler& f, cplx z, double h) { return (f(z + kI * h) - f(z - kI * h)) / (2.0 * h); }
double fd_grad_abs(const FieldSampler& f, cplx z, double h) {
    return std::sqrt(std::norm(fd_dx1(f, z, h)) + std::norm(fd_dx2(f, z, h)));
}
double fd_d2_abs(const FieldSampler& f, cplx z, double h) {
    const cplx dxx = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
    const cplx dyy = (f(z + kI * h) - 2.0 * f(z) + f(z - kI * h)) / (h * h);
    const cplx dxy = (f(z + h + kI * h) - f(z + h - kI * h) - f(z - h + kI * h) + f(z - h - kI * h)) / (4.0 * h * h);
    return std::sqrt(std::norm(dxx) + 2.0 * std::norm(dxy) + std::norm(dyy));
}

}  // namespace

NormReport norm_star_star(const FieldSampler& h, const VortexConfiguration& cfg, const RadialProfile& p,
                          double alpha, double sigma) {
    NormReport rep;
    rep.norm_id = "**";
    rep.alpha = alpha;
    rep.sigma = sigma;
    rep.R_eps = cfg.R_eps;
    const SampleSets s = make_samples(cfg, 3.0);
    FieldSampler vdh = [&](cplx z) { return eval_Vd(cfg, p, z) * h(z); };

    // near: per vortex, sup |V_d h| + sampled Hoelder seminorm
    double near = 0.0;
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        double supv = 0.0, hold = 0.0;
        for (const cplx& z : s.near) {
            if (std::abs(z - cfg.xi[j]) >= 3.0) continue;
            supv = std::max(supv, std::abs(vdh(z)));
            hold = std::max(hold, holder_quotient_cplx(vdh, z, 0.4, alpha));
        }
        near += supv + hold;
    }
    rep.near_vortex = near;

    double far = 0.0;
    for (const cplx& z : s.far) {
        const cplx v = h(z);
        far = std::max(far, std::fabs(v.real()) / weight_re(cfg, z) + std::fabs(v.imag()) / weight_im(cfg, z, sigma));
    }
    rep.far_sup = far;

    double hre = 0.0, him = 0.0;
    for (const cplx& z : s.mid) {
        double wre = 0.0, wim = 0.0;
        for (const cplx& xi : cfg.xi) {
            wre += std::pow(std::abs(z - xi), -2.0 - alpha);
            wim += std::pow(std::abs(z - xi), sigma - 2.0);
        }
        const double delta_re = std::min(1.0, 0.45 * std::abs(z));
        const double safe = 0.45 * (min_rj(cfg, z) - 1.0);
        const double dre = std::min(delta_re, safe);
        const double dim = std::min(1.0, safe);
        if (dre > 1e-3) hre = std::max(hre, holder_quotient(h, z, dre, alpha, [](cplx v) { return v.real(); }) / wre);
        if (dim > 1e-3) him = std::max(him, holder_quotient(h, z, dim, alpha, [](cplx v) { return v.imag(); }) / wim);
    }
    rep.holder_re = hre;
    rep.holder_im = him;
    rep.value = rep.near_vortex + rep.far_sup + rep.holder_re + rep.holder_im;
    rep.note = "sampled sups; Hoelder pairs at 3 dyadic separations";
    return rep;
}

NormReport norm_star(const FieldSampler& psi, const VortexConfiguration& cfg, const RadialProfile& p,
                     double alpha, double sigma) {
    NormReport rep;
    rep.norm_id = "*";
    rep.alpha = alpha;
    rep.sigma = sigma;
    rep.R_eps = cfg.R_eps;
    const SampleSets s = make_samples(cfg, 3.0);
    const double hfd = 1e-3;
    FieldSampler vdpsi = [&](cplx z) { return eval_Vd(cfg, p, z) * psi(z); };

    double near = 0.0;  // sum_j ||V_d psi||_{C^{2,alpha}(r_j<3)}, sampled
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        double acc = 0.0;
        for (const cplx& z : s.near) {
            if (std::abs(z - cfg.xi[j]) >= 3.0) continue;
            acc = std::max(acc, std::abs(vdpsi(z)) + fd_grad_abs(vdpsi, z, hfd) + fd_d2_abs(vdpsi, z, hfd));
        }
        near += acc;
    }
    rep.near_vortex = near;

    double far = 0.0;
    for (const cplx& z : s.far) {
        const cplx v = psi(z);
        // psi_1 sup is unweighted; psi_2 weighted as in the ** far group
        far = std::max(far, std::fabs(v.real()) + std::fabs(v.imag()) / weight_im(cfg, z, sigma));
    }
    const double inv_eps = 1.0 / cfg.eps;
    for (const cplx& z : s.far) {
        if (std::abs(z) < inv_eps) continue;
        const cplx d1 = fd_dx1(psi, z, hfd), d2 = fd_dx2(psi, z, hfd);
        const double ct = z.real() / std::abs(z), st = z.imag() / std::abs(z);
        const cplx dr = ct * d1 + st * d2;
        const cplx ds = z.real() * d2 - z.imag() * d1;
        far = std::max(far, inv_eps * std::fabs(dr.real()) + std::fabs(ds.real()));
        far = std::max(far, std::pow(inv_eps, 2.0 - sigma) * std::fabs(dr.imag()) +
                                std::pow(inv_eps, 1.0 - sigma) * std::fabs(ds.imag()));
    }
    rep.far_sup = far;

    double d2w = 0.0;
    for (const cplx& z : s.mid) {
        if (min_rj(cfg, z) > cfg.R_eps) continue;
        double wre = 0.0, wim = 0.0;
        for (const cplx& xi : cfg.xi) {
            wre += 1.0 / std::norm(z - xi);
            wim += std::pow(std::abs(z - xi), sigma - 2.0);
        }
        FieldSampler re_part = [&](cplx y) { return cplx(psi(y).real(), 0.0); };
        FieldSampler im_part = [&](cplx y) { return cplx(psi(y).imag(), 0.0); };
        d2w = std::max(d2w, fd_d2_abs(re_part, z, hfd) / wre);
        d2w = std::max(d2w, fd_d2_abs(im_part, z, hfd) / wim);
    }
    rep.holder_re = d2w;  // recorded under the Hoelder slot: weighted D^2 group
    rep.value = rep.near_vortex + rep.far_sup + rep.holder_re;
    rep.note = "sampled; D^2 by centered differences, Hoelder-of-D^2 omitted from the sampled sup";
    return rep;
}

NormReport seminorm_sharp(const FieldSampler& psi, const VortexConfiguration& cfg, const RadialProfile& p,
                          double alpha, double sigma) {
    NormReport rep;
    rep.norm_id = "#";
    rep.alpha = alpha;
    rep.sigma = sigma;
    rep.R_eps = cfg.R_eps;
    const SampleSets s = make_samples(cfg, 3.0);
    const double hfd = 1e-3;
    FieldSampler vdpsi = [&](cplx z) { return eval_Vd(cfg, p, z) * psi(z); };

    double near = 0.0;
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        double acc = 0.0;
        for (const cplx& z : s.near) {
            if (std::abs(z - cfg.xi[j]) >= 3.0) continue;
            acc = std::max(acc, std::abs(vdpsi(z)) + fd_grad_abs(vdpsi, z, hfd) + fd_d2_abs(vdpsi, z, hfd));
        }
        near += acc / cfg.log_eps_abs;
    }
    rep.near_vortex = near;

    double grp1 = 0.0, grp2 = 0.0;
    for (const cplx& z : s.mid) {
        const double rj = min_rj(cfg, z);
        if (rj > cfg.R_eps) continue;
        double w_val = 0.0, w_grad = 0.0, w2 = 0.0;
        for (const cplx& xi : cfg.xi) {
            const double r = std::abs(z - xi);
            if (r < 2.0 * cfg.R_eps) {
                w_val += r * std::log(2.0 * cfg.R_eps / r);
                w_grad += std::log(2.0 * cfg.R_eps / r);
                w2 += std::pow(r, sigma - 1.0) + std::log(2.0 * cfg.R_eps / r) / r;
            }
        }
        const cplx v = psi(z);
        const cplx d1 = fd_dx1(psi, z, hfd), d2c = fd_dx2(psi, z, hfd);
        const double grad_re = std::sqrt(d1.real() * d1.real() + d2c.real() * d2c.real());
        const double grad_im = std::sqrt(d1.imag() * d1.imag() + d2c.imag() * d2c.imag());
        grp1 = std::max(grp1, std::fabs(v.real()) / w_val + grad_re / w_grad);
        grp2 = std::max(grp2, (std::fabs(v.imag()) + grad_im) / w2);
    }
    rep.far_sup = grp1 + grp2;
    rep.value = rep.near_vortex + rep.far_sup;
    rep.note = "log-weighted band sups, sampled";
    return rep;
}

NormReport seminorm_sharpsharp(const FieldSampler& h, const VortexConfiguration& cfg, const RadialProfile& p,
                               double alpha, double sigma) {
    NormReport rep;
    rep.norm_id = "##";
    rep.alpha = alpha;
    rep.sigma = sigma;
    rep.R_eps = cfg.R_eps;
    const SampleSets s = make_samples(cfg, 4.0);
    FieldSampler vdh = [&](cplx z) { return eval_Vd(cfg, p, z) * h(z); };
    double near = 0.0;
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        double supv = 0.0, hold = 0.0;
        for (const cplx& z : s.near) {
            if (std::abs(z - cfg.xi[j]) >= 4.0) continue;
            supv = std::max(supv, std::abs(vdh(z)));
            hold = std::max(hold, holder_quotient_cplx(vdh, z, 0.4, alpha));
        }
        near += supv + hold;
    }
    rep.near_vortex = near;
    double band = 0.0;
    for (const cplx& z : s.mid) {
        const double rj = min_rj(cfg, z);
        if (rj > cfg.R_eps) continue;
        double w1 = 0.0, w2 = 0.0;
        for (const cplx& xi : cfg.xi) {
            const double r = std::abs(z - xi);
            w1 += 1.0 / r;
            w2 += std::pow(r, sigma - 1.0);
        }
        const cplx v = h(z);
        band = std::max(band, std::fabs(v.real()) / w1 + std::fabs(v.imag()) / w2);
    }
    rep.far_sup = band;
    rep.value = rep.near_vortex + rep.far_sup;
    rep.note = "band sup 2 < r_j < R_eps plus near C^{0,alpha}, sampled";
    return rep;
}

ErrorDecomposition build_Rhat_o(const VortexConfiguration& cfg, const RadialProfile& p) {
    ErrorDecomposition out;
    const VortexConfiguration c = cfg;
    const RadialProfile* pp = &p;
    out.R_total = [c, pp](cplx z) { return closed_form_R(ErrorComponent::total, c, *pp, z); };
    OddEvenSplit split = odd_even_split(out.R_total, c);
    out.R_odd = split.odd;
    out.R_even = split.even;

    // Slow-decay representative: per vortex j, the 1/r and 1/r^2 pieces of the
    // screw part of the error, with the j-local singular terms excluded from
    // the quadratic block, reflected odd and cut off at R_eps.
    const double amp1 = c.d_hat * c.eps / std::sqrt(c.log_eps_abs);
    const double amp2 = c.d_hat * c.d_hat / c.log_eps_abs;
    auto Rj = [c, amp1, amp2](int j, cplx z) {
        double re = 0.0, im = 0.0;
        std::vector<double> A(c.n_plus), S(c.n_plus);
        for (int l = 0; l < c.n_plus; ++l) {
            const cplx rel = z - c.xi[l];
            const double r = std::abs(rel);
            const double th = std::arg(rel) - c.phi[l];
            A[l] = std::cos(th) / r;
            S[l] = std::sin(th) / r;
        }
        double sumA = 0.0;
        for (int l = 0; l < c.n_plus; ++l) sumA += A[l];
        for (int l = 0; l < c.n_plus; ++l) {
            re -= amp1 * S[l];
            if (l != j) re -= 2.0 * amp2 * S[l] * A[l];
        }
        for (int l = 0; l < c.n_plus; ++l) {
            if (l != j) im += amp2 * A[l] * A[l];
            im += amp2 * A[l] * (sumA - A[j]);
        }
        return cplx(re, im);
    };
    out.Rhat_o = [c, Rj](cplx z) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < c.n_plus; ++j) {
            const double cut = cutoff_eta_jR(c, j, c.R_eps, z);
            if (cut == 0.0) continue;
            const cplx zr = reflect_vortex(c, j, z);
            const cplx rj = Rj(j, z), rjr = Rj(j, zr);
            acc += cut * 0.5 * (rj + std::conj(rjr));
        }
        return acc;
    };
    FieldSampler rodd = out.R_odd, rhat = out.Rhat_o;
    out.Rtilde_o = [rodd, rhat](cplx z) { return rodd(z) - rhat(z); };
    return out;
}

std::string norm_report_to_json(const NormReport& r) {
    nlohmann::json j{{"schema_version", 1},
                     {"norm_id", r.norm_id},
                     {"value", r.value},
                     {"near_vortex", r.near_vortex},
                     {"far_sup", r.far_sup},
                     {"holder_re", r.holder_re},
                     {"holder_im", r.holder_im},
                     {"alpha", r.alpha},
                     {"sigma", r.sigma},
                     {"R_eps", r.R_eps},
                     {"note", r.note}};
    return j.dump(2);
}

}  // namespace gphelix
