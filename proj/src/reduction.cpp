#include "gphelix/reduction.hpp"

#include <cmath>
#include <limits>

#include "nlohmann/json.hpp"

namespace gphelix {

namespace {

const cplx kI(0.0, 1.0);

// polar quadrature of Re integrand over B(0,R): Gauss-Legendre panels in r
// (geometric refinement toward 0), uniform trapezoid in the angle.
template <class F>
double polar_quad(double R, int n_gauss, int n_ang, F&& f) {
    std::vector<double> edges{0.0};
    double e = std::min(1.0, R);
    while (e < R) {
        edges.push_back(e);
        e *= 2.0;
    }
    edges.push_back(R);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const GaussRule g = gauss_legendre(n_gauss, edges[p], edges[p + 1]);
        for (int i = 0; i < n_gauss; ++i) {
            const double r = g.x[i];
            double ang = 0.0;
            for (int m = 0; m < n_ang; ++m) {
                const double th = 2.0 * kPi * m / n_ang;
                ang += f(r, th);
            }
            total += g.w[i] * r * ang * (2.0 * kPi / n_ang);
        }
    }
    return total;
}

}  // namespace

double compute_c_star(const RadialProfile& p, double R_eps, double rel_tol) {
    if (R_eps < 4.0) throw std::invalid_argument("compute_c_star: R_eps must be >= 4");
    auto integrand = [&](double r, double th) {
        const cplx wx1 = eval_w(p, r * cplx(std::cos(th), std::sin(th))).w_x1;
        return eta1(r / 2.0) * std::norm(wx1);
    };
    double prev = polar_quad(4.0, 24, 64, integrand);
    for (int n_gauss = 48, n_ang = 128; n_gauss <= 384; n_gauss *= 2, n_ang *= 2) {
        const double cur = polar_quad(4.0, n_gauss, n_ang, integrand);
        if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

double projection_radius(const VortexConfiguration& cfg) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < cfg.xi.size(); ++j) nearest = std::min(nearest, std::abs(cfg.xi[j] - cfg.xi[0]));
    return 0.5 * nearest;
}

double project_against_kernel(const FieldSampler& R_global, const VortexConfiguration& cfg,
                              const RadialProfile& p, double radius, int n_rad, int n_ang) {
    const cplx xi1 = cfg.xi.at(0);
    auto integrand = [&](double r, double th) {
        const cplx z(r * std::cos(th), r * std::sin(th));
        const WEval w = eval_w(p, z);
        return std::real(kI * w.w * R_global(z + xi1) * std::conj(w.w_x1));
    };
    return polar_quad(radius, n_rad, n_ang, integrand);
}

double compute_B(ErrorComponent comp, const VortexConfiguration& cfg, const RadialProfile& p, double rel_tol) {
    const double R = projection_radius(cfg);
    const cplx xi1 = cfg.xi.at(0);
    auto integrand = [&](double r, double th) {
        const cplx z(r * std::cos(th), r * std::sin(th));
        const WEval w = eval_w(p, z);
        return std::real(kI * w.w * closed_form_R(comp, cfg, p, z + xi1) * std::conj(w.w_x1));
    };
    double prev = polar_quad(R, 16, 64, integrand);
    for (int n_gauss = 32, n_ang = 128; n_gauss <= 256; n_gauss *= 2, n_ang *= 2) {
        const double cur = polar_quad(R, n_gauss, n_ang, integrand);
        if (std::fabs(cur - prev) <= rel_tol * std::max(std::fabs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw std::runtime_error("compute_B: quadrature did not converge to the requested tolerance");
}

double asymptotic_root(int n_plus, int n_minus, double c) {
    const double a0 = (n_minus == 1) ? (n_plus - 3) * kPi : (n_plus - 1) * kPi;
    return std::sqrt(a0 / ((1.0 - c) * kPi));
}

BalanceResult balance(const VortexConfiguration& cfg, const RadialProfile& p) {
    BalanceResult out;
    out.B_a = compute_B(ErrorComponent::a, cfg, p);
    out.B_b = compute_B(ErrorComponent::b, cfg, p);
    out.B_c = (cfg.c == 0.0) ? 0.0 : compute_B(ErrorComponent::c, cfg, p);
    out.measured = out.B_a + out.B_b + out.B_c;
    out.a0 = (cfg.n_minus == 1) ? (cfg.n_plus - 3) * kPi : (cfg.n_plus - 1) * kPi;
    out.a1_tilde = (1.0 - cfg.c) * kPi;
    const double scale = cfg.eps * std::sqrt(cfg.log_eps_abs);
    out.model = scale * (-out.a0 / cfg.d_hat + out.a1_tilde * cfg.d_hat);
    return out;
}

ReductionReport solve_dhat(int n_plus, int n_minus, double c, double eps, double bracket_lo, double bracket_hi,
                           const RadialProfile& p) {
    auto eval = [&](double d_hat) {
        const VortexConfiguration cfg = make_config(n_plus, n_minus, eps, c, d_hat);
        return balance(cfg, p).measured;
    };
    double lo = bracket_lo, hi = bracket_hi;
    double flo = eval(lo), fhi = eval(hi);
    if (flo * fhi > 0.0)
        throw BracketError("solve_dhat: balance has no sign change on the bracket", flo, fhi);
    while ((hi - lo) > 1e-3 * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if (fm * flo <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    ReductionReport rep;
    rep.d_hat_root = 0.5 * (lo + hi);
    rep.asymptotic_root = asymptotic_root(n_plus, n_minus, c);
    rep.n_plus = n_plus;
    rep.n_minus = n_minus;
    rep.eps = eps;
    rep.c = c;
    const VortexConfiguration cfg = make_config(n_plus, n_minus, eps, c, rep.d_hat_root);
    const BalanceResult bal = balance(cfg, p);
    rep.B_a = bal.B_a;
    rep.B_b = bal.B_b;
    rep.B_c = bal.B_c;
    rep.balance_measured = bal.measured;
    rep.balance_model = bal.model;
    rep.c_star = compute_c_star(p, std::max(4.0, cfg.R_eps), 1e-6);
    rep.note = "projection ball radius = half nearest-neighbor distance";
    if (n_minus == 1)
        rep.note += "; central family balance carries a0 = (n_plus - 3) pi (pi factor kept "
                    "to match the polygon-family coefficient structure)";
    return rep;
}

std::string reduction_report_to_json(const ReductionReport& r) {
    nlohmann::json j{{"schema_version", 1},
                     {"c_star", r.c_star},
                     {"B_a", r.B_a},
                     {"B_b", r.B_b},
                     {"B_c", r.B_c},
                     {"balance_measured", r.balance_measured},
                     {"balance_model", r.balance_model},
                     {"d_hat_root", r.d_hat_root},
                     {"asymptotic_root", r.asymptotic_root},
                     {"n_plus", r.n_plus},
                     {"n_minus", r.n_minus},
                     {"eps", r.eps},
                     {"c", r.c},
                     {"note", r.note}};
    return j.dump(2);
}

}  // namespace gphelix
