#include "gphelix/ansatz.hpp"

#include <cmath>
#include <limits>

#include "nlohmann/json.hpp"

namespace gphelix {

namespace {

constexpr double kEpsMax = 0.13533528323661270;  // e^-2

void fill_derived(VortexConfiguration& cfg) {
    cfg.log_eps_abs = std::fabs(std::log(cfg.eps));
    cfg.d_eps = cfg.d_hat / (cfg.eps * std::sqrt(cfg.log_eps_abs));
    cfg.R_eps = cfg.alpha0 / (cfg.eps * cfg.log_eps_abs);
    cfg.n = cfg.n_plus - cfg.n_minus;
    cfg.xi.clear();
    cfg.degrees.clear();
    cfg.phi.clear();
    for (int j = 0; j < cfg.n_plus; ++j) {
        const double ph = 2.0 * kPi * j / cfg.n_plus;
        cfg.xi.push_back(cfg.d_eps * cplx(std::cos(ph), std::sin(ph)));
        cfg.degrees.push_back(+1);
        cfg.phi.push_back(ph);
    }
    if (cfg.n_minus == 1) {
        cfg.xi.push_back(cplx(0.0, 0.0));
        cfg.degrees.push_back(-1);
        cfg.phi.push_back(0.0);
    }
}

void check_ranges(const VortexConfiguration& cfg) {
    if (cfg.n_minus != 0 && cfg.n_minus != 1)
        throw std::invalid_argument("make_config: n_minus must be 0 or 1");
    if (!(cfg.eps > 0.0 && cfg.eps < kEpsMax))
        throw std::invalid_argument("make_config: eps must lie in (0, e^-2)");
    if (!(cfg.c < 1.0)) throw std::invalid_argument("make_config: c must be < 1");
    if (!(cfg.d_hat > 0.0)) throw std::invalid_argument("make_config: d_hat must be positive");
    if (cfg.R_eps > cfg.d_eps / 2.0 + 1e-12)
        throw std::invalid_argument("make_config: R_eps exceeds d_eps/2 (eps too large for this alpha0)");
}

}  // namespace

double VortexConfiguration::min_separation() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < xi.size(); ++a)
        for (std::size_t b = a + 1; b < xi.size(); ++b) best = std::min(best, std::abs(xi[a] - xi[b]));
    return best;
}

VortexConfiguration make_config(int n_plus, int n_minus, double eps, double c, double d_hat,
                                std::optional<double> alpha0) {
    VortexConfiguration cfg;
    cfg.n_plus = n_plus;
    cfg.n_minus = n_minus;
    cfg.eps = eps;
    cfg.c = c;
    cfg.d_hat = d_hat;
    cfg.alpha0 = alpha0.value_or(d_hat / std::sqrt(2.0));
    if (n_plus < 2) throw std::invalid_argument("make_config: need n_plus >= 2");
    if (n_minus == 1 && n_plus < 4)
        throw std::invalid_argument("make_config: the central degree -1 construction needs n_plus >= 4");
    fill_derived(cfg);
    check_ranges(cfg);
    return cfg;
}

VortexConfiguration make_config_diagnostic(int n_plus, int n_minus, double eps, double c, double d_hat) {
    VortexConfiguration cfg;
    cfg.n_plus = n_plus;
    cfg.n_minus = n_minus;
    cfg.eps = eps;
    cfg.c = c;
    cfg.d_hat = d_hat;
    cfg.alpha0 = d_hat / std::sqrt(2.0);
    if (n_plus < 1) throw std::invalid_argument("make_config_diagnostic: need n_plus >= 1");
    fill_derived(cfg);
    check_ranges(cfg);
    return cfg;
}

cplx eval_Vd(const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    cplx prod(1.0, 0.0);
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        const cplx wj = eval_w(p, z - cfg.xi[j]).w;
        prod *= (cfg.degrees[j] > 0) ? wj : std::conj(wj);
    }
    return prod;
}

AngularFrame angular_frame(cplx z, cplx xi, double phi) {
    AngularFrame f;
    const cplx rel = z - xi;
    f.r = std::abs(rel);
    f.theta = std::arg(rel);
    const double m = std::abs(xi);
    const double cth = std::cos(f.theta - phi), sth = std::sin(f.theta - phi);
    f.ds_r = m * sth;
    f.ds_theta = 1.0 + (m / f.r) * cth;
    f.dss_r = m * cth + (m * m / f.r) * cth * cth;
    f.dss_theta = -(m / f.r) * sth - (2.0 * m * m / (f.r * f.r)) * sth * cth;
    return f;
}

LogDeriv eval_logderiv_Vd(const VortexConfiguration& cfg, const RadialProfile& p, cplx z) {
    LogDeriv out{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        const cplx rel = z - cfg.xi[j];
        const double r = std::abs(rel);
        if (r < 1e-12) throw std::domain_error("eval_logderiv_Vd: evaluation at a vortex center");
        const RhoEval q = eval_rho(p, r);
        const double ct = rel.real() / r, st = rel.imag() / r;
        // grad w / w in the vortex frame; no cancellation: rho'/rho and 1/r
        const double a = q.rho_prime / q.rho;
        cplx g1(a * ct, -st / r);
        cplx g2(a * st, ct / r);
        const AngularFrame fr = angular_frame(z, cfg.xi[j], cfg.phi[j]);
        cplx gs(fr.ds_r * a, fr.ds_theta);
        if (cfg.degrees[j] < 0) {
            g1 = std::conj(g1);
            g2 = std::conj(g2);
            gs = std::conj(gs);
        }
        out.dx1 += g1;
        out.dx2 += g2;
        out.ds += gs;
    }
    return out;
}

cplx lift_3d(const VortexConfiguration& cfg, const RadialProfile& p, double r, double theta, double x3) {
    if (r < 0.0) throw std::invalid_argument("lift_3d: negative radius");
    const cplx z = (r / cfg.eps) * cplx(std::cos(theta), std::sin(theta));
    const cplx rot(std::cos(x3), std::sin(x3));
    cplx prod(1.0, 0.0);
    for (std::size_t j = 0; j < cfg.xi.size(); ++j) {
        const cplx center = (cfg.degrees[j] > 0) ? cfg.xi[j] * rot : cfg.xi[j];
        const cplx wj = eval_w(p, z - center).w;
        prod *= (cfg.degrees[j] > 0) ? wj : std::conj(wj);
    }
    return prod;
}

SymmetryReport check_psi_symmetries(const FieldSampler& psi, const VortexConfiguration& cfg,
                                    const std::vector<cplx>& samples) {
    SymmetryReport rep;
    const cplx rot(std::cos(2.0 * kPi / cfg.n_plus), std::sin(2.0 * kPi / cfg.n_plus));
    for (const cplx& z : samples) {
        const cplx a = psi(std::conj(z)) + std::conj(psi(z));
        const cplx b = psi(rot * z) - psi(z);
        rep.conj_deviation = std::max(rep.conj_deviation, std::abs(a));
        rep.rotation_deviation = std::max(rep.rotation_deviation, std::abs(b));
    }
    return rep;
}

double cutoff_eta(const VortexConfiguration& cfg, cplx z) {
    double s = 0.0;
    for (const cplx& xi : cfg.xi) s += eta1(std::abs(z - xi));
    return s;
}

double cutoff_eta_jR(const VortexConfiguration& cfg, int j, double R, cplx z) {
    return eta1(std::abs(z - cfg.xi.at(j)) / R);
}

double cutoff_chi_j(const VortexConfiguration& cfg, int j, cplx z) {
    return eta1(std::abs(z - cfg.xi.at(j)) / 2.0);
}

std::string config_to_json(const VortexConfiguration& cfg) {
    nlohmann::json j{{"schema_version", 1}, {"n_plus", cfg.n_plus}, {"n_minus", cfg.n_minus},
                     {"eps", cfg.eps},      {"c", cfg.c},           {"d_hat", cfg.d_hat},
                     {"alpha0", cfg.alpha0}, {"d_eps", cfg.d_eps},  {"R_eps", cfg.R_eps}};
    return j.dump(2);
}

VortexConfiguration config_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    return make_config(j.at("n_plus").get<int>(), j.at("n_minus").get<int>(), j.at("eps").get<double>(),
                       j.at("c").get<double>(), j.at("d_hat").get<double>(), j.at("alpha0").get<double>());
}

}  // namespace gphelix
