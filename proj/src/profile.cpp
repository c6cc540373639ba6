#include "gphelix/profile.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "nlohmann/json.hpp"

namespace gphelix {

namespace {

struct Ode2 {
    double rho, drho;
};

inline Ode2 rhs(double r, const Ode2& u) {
    return {u.drho, -u.drho / r + u.rho / (r * r) - (1.0 - u.rho * u.rho) * u.rho};
}

// One Cash-Karp 4(5) step; returns embedded error estimate.
Ode2 rkck_step(double r, const Ode2& u, double h, double* err) {
    static const double b21 = 1.0 / 5.0;
    static const double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static const double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
    static const double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static const double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                        b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static const double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0, c6 = 512.0 / 1771.0;
    static const double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                        d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0, d6 = c6 - 0.25;
    auto ax = [](const Ode2& a, double s, const Ode2& b) { return Ode2{a.rho + s * b.rho, a.drho + s * b.drho}; };
    Ode2 k1 = rhs(r, u);
    Ode2 k2 = rhs(r + 0.2 * h, ax(u, h * b21, k1));
    Ode2 k3 = rhs(r + 0.3 * h, {u.rho + h * (b31 * k1.rho + b32 * k2.rho), u.drho + h * (b31 * k1.drho + b32 * k2.drho)});
    Ode2 k4 = rhs(r + 0.6 * h, {u.rho + h * (b41 * k1.rho + b42 * k2.rho + b43 * k3.rho),
                                u.drho + h * (b41 * k1.drho + b42 * k2.drho + b43 * k3.drho)});
    Ode2 k5 = rhs(r + h, {u.rho + h * (b51 * k1.rho + b52 * k2.rho + b53 * k3.rho + b54 * k4.rho),
                          u.drho + h * (b51 * k1.drho + b52 * k2.drho + b53 * k3.drho + b54 * k4.drho)});
    Ode2 k6 = rhs(r + 0.875 * h,
                  {u.rho + h * (b61 * k1.rho + b62 * k2.rho + b63 * k3.rho + b64 * k4.rho + b65 * k5.rho),
                   u.drho + h * (b61 * k1.drho + b62 * k2.drho + b63 * k3.drho + b64 * k4.drho + b65 * k5.drho)});
    Ode2 out{u.rho + h * (c1 * k1.rho + c3 * k3.rho + c4 * k4.rho + c6 * k6.rho),
             u.drho + h * (c1 * k1.drho + c3 * k3.drho + c4 * k4.drho + c6 * k6.drho)};
    const double e1 = h * (d1 * k1.rho + d3 * k3.rho + d4 * k4.rho + d5 * k5.rho + d6 * k6.rho);
    const double e2 = h * (d1 * k1.drho + d3 * k3.drho + d4 * k4.drho + d5 * k5.drho + d6 * k6.drho);
    *err = std::max(std::fabs(e1), std::fabs(e2));
    return out;
}

constexpr double kShootStart = 1e-6;

// Integrate from the series start; classify the trajectory.
//  +1 : rho exceeds 1 (slope too large)
//  -1 : rho turns over, rho' <= 0 (slope too small)
//   0 : reached r_end inside the monotone strip; *rho_end receives rho(r_end)
int shoot_classify(double a, double r_end, double* rho_end) {
    double r = kShootStart;
    Ode2 u{a * r - a * r * r * r / 8.0, a - 3.0 * a * r * r / 8.0};
    double h = 1e-6;
    const double atol = 1e-14;
    while (r < r_end) {
        if (r + h > r_end) h = r_end - r;
        double err;
        Ode2 trial = rkck_step(r, u, h, &err);
        if (err > atol) {
            h *= std::max(0.2, 0.9 * std::pow(atol / err, 0.25));
            continue;
        }
        u = trial;
        r += h;
        if (err > 0.0) h *= std::min(5.0, 0.9 * std::pow(atol / err, 0.2));
        if (u.rho > 1.0 + 1e-12) return +1;
        if (u.drho <= 0.0) return -1;
    }
    if (rho_end) *rho_end = u.rho;
    return 0;
}

// Integrate with the final slope, landing exactly on the uniform nodes
// grid[i0..i1]; fills rho/rho' there. Monotonicity enforced on the fly.
void shoot_fill(double a, const std::vector<double>& grid, std::size_t i0, std::size_t i1,
                std::vector<double>& rho, std::vector<double>& drho) {
    double r = kShootStart;
    Ode2 u{a * r - a * r * r * r / 8.0, a - 3.0 * a * r * r / 8.0};
    double h = 1e-6;
    const double atol = 1e-14;
    for (std::size_t i = i0; i <= i1; ++i) {
        const double target = grid[i];
        while (r < target) {
            double step = std::min(h, target - r);
            double err;
            Ode2 trial = rkck_step(r, u, step, &err);
            if (err > atol && step == h) {
                h *= std::max(0.2, 0.9 * std::pow(atol / err, 0.25));
                continue;
            }
            u = trial;
            r += step;
            if (err > 0.0) h *= std::min(5.0, 0.9 * std::pow(atol / err, 0.2));
        }
        rho[i] = u.rho;
        drho[i] = u.drho;
    }
}

// rho = 1 - 1/(2 r^2) - 9/(8 r^4) - 161/(16 r^6) + O(r^-8)
inline double tail_rho(double r) {
    const double r2 = r * r;
    return 1.0 - 0.5 / r2 - 1.125 / (r2 * r2) - 10.0625 / (r2 * r2 * r2);
}
inline double tail_drho(double r) {
    const double r2 = r * r;
    return 1.0 / (r2 * r) + 4.5 / (r2 * r2 * r) + 60.375 / (r2 * r2 * r2 * r);
}

// Global Newton relaxation on the uniform grid with a 5-point 4th-order
// discretization; boundary rows pin two nodes at each end. Polishes the
// shooting table into a solution whose pointwise ODE defect is O(dr^4).
void newton_polish(std::vector<double>& rho, const std::vector<double>& grid, double dr) {
    const int n = static_cast<int>(grid.size());
    for (int pass = 0; pass < 12; ++pass) {
        BandedMatrix J(n, 2, 2);
        std::vector<double> F(n, 0.0);
        // pinned rows
        for (int i : {0, 1, n - 2, n - 1}) {
            J.at(i, i) = 1.0;
            F[i] = 0.0;
        }
        double maxres = 0.0;
        for (int i = 2; i <= n - 3; ++i) {
            const double r = grid[i];
            const double d1 = (rho[i - 2] - 8.0 * rho[i - 1] + 8.0 * rho[i + 1] - rho[i + 2]) / (12.0 * dr);
            const double d2 =
                (-rho[i - 2] + 16.0 * rho[i - 1] - 30.0 * rho[i] + 16.0 * rho[i + 1] - rho[i + 2]) / (12.0 * dr * dr);
            const double res = d2 + d1 / r - rho[i] / (r * r) + (1.0 - rho[i] * rho[i]) * rho[i];
            F[i] = -res;
            maxres = std::max(maxres, std::fabs(res));
            const double c2 = 1.0 / (12.0 * dr * dr);
            const double c1 = 1.0 / (12.0 * dr * r);
            J.at(i, i - 2) = -c2 + c1;
            J.at(i, i - 1) = 16.0 * c2 - 8.0 * c1;
            J.at(i, i) = -30.0 * c2 - 1.0 / (r * r) + 1.0 - 3.0 * rho[i] * rho[i];
            J.at(i, i + 1) = 16.0 * c2 + 8.0 * c1;
            J.at(i, i + 2) = -c2 - c1;
        }
        if (maxres < 1e-13) break;
        J.solve(F);
        for (int i = 0; i < n; ++i) rho[i] += F[i];
    }
}

}  // namespace

RadialProfile solve_profile(double R_cut, double tol) {
    if (R_cut < 20.0) throw std::invalid_argument("solve_profile: R_cut must be >= 20");
    if (tol <= 0.0) throw std::invalid_argument("solve_profile: tol must be positive");

    // Bisection on the origin slope. Near the connecting orbit the unstable
    // mode forces every double-precision trajectory out of the monotone strip
    // well before r = 30, so the exit events classify each shot; the matching
    // value at R_cut only breaks the (never observed) event-free case.
    const double r_check = 30.0;
    double lo = 0.3, hi = 1.0;
    {
        double re;
        int cls_lo = shoot_classify(lo, r_check, &re);
        if (cls_lo == 0) cls_lo = (re > tail_rho(r_check)) ? +1 : -1;
        double re2;
        int cls_hi = shoot_classify(hi, r_check, &re2);
        if (cls_hi == 0) cls_hi = (re2 > tail_rho(r_check)) ? +1 : -1;
        if (cls_lo >= 0 || cls_hi <= 0)
            throw ProfileSolveError("solve_profile: slope bracket does not straddle the matching condition", lo, hi);
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        double re;
        int cls = shoot_classify(mid, r_check, &re);
        if (cls == 0) cls = (re > tail_rho(r_check)) ? +1 : -1;
        if (cls > 0)
            hi = mid;
        else
            lo = mid;
    }
    const double alpha = 0.5 * (lo + hi);

    RadialProfile p;
    p.alpha = alpha;
    p.R_cut = R_cut;
    p.tol = tol;
    p.dr = 1.0 / 200.0;
    // The series branch covers r < 0.05; tabulating closer to the axis buys
    // nothing and the 1/r^2 weight amplifies rounding in the residual there.
    const double r_first = 0.05;
    const int n = static_cast<int>(std::lround((R_cut - r_first) / p.dr)) + 1;
    p.grid.resize(n);
    p.rho.assign(n, 0.0);
    p.rho_prime.assign(n, 0.0);
    for (int i = 0; i < n; ++i) p.grid[i] = r_first + i * p.dr;

    // forward fill where the shot is clean, asymptotics beyond; then polish
    const double r_fwd = std::min(10.0, R_cut);
    std::size_t i_fwd = 0;
    while (i_fwd + 1 < p.grid.size() && p.grid[i_fwd + 1] <= r_fwd) ++i_fwd;
    shoot_fill(alpha, p.grid, 0, i_fwd, p.rho, p.rho_prime);
    for (std::size_t i = i_fwd + 1; i < p.grid.size(); ++i) p.rho[i] = tail_rho(p.grid[i]);
    newton_polish(p.rho, p.grid, p.dr);

    // rho' from 4th-order differences of the polished table; the two pinned
    // nodes at each end keep the integrator resp. asymptotic slopes.
    const std::size_t m = p.grid.size();
    for (std::size_t i = 2; i + 2 < m; ++i) p.rho_prime[i] = fd1_4(p.rho, i, p.dr);
    p.rho_prime[m - 2] = tail_drho(p.grid[m - 2]);
    p.rho_prime[m - 1] = tail_drho(p.grid[m - 1]);

    // rho'' at the nodes from the equation (used only to interpolate rho')
    p.rho_second.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = p.grid[i];
        p.rho_second[i] = -p.rho_prime[i] / r + p.rho[i] / (r * r) - (1.0 - p.rho[i] * p.rho[i]) * p.rho[i];
    }

    // invariants
    for (std::size_t i = 0; i < m; ++i) {
        if (!(p.rho[i] > 0.0 && p.rho[i] < 1.0) || !(p.rho_prime[i] > 0.0))
            throw ProfileSolveError("solve_profile: non-monotone or out-of-range profile", lo, hi);
    }
    const double match = std::fabs(p.rho.back() - (1.0 - 0.5 / (R_cut * R_cut)));
    if (match > 1e-6)
        throw ProfileSolveError("solve_profile: far-field matching failed", lo, hi);
    return p;
}

namespace {

// cubic Hermite on cell [x0,x0+h] given endpoint values/derivatives
inline double hermite(double t, double h, double f0, double d0, double f1, double d1) {
    const double t2 = t * t, t3 = t2 * t;
    return f0 * (2 * t3 - 3 * t2 + 1) + d0 * h * (t3 - 2 * t2 + t) + f1 * (-2 * t3 + 3 * t2) + d1 * h * (t3 - t2);
}
inline double hermite_d(double t, double h, double f0, double d0, double f1, double d1) {
    const double t2 = t * t;
    return (f0 * (6 * t2 - 6 * t) + d0 * h * (3 * t2 - 4 * t + 1) + f1 * (-6 * t2 + 6 * t) + d1 * h * (3 * t2 - 2 * t)) / h;
}

}  // namespace

RhoEval eval_rho(const RadialProfile& p, double r) {
    if (r < 0.0) throw std::invalid_argument("eval_rho: negative radius");
    if (r >= p.R_cut) {
        const double r2 = r * r;
        return {1.0 - 0.5 / r2, 1.0 / (r2 * r), -3.0 / (r2 * r2)};
    }
    if (r <= p.grid.front()) {
        // rho = a r - (a/8) r^3 + c5 r^5, c5 = (a^3 + a/8)/24 from the r^3
        // balance of the equation
        const double a = p.alpha;
        const double c5 = (a * a * a + a / 8.0) / 24.0;
        const double r2 = r * r;
        return {a * r - a * r2 * r / 8.0 + c5 * r2 * r2 * r,
                a - 3.0 * a * r2 / 8.0 + 5.0 * c5 * r2 * r2,
                -0.75 * a * r + 20.0 * c5 * r2 * r};
    }
    const std::size_t i = std::min(p.grid.size() - 2, static_cast<std::size_t>((r - p.grid.front()) / p.dr));
    const double t = (r - p.grid[i]) / p.dr;
    return {hermite(t, p.dr, p.rho[i], p.rho_prime[i], p.rho[i + 1], p.rho_prime[i + 1]),
            hermite(t, p.dr, p.rho_prime[i], p.rho_second[i], p.rho_prime[i + 1], p.rho_second[i + 1]),
            hermite_d(t, p.dr, p.rho_prime[i], p.rho_second[i], p.rho_prime[i + 1], p.rho_second[i + 1])};
}

WEval eval_w(const RadialProfile& p, cplx z) {
    const double r = std::abs(z);
    if (r == 0.0) return {cplx(0.0, 0.0), cplx(p.alpha, 0.0), cplx(0.0, p.alpha)};
    const RhoEval q = eval_rho(p, r);
    const double ct = z.real() / r, st = z.imag() / r;
    const cplx eith(ct, st);
    double rho_over_r = q.rho / r;
    if (r <= p.grid.front()) {
        const double c5 = (p.alpha * p.alpha * p.alpha + p.alpha / 8.0) / 24.0;
        rho_over_r = p.alpha - p.alpha * r * r / 8.0 + c5 * r * r * r * r;
    }
    WEval out;
    out.w = q.rho * eith;
    out.w_x1 = eith * cplx(q.rho_prime * ct, -rho_over_r * st);
    out.w_x2 = eith * cplx(q.rho_prime * st, rho_over_r * ct);
    return out;
}

cplx eval_w_x2x2(const RadialProfile& p, cplx z) {
    const double r = std::abs(z);
    if (r == 0.0) return cplx(0.0, 0.0);  // series: w_x2x2(0) = 0
    const RhoEval q = eval_rho(p, r);
    const double ct = z.real() / r, st = z.imag() / r;
    const cplx eith(ct, st);
    const double T = q.rho_prime / r - q.rho / (r * r);
    return eith * cplx(q.rho_second * st * st + T * ct * ct, 2.0 * T * st * ct);
}

double profile_residual(const RadialProfile& p, double r_max) {
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < p.grid.size(); ++i) {
        const double r = p.grid[i];
        if (r > r_max) break;
        const double d2 = fd1_4(p.rho_prime, i, p.dr);
        const double res = d2 + p.rho_prime[i] / r - p.rho[i] / (r * r) + (1.0 - p.rho[i] * p.rho[i]) * p.rho[i];
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

int winding_number(const RadialProfile& p, double radius, int samples) {
    double acc = 0.0;
    double prev = std::arg(eval_w(p, cplx(radius, 0.0)).w);
    for (int k = 1; k <= samples; ++k) {
        const double th = 2.0 * kPi * k / samples;
        const double cur = std::arg(eval_w(p, radius * cplx(std::cos(th), std::sin(th))).w);
        double d = cur - prev;
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        acc += d;
        prev = cur;
    }
    return static_cast<int>(std::lround(acc / (2.0 * kPi)));
}

void save_profile_csv(const RadialProfile& p, const std::string& csv_path, const std::string& json_path) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("save_profile_csv: cannot open " + csv_path);
    csv << "r,rho,rho_prime\n" << std::setprecision(17);
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        csv << p.grid[i] << ',' << p.rho[i] << ',' << p.rho_prime[i] << '\n';
    nlohmann::json j{{"schema_version", 1}, {"alpha", p.alpha}, {"R_cut", p.R_cut}, {"tol", p.tol}};
    std::ofstream js(json_path);
    if (!js) throw std::runtime_error("save_profile_csv: cannot open " + json_path);
    js << j.dump(2) << '\n';
}

RadialProfile load_profile_csv(const std::string& csv_path, const std::string& json_path) {
    std::ifstream js(json_path);
    if (!js) throw std::runtime_error("load_profile_csv: cannot open " + json_path);
    nlohmann::json j;
    js >> j;
    RadialProfile p;
    p.alpha = j.at("alpha").get<double>();
    p.R_cut = j.at("R_cut").get<double>();
    p.tol = j.at("tol").get<double>();
    std::ifstream csv(csv_path);
    if (!csv) throw std::runtime_error("load_profile_csv: cannot open " + csv_path);
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        double r, rho, drho;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &rho, &drho) != 3)
            throw std::runtime_error("load_profile_csv: malformed row: " + line);
        p.grid.push_back(r);
        p.rho.push_back(rho);
        p.rho_prime.push_back(drho);
    }
    if (p.grid.size() < 4) throw std::runtime_error("load_profile_csv: table too short");
    p.dr = p.grid[1] - p.grid[0];
    p.rho_second.resize(p.grid.size());
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        const double r = p.grid[i];
        p.rho_second[i] = -p.rho_prime[i] / r + p.rho[i] / (r * r) - (1.0 - p.rho[i] * p.rho[i]) * p.rho[i];
    }
    return p;
}

}  // namespace gphelix
