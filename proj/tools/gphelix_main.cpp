// Command-line front end: profile solve/export, closed-form vs
// finite-difference error studies, the Lyapunov-Schmidt reduction sweep and
// the KMD filament simulator. Writes one directory per run with a config.json
// echo and flat CSV/JSON results.
//
// Exit codes: 0 success, 2 argument/precondition error, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "gphelix/error_analysis.hpp"
#include "gphelix/kmd.hpp"
#include "gphelix/operators.hpp"
#include "gphelix/reduction.hpp"

namespace fs = std::filesystem;
using namespace gphelix;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArg = 2;
constexpr int kExitNumeric = 3;

fs::path run_dir(const std::string& out_flag, const std::string& sub) {
    if (!out_flag.empty()) return fs::path(out_flag);
    if (const char* env = std::getenv("GPHELIX_OUTDIR")) return fs::path(env) / sub;
    return fs::path("gphelix_runs") / sub;
}

void write_config_echo(const fs::path& dir, const json& cfg) {
    std::ofstream os(dir / "config.json");
    json j = cfg;
    j["schema_version"] = 1;
    os << j.dump(2) << '\n';
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int cmd_profile(double rcut, double tol, bool check_tail, const std::string& out) {
    const fs::path dir = run_dir(out, "profile");
    fs::create_directories(dir);
    write_config_echo(dir, json{{"subcommand", "profile"}, {"rcut", rcut}, {"tol", tol}});
    RadialProfile p;
    try {
        p = solve_profile(rcut, tol);
    } catch (const ProfileSolveError& e) {
        std::cerr << "solver failure: " << e.what() << " (last bracket [" << e.bracket_lo << ", " << e.bracket_hi
                  << "])\n";
        return kExitNumeric;
    }
    save_profile_csv(p, (dir / "profile.csv").string(), (dir / "profile.json").string());

    json tail = json::array();
    for (double r : {10.0, 20.0, 40.0}) {
        const double rr = std::min(r, p.R_cut - p.dr);
        const double rem = std::pow(rr, 4) * std::fabs(eval_rho(p, rr).rho - 1.0 + 0.5 / (rr * rr));
        tail.push_back({{"r", rr}, {"r4_remainder", rem}});
        if (check_tail)
            std::cout << "r = " << rr << "  r^4 |rho - 1 + 1/(2r^2)| = " << std::setprecision(6) << rem << '\n';
    }
    const double res = profile_residual(p, p.R_cut);
    json summary{{"schema_version", 1}, {"alpha", p.alpha},        {"R_cut", p.R_cut},
                 {"tol", p.tol},        {"max_ode_residual", res}, {"tail_law", tail},
                 {"grid_points", p.grid.size()}};
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    std::cout << "profile solved: alpha = " << std::setprecision(12) << p.alpha << ", residual = " << res
              << ", wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_error(int n, int n_minus, double c, const std::string& eps_list, double d_hat, bool oracle_only,
              const std::string& out) {
    const fs::path dir = run_dir(out, "error");
    fs::create_directories(dir);
    const std::vector<double> epses = parse_list(eps_list);
    if (epses.empty()) {
        std::cerr << "error: need at least one eps\n";
        return kExitArg;
    }
    write_config_echo(dir, json{{"subcommand", "error"},
                                {"n", n},
                                {"n_minus", n_minus},
                                {"c", c},
                                {"eps", epses},
                                {"d_hat", d_hat},
                                {"oracle_only", oracle_only}});
    for (double eps : epses) make_config(n + n_minus, n_minus, eps, c, d_hat);  // validate before solving
    const RadialProfile p = solve_profile(100.0, 1e-10);

    std::ofstream cmp(dir / "comparison.csv");
    cmp << "eps,x1,x2,component,cf_re,cf_im,fd_re,fd_im,abs_diff\n" << std::setprecision(12);
    std::ofstream scal(dir / "scaling.csv");
    scal << "eps,norm_star_star,value_times_logeps,ratio_to_previous\n" << std::setprecision(12);
    double prev = 0.0;
    for (double eps : epses) {
        const VortexConfiguration cfg = make_config(n + n_minus, n_minus, eps, c, d_hat);
        OperatorParams par = OperatorParams::from_config(cfg);
        FieldSampler vd = [&](cplx z) { return eval_Vd(cfg, p, z); };
        for (int k = 0; k < 8; ++k) {
            const cplx z = std::polar(cfg.d_eps * (0.3 + 0.04 * k), 0.5 + 0.8 * k);
            const SPartsAt fd = apply_S_parts_at(vd, z, 0.04, par);
            const cplx cfa = closed_form_Ea(cfg, p, z), cfb = closed_form_Eb(cfg, p, z),
                       cfc = closed_form_Ec(cfg, p, z);
            auto row = [&](const char* tag, cplx cf, cplx f) {
                cmp << eps << ',' << z.real() << ',' << z.imag() << ',' << tag << ',' << cf.real() << ','
                    << cf.imag() << ',' << f.real() << ',' << f.imag() << ',' << std::abs(cf - f) << '\n';
            };
            if (!oracle_only) {
                row("a", cfa, fd.a);
                row("b", cfb, fd.b);
                row("c", cfc, fd.c);
            } else {
                row("a_fd_only", fd.a, fd.a);
                row("b_fd_only", fd.b, fd.b);
                row("c_fd_only", fd.c, fd.c);
            }
        }
        FieldSampler R = [&](cplx z) { return closed_form_R(ErrorComponent::total, cfg, p, z); };
        const NormReport rep = norm_star_star(R, cfg, p);
        const double scaled = rep.value * cfg.log_eps_abs;
        scal << eps << ',' << rep.value << ',' << scaled << ',' << (prev > 0.0 ? rep.value / prev : 0.0) << '\n';
        prev = rep.value;
        std::ostringstream name;
        name << "norm_eps_" << std::scientific << std::setprecision(0) << eps << ".json";
        std::ofstream(dir / name.str()) << norm_report_to_json(rep) << '\n';
    }
    std::cout << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_reduce(int theorem, int nplus, int n, double c, double eps, std::string bracket, const std::string& out) {
    const fs::path dir = run_dir(out, "reduce");
    fs::create_directories(dir);
    int n_plus = 0, n_minus = 0;
    double blo = 0.5, bhi = 2.0;
    if (theorem == 2) {
        if (nplus < 4) {
            std::cerr << "reduce: --theorem 2 needs --nplus >= 4\n";
            return kExitArg;
        }
        n_plus = nplus;
        n_minus = 1;
        blo = 0.8;
        bhi = 3.0;
    } else {
        if (n < 2) {
            std::cerr << "reduce: need --n >= 2\n";
            return kExitArg;
        }
        n_plus = n;
        n_minus = 0;
    }
    if (!bracket.empty()) {
        const auto v = parse_list(bracket);
        if (v.size() != 2 || v[0] >= v[1]) {
            std::cerr << "reduce: --bracket expects lo,hi with lo < hi\n";
            return kExitArg;
        }
        blo = v[0];
        bhi = v[1];
    }
    write_config_echo(dir, json{{"subcommand", "reduce"},
                                {"theorem", theorem},
                                {"n_plus", n_plus},
                                {"n_minus", n_minus},
                                {"c", c},
                                {"eps", eps},
                                {"bracket", {blo, bhi}}});
    make_config(n_plus, n_minus, eps, c, 0.5 * (blo + bhi));  // validate before solving
    const RadialProfile p = solve_profile(40.0, 1e-10);
    ReductionReport rep;
    try {
        rep = solve_dhat(n_plus, n_minus, c, eps, blo, bhi, p);
    } catch (const BracketError& e) {
        std::cerr << "reduce: no sign change on the bracket: balance(" << blo << ") = " << e.f_lo << ", balance("
                  << bhi << ") = " << e.f_hi << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "reduce: " << e.what() << '\n';
        return kExitArg;
    }
    std::ofstream(dir / "reduction.json") << reduction_report_to_json(rep) << '\n';
    std::ofstream roots(dir / "roots.csv");
    roots << "eps,c,n_plus,n_minus,root,asymptotic_root,gap\n"
          << std::setprecision(12) << eps << ',' << c << ',' << n_plus << ',' << n_minus << ',' << rep.d_hat_root
          << ',' << rep.asymptotic_root << ',' << std::fabs(rep.d_hat_root - rep.asymptotic_root) << '\n';
    std::ofstream sweep(dir / "sweep.csv");
    sweep << "d_hat,balance_measured,balance_model\n" << std::setprecision(12);
    for (int i = 0; i <= 16; ++i) {
        const double dh = blo + (bhi - blo) * i / 16.0;
        const BalanceResult b = balance(make_config(n_plus, n_minus, eps, c, dh), p);
        sweep << dh << ',' << b.measured << ',' << b.model << '\n';
    }
    std::cout << "root d_hat = " << rep.d_hat_root << " (asymptotic " << rep.asymptotic_root << "), wrote "
              << dir.string() << '\n';
    return kExitOk;
}

int cmd_kmd(const std::string& family, int n, int N, double nu, bool verify, double perturb, double T, double dt,
            int M, unsigned seed, const std::string& out) {
    const fs::path dir = run_dir(out, "kmd");
    fs::create_directories(dir);
    HelixFamily fam;
    int ring = 0;
    if (family == "polygon") {
        fam = HelixFamily::polygon;
        ring = n;
    } else if (family == "central-minus") {
        fam = HelixFamily::central_minus;
        ring = N;
    } else {
        std::cerr << "kmd: unknown --family (use polygon or central-minus)\n";
        return kExitArg;
    }
    write_config_echo(dir, json{{"subcommand", "kmd"},
                                {"family", family},
                                {"n", ring},
                                {"nu", nu},
                                {"verify", verify},
                                {"perturb", perturb},
                                {"T", T},
                                {"dt", dt},
                                {"M", M},
                                {"seed", seed}});
    try {
        if (verify) {
            const FilamentState st = helix_exact(ring, nu, 0.0, M, fam);
            const auto rhs = kmd_rhs(st);
            double residual = 0.0;
            for (int k = 0; k < st.n_filaments(); ++k)
                for (int m = 0; m < st.M; ++m)
                    residual = std::max(residual, std::abs(rhs[k][m] + cplx(0, 1) * nu * st.f[k][m]));
            const EquilibriumReport rep = relative_equilibrium_check(ring, nu, fam, 1.0, dt, M, 0.0, seed);
            json j{{"schema_version", 1},
                   {"family", family},
                   {"residual", residual},
                   {"nu", nu},
                   {"nu_recovered", rep.nu_recovered},
                   {"max_deviation_T1", rep.max_deviation}};
            std::ofstream(dir / "verify.json") << j.dump(2) << '\n';
            std::cout << "helix residual = " << residual << ", recovered nu = " << rep.nu_recovered << '\n';
            if (residual > 1e-10) {
                std::cerr << "kmd: residual above 1e-10\n";
                return kExitNumeric;
            }
            return kExitOk;
        }
        FilamentState st = helix_exact(ring, nu, 0.0, M, fam);
        const EquilibriumReport rep = relative_equilibrium_check(ring, nu, fam, T, dt, M, perturb, seed);
        json j{{"schema_version", 1},
               {"family", family},
               {"perturb", perturb},
               {"T", T},
               {"growth_factor", rep.growth_factor},
               {"max_deviation", rep.max_deviation},
               {"nu_recovered", rep.nu_recovered},
               {"centroid_drift", rep.centroid_drift}};
        std::ofstream(dir / "growth.json") << j.dump(2) << '\n';
        const std::string traj = (dir / "trajectory.csv").string();
        append_trajectory_csv(st, traj, true);
        const long snaps = 10;
        const double chunk = T / snaps;
        for (long s = 0; s < snaps; ++s) {
            st = integrate(st, chunk, dt);
            append_trajectory_csv(st, traj, false);
        }
        std::cout << "growth factor over [0, " << T << "] = " << rep.growth_factor << ", wrote " << dir.string()
                  << '\n';
        return kExitOk;
    } catch (const CollisionError& e) {
        std::cerr << "kmd: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helical multi-vortex toolkit for the Gross-Pitaevskii traveling-wave problem"};
    app.require_subcommand(1);

    std::string out;
    app.add_option("--out", out, "output directory (default: $GPHELIX_OUTDIR or ./gphelix_runs)");

    auto* sp = app.add_subcommand("profile", "solve the vortex profile equation and export the table");
    double rcut = 40.0, tol = 1e-10;
    bool check_tail = false;
    sp->add_option("--rcut", rcut, "matching radius (>= 20)");
    sp->add_option("--tol", tol, "solver tolerance");
    sp->add_flag("--check-tail", check_tail, "print the r^4 tail-law table at r in {10,20,40}");

    auto* se = app.add_subcommand("error", "closed-form vs finite-difference error comparison and norm scaling");
    int en = 2, enminus = 0;
    double ec = 0.0, edhat = 1.0;
    std::string eeps = "1e-3";
    bool oracle_only = false;
    se->add_option("--n", en, "number of degree +1 ring vortices");
    se->add_option("--nminus", enminus, "0 or 1 central degree -1 vortex");
    se->add_option("--c", ec, "speed coefficient, c < 1");
    se->add_option("--eps", eeps, "comma-separated eps list");
    se->add_option("--dhat", edhat, "dimensionless radius d_hat");
    se->add_flag("--oracle-only", oracle_only, "emit only the finite-difference fields");

    auto* sr = app.add_subcommand("reduce", "reduction report and d_hat root location");
    int theorem = 1, rn = 2, rnplus = 0;
    double rc = 0.0, reps = 1e-4;
    std::string bracket;
    sr->add_option("--theorem", theorem, "1 (polygon) or 2 (polygon + central degree -1)");
    sr->add_option("--n", rn, "polygon size (family 1)");
    sr->add_option("--nplus", rnplus, "ring count (family 2)");
    sr->add_option("--c", rc, "speed coefficient, c < 1");
    sr->add_option("--eps", reps, "small parameter");
    sr->add_option("--bracket", bracket, "root bracket lo,hi");

    auto* sk = app.add_subcommand("kmd", "Klein-Majda-Damodaran filament runs");
    std::string family = "polygon";
    int kn = 3, kN = 5, kM = 64;
    double knu = 0.0, kperturb = 0.0, kT = 1.0, kdt = 1e-3;
    unsigned kseed = 12345;
    bool kverify = false;
    sk->add_option("--family", family, "polygon | central-minus");
    sk->add_option("--n", kn, "polygon filament count");
    sk->add_option("--N", kN, "ring filament count for central-minus");
    sk->add_option("--nu", knu, "rotation frequency, nu < 1");
    sk->add_flag("--verify", kverify, "check the exact family residual and rotation rate");
    sk->add_option("--perturb", kperturb, "perturbation amplitude delta");
    sk->add_option("--T", kT, "final time");
    sk->add_option("--dt", kdt, "time step");
    sk->add_option("--M", kM, "z samples (power of two)");
    sk->add_option("--seed", kseed, "random seed for perturbations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArg;
    }

    try {
        if (sp->parsed()) return cmd_profile(rcut, tol, check_tail, out);
        if (se->parsed()) return cmd_error(en, enminus, ec, eeps, edhat, oracle_only, out);
        if (sr->parsed()) return cmd_reduce(theorem, rnplus, rn, rc, reps, bracket, out);
        if (sk->parsed()) return cmd_kmd(family, kn, kN, knu, kverify, kperturb, kT, kdt, kM, kseed, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition error: " << e.what() << '\n';
        return kExitArg;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitArg;
}
