#include "qmi/cli.hpp"

#include "qmi/entropy.hpp"
#include "qmi/errors.hpp"
#include "qmi/fit.hpp"
#include "qmi/io.hpp"
#include "qmi/kernel.hpp"
#include "qmi/scattering.hpp"
#include "qmi/worldline.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <variant>

namespace qmi::cli {

namespace {

using nlohmann::json;
using io::ConfigFile;
using io::format_number;

std::string iso_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string out_path(const Options& opt, const std::string& file) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / file).string();
}

/// Solver settings shared by the entropy subcommands; command-line
/// overrides win over config keys, which win over defaults.
SolverConfig solver_config(const ConfigFile& cfg, const std::string& section,
                           const Options& opt, int default_refinement) {
    SolverConfig sc;
    sc.refinement = cfg.get_int_or(section, "refinement", default_refinement);
    sc.quad_order = cfg.get_int_or(section, "quad_order", sc.quad_order);
    sc.lambda_rel_tol =
        cfg.get_double_or(section, "lambda_rel_tol", sc.lambda_rel_tol);
    sc.graded = cfg.get_bool_or(section, "graded", sc.graded);
    sc.graded_ratio =
        cfg.get_double_or(section, "graded_ratio", sc.graded_ratio);
    if (opt.refinement >= 0) sc.refinement = opt.refinement;
    if (opt.threads > 0) sc.threads = opt.threads;
    if (sc.refinement < 0 || sc.refinement > 6)
        throw ConfigError("[" + section + "] refinement must be in 0..6");
    if (!(sc.lambda_rel_tol > 0.0))
        throw ConfigError("[" + section + "] lambda_rel_tol must be positive");
    return sc;
}

Route parse_route(const ConfigFile& cfg, const std::string& section) {
    const std::string name =
        cfg.get_string_or(section, "route", "scattering");
    if (name == "scattering") return Route::scattering;
    if (name == "direct") return Route::direct;
    throw ConfigError("[" + section +
                      "] route must be 'scattering' or 'direct', got '" +
                      name + "'");
}

/// Body key whose placement the subcommand computes itself.
PlacedBody parse_unplaced_body(const ConfigFile& cfg,
                               const std::string& section,
                               const std::string& key) {
    const PlacedBody body =
        io::parse_body(cfg.get_string(section, key), "[" + section + "] " + key);
    if (body.center.x != 0.0 || body.center.y != 0.0)
        throw ConfigError("[" + section + "] " + key +
                          ": placement is set by the sweep; drop 'at x y'");
    return body;
}

PlacedBody parse_placed_body(const ConfigFile& cfg, const std::string& section,
                             const std::string& key) {
    return io::parse_body(cfg.get_string(section, key),
                          "[" + section + "] " + key);
}

/// Optional material parameters; both frequencies or neither.
json physical_block(const ConfigFile& cfg, const std::string& section) {
    const bool has0 = cfg.has(section, "omega_0");
    const bool hasp = cfg.has(section, "omega_p");
    if (has0 != hasp)
        throw ConfigError("[" + section +
                          "] omega_0 and omega_p must be given together");
    if (!has0) return nullptr;
    PhysicalParams p;
    p.omega_0 = cfg.get_double(section, "omega_0");
    p.omega_p = cfg.get_double(section, "omega_p");
    validate(p);
    return json{{"omega_0", p.omega_0},
                {"omega_p", p.omega_p},
                {"omega_c", p.omega_c()}};
}

json base_metadata(const std::string& subcommand, const ConfigFile& cfg) {
    return json{{"subcommand", subcommand},
                {"config", cfg.origin()},
                {"generated_at", iso_now()}};
}

std::vector<double> require_positive_gaps(const ConfigFile& cfg,
                                          const std::string& section) {
    const std::vector<double> gaps = cfg.get_list(section, "gaps");
    for (double g : gaps)
        if (!(g > 0.0))
            throw ConfigError("[" + section + "] gaps must all be positive");
    return gaps;
}

ConfigFile load_config(const Options& opt) {
    if (opt.config_path.empty())
        throw ConfigError("a config file is required (--config PATH)");
    return ConfigFile::parse_file(opt.config_path);
}

/// Rejects bad ensemble settings as config errors before any sampling.
void check_ensemble_config(const WorldlineEnsemble& ens,
                           const std::string& section) {
    double prev = 0.0;
    if (ens.l_grid.size() < 2)
        throw ConfigError("[" + section + "] l grid needs at least two points");
    for (double l : ens.l_grid) {
        if (!(l > prev))
            throw ConfigError("[" + section +
                              "] l grid must be positive and increasing");
        prev = l;
    }
    if (ens.n_loops <= 0 || ens.n_centers <= 0)
        throw ConfigError("[" + section + "] sample counts must be positive");
    if (ens.loop_steps < 8)
        throw ConfigError("[" + section + "] loops need at least 8 steps");
}

int finish(const std::string& name, const Options& opt,
           const std::string& csv_name, const std::string& csv,
           const std::string& json_name, const json& meta, bool ok) {
    io::write_text_file(out_path(opt, csv_name), csv);
    io::write_text_file(out_path(opt, json_name), meta.dump(2) + "\n");
    std::cout << name << ": wrote " << out_path(opt, csv_name) << " and "
              << out_path(opt, json_name) << "\n";
    return ok ? kExitOk : kExitRuntime;
}

} // namespace

int run_qmi_sweep(const Options& opt) {
    try {
        const ConfigFile cfg = load_config(opt);
        const std::string sec = "qmi-sweep";
        const PlacedBody body_a = parse_unplaced_body(cfg, sec, "body_a");
        const PlacedBody body_b = parse_unplaced_body(cfg, sec, "body_b");
        const std::vector<double> gaps = require_positive_gaps(cfg, sec);
        const Route route = parse_route(cfg, sec);
        const SolverConfig sc = solver_config(cfg, sec, opt, 2);
        const json physical = physical_block(cfg, sec);
        const double half_a = shape_half_width(body_a.shape);
        const double half_b = shape_half_width(body_b.shape);

        std::ostringstream csv;
        csv << "d,qmi_over_omega_c,error,panels,route\n";
        json meta = base_metadata(sec, cfg);
        meta["bodies"] = {{"a", cfg.get_string(sec, "body_a")},
                          {"b", cfg.get_string(sec, "body_b")}};
        meta["refinement"] = sc.refinement;
        meta["route"] = route_name(route);
        meta["graded"] = sc.graded;
        if (!physical.is_null()) meta["physical"] = physical;
        meta["points"] = json::array();
        meta["failures"] = json::array();

        std::vector<SweepPoint> points;
        for (double gap : gaps) {
            const PlacedBody b_here{body_b.shape,
                                    {gap + half_a + half_b, 0.0}};
            try {
                const TwoBodySystem sys(body_a, b_here, sc);
                const QmiResult r = sys.integrate(route);
                long long panels = 0;
                for (std::size_t n : r.panels)
                    panels += static_cast<long long>(n);
                csv << format_number(gap) << ',' << format_number(r.value)
                    << ',' << format_number(r.error) << ',' << panels << ','
                    << route_name(route) << '\n';
                points.push_back({gap, r.value});
                meta["points"].push_back({{"d", gap},
                                          {"value", r.value},
                                          {"error", r.error},
                                          {"center_distance", r.d},
                                          {"panels", panels},
                                          {"lambda_evals", r.lambda_evals},
                                          {"converged", r.converged}});
                std::cout << "d=" << format_number(gap) << "  I/omega_c="
                          << format_number(r.value) << "\n";
            } catch (const std::exception& e) {
                meta["failures"].push_back({{"d", gap}, {"error", e.what()}});
                std::cerr << "d=" << format_number(gap) << " failed: "
                          << e.what() << "\n";
            }
        }

        meta["fits"] = json::object();
        try {
            std::vector<double> xs, ys;
            for (const SweepPoint& p : points) {
                xs.push_back(p.d);
                ys.push_back(p.value);
            }
            const PowerFit pf = fit_power_law(xs, ys);
            meta["fits"]["power"] = {{"exponent", pf.exponent},
                                     {"amplitude", pf.amplitude},
                                     {"goodness", pf.goodness}};
        } catch (const std::exception&) {
            meta["fits"]["power"] = nullptr;
        }
        try {
            const LineFit lf = fit_short_distance_law(points, half_a);
            meta["fits"]["log"] = {{"slope", lf.slope},
                                   {"intercept", lf.intercept},
                                   {"goodness", lf.goodness}};
        } catch (const std::exception&) {
            meta["fits"]["log"] = nullptr;
        }

        return finish("qmi-sweep", opt, "qmi_sweep.csv", csv.str(),
                      "qmi_sweep.json", meta, meta["failures"].empty());
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int run_capacitance(const Options& opt) {
    try {
        const ConfigFile cfg = load_config(opt);
        const std::string sec = "capacitance";
        const PlacedBody body = parse_placed_body(cfg, sec, "body");
        const std::vector<double> lambdas = cfg.get_list(sec, "lambdas");
        for (double l : lambdas)
            if (!(l >= 0.0))
                throw ConfigError("[" + sec +
                                  "] lambdas must be non-negative");
        const SolverConfig sc = solver_config(cfg, sec, opt, 3);
        const auto* disc = std::get_if<Disc>(&body.shape);

        const TriangleMesh mesh = mesh_shape(body.shape, sc.refinement);
        const KernelMatrix g = assemble_self(mesh, sc.quad_order, sc.threads);

        std::ostringstream csv;
        csv << (disc ? "lambda,c_numeric,c_analytic,rel_err\n"
                     : "lambda,c_numeric\n");
        json meta = base_metadata(sec, cfg);
        meta["body"] = cfg.get_string(sec, "body");
        meta["refinement"] = sc.refinement;
        meta["panels"] = mesh.size();
        meta["points"] = json::array();
        meta["failures"] = json::array();

        for (double lambda : lambdas) {
            try {
                const double c = monopole_capacitance(g, lambda);
                csv << format_number(lambda) << ',' << format_number(c);
                json point{{"lambda", lambda}, {"c_numeric", c}};
                if (disc) {
                    const double ref =
                        disc_capacitance_analytic(disc->radius, lambda);
                    const double rel = c / ref - 1.0;
                    csv << ',' << format_number(ref) << ','
                        << format_number(rel);
                    point["c_analytic"] = ref;
                    point["rel_err"] = rel;
                }
                csv << '\n';
                meta["points"].push_back(point);
            } catch (const std::exception& e) {
                meta["failures"].push_back(
                    {{"lambda", lambda}, {"error", e.what()}});
                std::cerr << "lambda=" << format_number(lambda)
                          << " failed: " << e.what() << "\n";
            }
        }
        return finish("capacitance", opt, "capacitance.csv", csv.str(),
                      "capacitance.json", meta, meta["failures"].empty());
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int run_ssa(const Options& opt) {
    try {
        const ConfigFile cfg = load_config(opt);
        const std::string sec = "ssa";
        const PlacedBody a = parse_placed_body(cfg, sec, "body_a");
        const PlacedBody b = parse_placed_body(cfg, sec, "body_b");
        const PlacedBody c = parse_placed_body(cfg, sec, "body_c");
        const std::vector<double> lambdas =
            cfg.get_list_or(sec, "lambdas", {0.0, 0.3, 1.0, 3.0});
        for (double l : lambdas)
            if (!(l >= 0.0))
                throw ConfigError("[" + sec +
                                  "] lambdas must be non-negative");
        const SolverConfig sc = solver_config(cfg, sec, opt, 1);

        WorldlineEnsemble ens;
        ens.l_grid = cfg.get_list_or(
            sec, "wl_l_grid", {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0});
        ens.n_loops = cfg.get_int_or(sec, "wl_loops", 64);
        ens.n_centers = cfg.get_int_or(sec, "wl_centers", 512);
        ens.loop_steps = cfg.get_int_or(sec, "wl_steps", 64);
        ens.seed = cfg.get_seed_or(sec, "seed", 2024);
        if (opt.seed >= 0) ens.seed = static_cast<std::uint64_t>(opt.seed);
        check_ensemble_config(ens, sec);

        // pointwise table
        const std::vector<SsaPoint> table =
            ssa_pointwise_check(a, b, c, lambdas, sc);
        bool pointwise_ok = true;
        std::ostringstream csv;
        csv << "lambda,delta3_s,delta_s_ac,holds\n";
        for (const SsaPoint& p : table) {
            pointwise_ok = pointwise_ok && p.holds;
            csv << format_number(p.lambda) << ',' << format_number(p.delta3_s)
                << ',' << format_number(p.delta_s_ac) << ','
                << (p.holds ? 1 : 0) << '\n';
        }

        // integrated comparison
        const QmiResult i3 = tripartite_information(a, b, c, sc);
        const QmiResult iac = mutual_information(a, c, sc);
        const double slack =
            2.0 * (i3.error + iac.error) +
            1e-12 * std::max(1.0, std::abs(iac.value));
        const bool integrated_ok = i3.value <= iac.value + slack;

        // worldline counting
        const SsaCounts counts = dirichlet_ssa_counts(a, b, c, ens);
        const bool counts_ok = counts.n_abc <= counts.n_ac;

        const bool pass = pointwise_ok && integrated_ok && counts_ok;
        json meta = base_metadata(sec, cfg);
        meta["bodies"] = {{"a", cfg.get_string(sec, "body_a")},
                          {"b", cfg.get_string(sec, "body_b")},
                          {"c", cfg.get_string(sec, "body_c")}};
        meta["refinement"] = sc.refinement;
        meta["points"] = json::array();
        for (const SsaPoint& p : table)
            meta["points"].push_back({{"lambda", p.lambda},
                                      {"delta3_s", p.delta3_s},
                                      {"delta_s_ac", p.delta_s_ac},
                                      {"holds", p.holds}});
        meta["integrated"] = {{"i3", i3.value},
                              {"i3_error", i3.error},
                              {"i_ac", iac.value},
                              {"i_ac_error", iac.error},
                              {"holds", integrated_ok}};
        meta["worldline"] = {{"n_abc", counts.n_abc},
                             {"n_ac", counts.n_ac},
                             {"n_samples", counts.n_samples},
                             {"holds", counts_ok}};
        meta["pass"] = pass;

        std::cout << "pointwise: " << (pointwise_ok ? "PASS" : "FAIL")
                  << "  integrated: I3=" << format_number(i3.value)
                  << " <= I_AC=" << format_number(iac.value) << " "
                  << (integrated_ok ? "PASS" : "FAIL")
                  << "  counts: " << counts.n_abc << " <= " << counts.n_ac
                  << " " << (counts_ok ? "PASS" : "FAIL") << "\n";
        return finish("ssa", opt, "ssa.csv", csv.str(), "ssa.json", meta,
                      pass);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int run_tripartite(const Options& opt) {
    try {
        const ConfigFile cfg = load_config(opt);
        const std::string sec = "tripartite";
        const PlacedBody a = parse_placed_body(cfg, sec, "body_a");
        const PlacedBody b = parse_placed_body(cfg, sec, "body_b");
        const PlacedBody c = parse_placed_body(cfg, sec, "body_c");
        const SolverConfig sc = solver_config(cfg, sec, opt, 1);

        const QmiResult r = tripartite_information(a, b, c, sc);
        std::ostringstream csv;
        csv << "value,error,d,lambda_evals,converged\n"
            << format_number(r.value) << ',' << format_number(r.error) << ','
            << format_number(r.d) << ',' << r.lambda_evals << ','
            << (r.converged ? 1 : 0) << '\n';

        json meta = base_metadata(sec, cfg);
        meta["bodies"] = {{"a", cfg.get_string(sec, "body_a")},
                          {"b", cfg.get_string(sec, "body_b")},
                          {"c", cfg.get_string(sec, "body_c")}};
        meta["refinement"] = sc.refinement;
        meta["value"] = r.value;
        meta["error"] = r.error;
        meta["converged"] = r.converged;

        std::cout << "I(A,B,C)/omega_c = " << format_number(r.value)
                  << " +- " << format_number(r.error) << "\n";
        return finish("tripartite", opt, "tripartite.csv", csv.str(),
                      "tripartite.json", meta, true);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int run_worldline(const Options& opt) {
    try {
        const ConfigFile cfg = load_config(opt);
        const std::string sec = "worldline";
        const PlacedBody body_a = parse_unplaced_body(cfg, sec, "body_a");
        const PlacedBody body_b = parse_unplaced_body(cfg, sec, "body_b");
        const std::vector<double> gaps = require_positive_gaps(cfg, sec);

        WorldlineEnsemble ens;
        ens.l_grid = cfg.get_list_or(
            sec, "l_grid", {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0});
        ens.n_loops = cfg.get_int_or(sec, "n_loops", 96);
        ens.n_centers = cfg.get_int_or(sec, "n_centers", 3072);
        ens.loop_steps = cfg.get_int_or(sec, "steps", 64);
        ens.seed = cfg.get_seed_or(sec, "seed", 2024);
        if (opt.seed >= 0) ens.seed = static_cast<std::uint64_t>(opt.seed);
        check_ensemble_config(ens, sec);

        const double half_a = shape_half_width(body_a.shape);
        const double half_b = shape_half_width(body_b.shape);

        std::ostringstream csv;
        csv << "l,d,estimate,stderr,n_samples\n";
        json meta = base_metadata(sec, cfg);
        meta["bodies"] = {{"a", cfg.get_string(sec, "body_a")},
                          {"b", cfg.get_string(sec, "body_b")}};
        meta["seed"] = ens.seed;
        meta["n_loops"] = ens.n_loops;
        meta["n_centers"] = ens.n_centers;
        meta["loop_steps"] = ens.loop_steps;
        meta["gaps"] = json::array();

        for (double gap : gaps) {
            const PlacedBody b_here{body_b.shape,
                                    {gap + half_a + half_b, 0.0}};
            const DirichletEstimate est =
                dirichlet_delta_S(body_a, b_here, ens);
            for (const DirichletRow& row : est.rows) {
                csv << format_number(row.l) << ',' << format_number(gap)
                    << ',' << format_number(row.estimate) << ','
                    << format_number(row.std_error) << ',' << row.n_samples
                    << '\n';
            }
            meta["gaps"].push_back({{"d", gap},
                                    {"value", est.value},
                                    {"std_error", est.std_error},
                                    {"hits", est.hits},
                                    {"reliable", est.reliable}});
            std::cout << "gap=" << format_number(gap) << "  estimate="
                      << format_number(est.value) << " +- "
                      << format_number(est.std_error) << (est.reliable
                          ? ""
                          : "  (no joint hits; raise the sample counts)")
                      << "\n";
        }
        return finish("worldline", opt, "worldline.csv", csv.str(),
                      "worldline.json", meta, true);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

namespace {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

void report(std::vector<Check>& checks, const std::string& name, bool pass,
            const std::string& detail) {
    checks.push_back({name, pass, detail});
    std::cout << (pass ? "PASS  " : "FAIL  ") << name << " (" << detail
              << ")\n";
}

} // namespace

int run_selftest(const Options& opt) {
    try {
        std::vector<Check> checks;
        const int threads = opt.threads > 0 ? opt.threads : 1;

        // kernel symmetry and positive definiteness
        {
            const TriangleMesh mesh = mesh_disc(1.0, 1);
            const KernelMatrix g = assemble_self(mesh, 6, threads);
            const double asym =
                (g.entries - g.entries.transpose()).cwiseAbs().maxCoeff();
            const bool sym_ok = asym == 0.0;
            const Eigen::LLT<Eigen::MatrixXd> bare(g.entries);
            const Eigen::LLT<Eigen::MatrixXd> shifted(
                system_matrix(g, 0.7).K);
            const bool pd_ok = bare.info() == Eigen::Success &&
                               shifted.info() == Eigen::Success;
            report(checks, "kernel-symmetry", sym_ok,
                   "max asymmetry " + format_number(asym));
            report(checks, "kernel-positive-definite", pd_ok,
                   "Cholesky at lambda 0 and 0.7");
        }

        // exchange symmetry of the mutual information
        {
            SolverConfig sc;
            sc.refinement = 1;
            sc.threads = threads;
            const PlacedBody a{Disc{1.0}, {0.0, 0.0}};
            const PlacedBody b{Disc{2.0}, {20.0, 0.0}};
            const double ab = mutual_information(a, b, sc).value;
            const double ba = mutual_information(b, a, sc).value;
            const double rel = std::abs(ab - ba) / std::abs(ab);
            report(checks, "exchange-symmetry", rel < 1e-10,
                   "relative difference " + format_number(rel));
        }

        // capacitance scale covariance: C(sR, s*lambda) = s C(R, lambda)
        {
            const KernelMatrix g1 = assemble_self(mesh_disc(1.0, 1), 6, threads);
            const KernelMatrix g2 = assemble_self(mesh_disc(2.0, 1), 6, threads);
            const double c1 = monopole_capacitance(g1, 0.3);
            const double c2 = monopole_capacitance(g2, 0.6);
            const double rel = std::abs(c2 / (2.0 * c1) - 1.0);
            report(checks, "capacitance-scale-covariance", rel < 1e-10,
                   "relative defect " + format_number(rel));
        }

        // QMI scale covariance: I(sR, sd) = s I(R, d) up to quadrature
        {
            SolverConfig sc;
            sc.refinement = 1;
            sc.threads = threads;
            const double base =
                mutual_information({Disc{1.0}, {0, 0}}, {Disc{1.0}, {20.0, 0}},
                                   sc)
                    .value;
            const double scaled =
                mutual_information({Disc{3.0}, {0, 0}}, {Disc{3.0}, {60.0, 0}},
                                   sc)
                    .value;
            const double rel = std::abs(scaled / (3.0 * base) - 1.0);
            report(checks, "qmi-scale-covariance", rel < 2e-3,
                   "relative defect " + format_number(rel));
        }

        // mesh convergence of the integrated information
        {
            SolverConfig sc;
            sc.threads = threads;
            sc.lambda_rel_tol = 1e-3;
            sc.refinement = 2;
            const PlacedBody a{Disc{1.0}, {0.0, 0.0}};
            const PlacedBody b{Disc{1.0}, {20.0, 0.0}};
            const double coarse = mutual_information(a, b, sc).value;
            sc.refinement = 3;
            const double fine = mutual_information(a, b, sc).value;
            const double rel = std::abs(fine / coarse - 1.0);
            report(checks, "mesh-convergence", rel < 0.03,
                   "refinement 2 to 3 change " + format_number(rel));
        }

        bool all = true;
        json meta{{"subcommand", "selftest"}, {"generated_at", iso_now()}};
        meta["checks"] = json::array();
        for (const Check& c : checks) {
            all = all && c.pass;
            meta["checks"].push_back(
                {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
        meta["pass"] = all;
        io::write_text_file(out_path(opt, "selftest.json"),
                            meta.dump(2) + "\n");
        std::cout << (all ? "selftest: all checks passed\n"
                          : "selftest: FAILURES above\n");
        return all ? kExitOk : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace qmi::cli
