#include "maxdis/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxdis/boundary.hpp"
#include "maxdis/diffops.hpp"
#include "maxdis/fields.hpp"
#include "maxdis/nogo.hpp"
#include "maxdis/profile.hpp"
#include "maxdis/quadrature.hpp"
#include "maxdis/radial.hpp"
#include "maxdis/svg.hpp"

namespace maxdis::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// profile / config plumbing

struct ProfileSpec {
    std::string kind;      // exponential | bump | zero
    double epsilon = 0.25;
    double b = 2.0;

    Profile build() const {
        if (kind == "exponential") return make_exponential(epsilon);
        if (kind == "bump") {
            if (!(b > 1.0)) throw UsageError("b must exceed 1");
            return make_bump(b);
        }
        if (kind == "zero") {
            return make_custom([](double) { return 0.0; }, [](double) { return 0.0; },
                               [](double) { return 0.0; }, [](double) { return 0.0; });
        }
        throw UsageError("unknown profile kind: " + kind);
    }

    json describe() const {
        json j;
        j["kind"] = kind;
        if (kind == "exponential") j["epsilon"] = epsilon;
        if (kind == "bump") j["b"] = b;
        return j;
    }
};

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw UsageError("unknown config key '" + item.key() + "' in " + where);
        }
    }
}

ProfileSpec parse_profile_json(const json& j) {
    if (!j.is_object()) throw UsageError("profile descriptor must be an object");
    reject_unknown_keys(j, {"kind", "epsilon", "b"}, "profile");
    ProfileSpec spec;
    spec.kind = j.value("kind", "");
    if (j.contains("epsilon")) spec.epsilon = j.at("epsilon").get<double>();
    if (j.contains("b")) spec.b = j.at("b").get<double>();
    return spec;
}

json load_config(const std::string& path, const std::vector<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const std::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config root must be a JSON object");
    reject_unknown_keys(cfg, allowed, "config");
    return cfg;
}

void write_report(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file " + out_path);
        out << report.dump(2) << "\n";
    }
}

json residual_report_json(const diffops::ResidualReport& rep) {
    return json{{"norms", rep.residual_norms},
                {"steps", rep.steps},
                {"order", rep.estimated_order},
                {"points", rep.points_tested}};
}

struct CheckList {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double tolerance, bool pass) {
        checks.push_back(json{{"name", name}, {"value", value}, {"tolerance", tolerance},
                              {"pass", pass}});
        all_pass = all_pass && pass;
    }
    void add_range(const std::string& name, double value, double lo, double hi) {
        const bool pass = value >= lo && value <= hi;
        checks.push_back(json{{"name", name}, {"value", value}, {"range", json::array({lo, hi})},
                              {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const ProfileSpec& spec, int points, unsigned seed, double tol_residual,
               double tol_residue, double tol_boundary, const std::string& out_path,
               const std::string& batch_in, const std::string& batch_out) {
    const Profile prof = spec.build();

    // optional CSV pass-through mode
    if (!batch_in.empty()) {
        if (batch_out.empty()) throw UsageError("--batch-out is required with --batch-in");
        std::ifstream in(batch_in);
        if (!in) throw UsageError("cannot open " + batch_in);
        std::ofstream out(batch_out);
        if (!out) throw std::runtime_error("cannot open " + batch_out);
        append_fields_csv(prof, in, out);
    }

    CheckList cl;
    json report;
    report["schema"] = kSchemaVersion;
    report["command"] = "verify";
    report["profile"] = spec.describe();
    report["seed"] = seed;

    // Maxwell + divergence residual suite over low-discrepancy points
    const auto pts = diffops::sample_points(points, 1.0, 3.0, 0.0, 2.0, seed);
    diffops::FDScheme scheme;  // step 1e-3, order 2, 3 levels
    const auto rep = diffops::maxwell_residual_suite(prof, pts, scheme);
    report["maxwell"] = residual_report_json(rep);
    cl.add("maxwell_residual_at_1e-3", rep.residual_norms.front(), tol_residual,
           rep.residual_norms.front() < tol_residual);
    if (std::isfinite(rep.estimated_order)) {
        cl.add_range("maxwell_order", rep.estimated_order, 1.8, 2.3);
    } else {
        cl.checks.push_back(json{{"name", "maxwell_order"}, {"value", "at-zero-floor"},
                                 {"pass", true}});
    }

    // Residue identity on spheres rho in [1,3]
    double residue_worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double rho = 1.0 + 2.0 * i / 9.0;
            const double t = 2.0 * j / 9.0;
            const auto omega_pts = diffops::sample_points(8, 0.9, 1.1, 0, 1, 17u + unsigned(i));
            for (const auto& op : omega_pts) {
                const Vec3 omega = op.x / norm(op.x);
                const auto [lhs, rhs] = boundary::residue_identity(prof, rho * omega, t);
                residue_worst = std::max(residue_worst, norm(lhs - rhs) / (1.0 + norm(rhs)));
            }
        }
    }
    cl.add("residue_identity_rel", residue_worst, tol_residue, residue_worst <= tol_residue);

    // matched dissipative boundary residual (exponential only)
    if (spec.kind == "exponential") {
        double worst = 0.0;
        const auto frames = diffops::sample_points(40, 0.9, 1.1, 0.0, 2.0, seed + 1);
        for (const auto& fp : frames) {
            const Vec3 omega = fp.x / norm(fp.x);
            const auto frame = boundary::BoundaryFrame::at(omega);
            const FieldSample u = eval_pair(prof, {fp.t, omega});
            const double scale = norm(u.E) + norm(u.B) + 1e-300;
            worst = std::max(worst,
                             norm(boundary::neps_residual(u, frame, spec.epsilon)) / scale);
        }
        cl.add("boundary_residual_rel", worst, tol_boundary, worst <= tol_boundary);
    }

    report["checks"] = cl.checks;
    report["pass"] = cl.all_pass;
    write_report(report, out_path);
    return cl.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// boundary-scan

int cmd_boundary_scan(double eps, int samples, unsigned seed, int frames,
                      const std::string& out_path) {
    const auto scan = boundary::dissipativity_scan(eps, samples, seed);

    int rank_ok = 0, spectrum_ok = 0;
    const auto frame_pts = diffops::sample_points(frames, 0.9, 1.1, 0, 1, seed);
    for (const auto& fp : frame_pts) {
        const auto frame = boundary::BoundaryFrame::at(fp.x / norm(fp.x));
        const auto ev = boundary::an_spectrum(frame);
        const double expected[6] = {-1, -1, 0, 0, 1, 1};
        bool ok = true;
        for (int i = 0; i < 6; ++i) ok = ok && std::abs(ev[size_t(i)] - expected[i]) < 1e-10;
        spectrum_ok += ok;
        int zeros = 0;
        for (double v : ev) zeros += std::abs(v) < 1e-10;
        rank_ok += (zeros == 2);
    }

    const bool pass = scan.min_margin < 0.0 && scan.c_estimate > 0.0 && scan.dim_check &&
                      scan.kernel_check && rank_ok == frames && spectrum_ok == frames;

    json report;
    report["schema"] = kSchemaVersion;
    report["command"] = "boundary-scan";
    report["eps"] = eps;
    report["samples"] = samples;
    report["seed"] = seed;
    report["min_margin"] = scan.min_margin;
    report["c_estimate"] = scan.c_estimate;
    report["kappa"] = boundary::measured_kappa();
    report["rank_checks"] = json{{"frames", frames},
                                 {"rank4_ok", rank_ok},
                                 {"spectrum_ok", spectrum_ok},
                                 {"dim_Neps_is_4", scan.dim_check},
                                 {"kernel_in_Neps", scan.kernel_check}};
    report["pass"] = pass;
    write_report(report, out_path);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// energy-trace

int cmd_energy_trace(const ProfileSpec& spec, double t0, double t1, int samples,
                     const std::string& csv_path, const std::string& svg_path,
                     const std::string& out_path) {
    const Profile prof = spec.build();
    const auto grid = quadrature::ShellGrid::make(quadrature::default_r_max(prof));
    const auto trace = quadrature::energy_trace(prof, t0, t1, samples, grid);

    {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open " + csv_path);
        csv.precision(17);
        csv << "t,energy,flux\n";
        for (size_t i = 0; i < trace.times.size(); ++i) {
            csv << trace.times[i] << ',' << trace.energy[i] << ',' << trace.flux[i] << '\n';
        }
    }
    emit_svg(trace, svg_path);

    json report;
    report["schema"] = kSchemaVersion;
    report["command"] = "energy-trace";
    report["profile"] = spec.describe();
    report["samples"] = samples;
    report["r_max"] = grid.r_max;
    report["csv"] = csv_path;
    report["svg"] = svg_path;
    bool pass = true;
    if (spec.kind == "exponential") {
        const double fitted = quadrature::decay_rate(trace);
        const double expected = prof.rate();
        report["fitted_rate"] = fitted;
        report["expected_rate"] = expected;
        pass = std::abs(fitted - expected) <= 0.01 * std::abs(expected);
    }
    report["pass"] = pass;
    write_report(report, out_path);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const ProfileSpec& spec_in, const std::string& bc_str, double delta, double R,
                 double dr, double t_end, const std::string& trace_csv,
                 const std::string& report_path) {
    ProfileSpec spec = spec_in;
    boundary::BoundarySpace bc;
    json bc_json;
    double expected_rate = std::nan("");
    bool is_gamma = false;

    if (bc_str.rfind("eps:", 0) == 0) {
        const double eps = std::stod(bc_str.substr(4));
        bc = boundary::BoundarySpace::make_eps(eps);
        bc_json = json{{"kind", "eps"}, {"eps", eps}};
        if (spec.kind.empty()) { spec.kind = "exponential"; spec.epsilon = eps; }
    } else if (bc_str == "gamma") {
        is_gamma = true;
        const double b = spec.kind == "bump" && spec.b > 1.0 ? spec.b : boundary::choose_b(delta);
        spec.kind = "bump";
        spec.b = b;
        const double sup = boundary::gamma_sup(b);
        bc = boundary::BoundarySpace::make_gamma(
            [b](double t) { return boundary::gamma_of_t(t, b); }, std::max(b - 1.0, 1e-6));
        bc_json = json{{"kind", "gamma"}, {"delta", delta}, {"b", b}, {"sup_gamma", sup}};
    } else {
        throw UsageError("--bc must be 'eps:<value>' or 'gamma'");
    }

    const Profile prof = spec.build();
    if (spec.kind == "exponential") expected_rate = prof.rate();

    const auto grid = radial::RadialGrid::make(R, dr);
    auto state = radial::init_from_profile(prof, grid);
    const auto outer = is_gamma ? radial::OuterBoundary::Extrapolation
                                : radial::OuterBoundary::AnalyticDirichlet;
    const double dt = 0.45 * dr;
    auto result = radial::run(std::move(state), t_end, dt, bc, outer);

    if (!trace_csv.empty()) {
        std::ofstream csv(trace_csv);
        if (!csv) throw std::runtime_error("cannot open " + trace_csv);
        csv.precision(17);
        csv << "t,energy,boundary_residual,constraint_residual\n";
        for (size_t i = 0; i < result.trace.times.size(); ++i) {
            csv << result.trace.times[i] << ',' << result.trace.energy[i] << ','
                << result.boundary_residual[i] << ',' << result.constraint_residuals[i] << '\n';
        }
    }

    const double e0 = result.trace.energy.front();
    double disappearance_time = std::nan("");
    for (size_t i = 0; i < result.trace.times.size(); ++i) {
        if (result.trace.energy[i] <= 1e-6 * e0) {
            disappearance_time = result.trace.times[i];
            break;
        }
    }

    json report;
    report["schema"] = kSchemaVersion;
    report["command"] = "simulate";
    report["profile"] = spec.describe();
    report["bc"] = bc_json;
    report["grid"] = json{{"R", R}, {"dr", dr}, {"dt", dt}};
    report["t_end"] = t_end;
    if (!trace_csv.empty()) report["trace_csv"] = trace_csv;

    bool pass = true;
    if (spec.kind == "exponential") {
        const double fitted = quadrature::decay_rate(result.trace);
        report["fitted_rate"] = fitted;
        report["expected_rate"] = expected_rate;
        pass = std::abs(fitted - expected_rate) <= 0.02 * std::abs(expected_rate);
    } else {
        report["fitted_rate"] = nullptr;
        report["expected_rate"] = nullptr;
        // exact disappearance is promised only by the gamma construction
        if (is_gamma) pass = std::isfinite(disappearance_time);
    }
    if (std::isfinite(disappearance_time)) {
        report["disappearance_time"] = disappearance_time;
    } else {
        report["disappearance_time"] = nullptr;
    }
    report["final_energy_ratio"] = result.trace.energy.back() / std::max(e0, 1e-300);
    report["pass"] = pass;
    write_report(report, report_path);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// nogo-demo

int cmd_nogo_demo(const std::string& demo_case, unsigned seed, const std::string& csv_path,
                  const std::string& out_path) {
    json report;
    report["schema"] = kSchemaVersion;
    report["command"] = "nogo-demo";
    report["case"] = demo_case;
    report["label"] = "demonstration";  // numerical evidence, not a proof
    report["seed"] = seed;
    bool pass = true;

    const Profile f = make_bump(2.0);
    std::ostringstream csv;
    csv.precision(17);

    if (demo_case == "modulated") {
        const auto pts = diffops::sample_points(40, 1.2, 2.8, 0.0, 0.5, seed);
        diffops::FDScheme scheme;
        scheme.step = 2e-3;
        json cases = json::array();
        csv << "profile,step,min_abs_div,max_abs_div\n";
        const std::vector<std::pair<std::string, TangentialProfile>> profiles = {
            {"rot_e1", nogo::profile_rot_e1(f)},
            {"merid_e1", nogo::profile_merid_e1(f)},
            {"rot_e2", nogo::profile_rot_e2(f)}};
        // reference: the residual of the true solutions on the same mesh
        const auto ref = diffops::maxwell_residual_suite(f, pts, scheme);
        for (const auto& [name, pe] : profiles) {
            const auto rep = nogo::modulated_div_obstruction(pe, pts, scheme);
            json levels = json::array();
            for (const auto& lv : rep.levels) {
                levels.push_back(json{{"step", lv.step}, {"min_abs_div", lv.min_abs_div},
                                      {"max_abs_div", lv.max_abs_div}});
                csv << name << ',' << lv.step << ',' << lv.min_abs_div << ',' << lv.max_abs_div
                    << '\n';
            }
            const bool mesh_independent =
                rep.levels.back().max_abs_div > 0.5 * rep.levels.front().max_abs_div;
            const bool dominates = rep.max_abs_div > 10.0 * ref.residual_norms.back();
            pass = pass && mesh_independent && dominates;
            cases.push_back(json{{"profile", name}, {"levels", levels},
                                 {"mesh_independent", mesh_independent},
                                 {"dominates_solution_residual", dominates}});
        }
        report["reference_solution_residual"] = ref.residual_norms.back();
        report["cases"] = cases;
    } else if (demo_case == "quiet") {
        json cases = json::array();
        csv << "profile,min_norm,field_scale,omega1,omega2,omega3\n";
        const std::vector<std::pair<std::string, TangentialProfile>> profiles = {
            {"rot_e1", nogo::profile_rot_e1(f)},
            {"merid_e1", nogo::profile_merid_e1(f)},
            {"rot_e2", nogo::profile_rot_e2(f)}};
        for (const auto& [name, pe] : profiles) {
            const auto qs = nogo::quiet_spot_find(pe, 0.5, 64);
            const bool certified = qs.min_norm < 1e-6 * qs.field_scale;
            pass = pass && certified;
            cases.push_back(json{{"profile", name}, {"min_norm", qs.min_norm},
                                 {"field_scale", qs.field_scale},
                                 {"omega_star", json::array({qs.omega_star.x, qs.omega_star.y,
                                                             qs.omega_star.z})},
                                 {"certified_zero", certified}});
            csv << name << ',' << qs.min_norm << ',' << qs.field_scale << ',' << qs.omega_star.x
                << ',' << qs.omega_star.y << ',' << qs.omega_star.z << '\n';
        }
        report["cases"] = cases;
    } else if (demo_case == "georgiev") {
        // residual growth on shrinking tubes around the x3 axis
        const auto pe = nogo::profile_georgiev(f);
        diffops::FDScheme scheme;
        scheme.step = 5e-4;
        scheme.refinement_levels = 2;
        json sweep = json::array();
        csv << "tube_radius,max_abs_div\n";
        double prev = 0.0;
        bool growing = true;
        for (const double rho_cyl : {0.8, 0.4, 0.2, 0.1}) {
            std::vector<SpacetimePoint> pts;
            for (int k = 0; k < 16; ++k) {
                const double phi = 2.0 * M_PI * k / 16.0;
                const double z = 1.2 + 0.3 * (k % 4);
                pts.push_back({0.25, {rho_cyl * std::cos(phi), rho_cyl * std::sin(phi), z}});
            }
            const auto rep = nogo::modulated_div_obstruction(pe, pts, scheme);
            sweep.push_back(json{{"tube_radius", rho_cyl}, {"max_abs_div", rep.max_abs_div}});
            csv << rho_cyl << ',' << rep.max_abs_div << '\n';
            if (prev > 0.0) growing = growing && rep.max_abs_div > prev;
            prev = rep.max_abs_div;
        }
        report["sweep"] = sweep;
        report["residual_grows_toward_axis"] = growing;
        pass = growing;
    } else {
        throw UsageError("--case must be modulated, quiet, or georgiev");
    }

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open " + csv_path);
        out << csv.str();
    }
    report["pass"] = pass;
    write_report(report, out_path);
    return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"incoming Maxwell solutions with dissipative boundary conditions: "
                 "verification and desk-scale experiments"};
    app.require_subcommand(1);

    // shared options
    std::string config_path, out_path;
    ProfileSpec spec;
    unsigned seed = 0;

    auto add_profile_opts = [&](CLI::App* cmd) {
        cmd->add_option("--profile", spec.kind, "profile kind: exponential | bump | zero");
        cmd->add_option("--epsilon", spec.epsilon, "exponential profile parameter");
        cmd->add_option("--b", spec.b, "bump half-width (> 1)");
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_path, "report path (stdout when omitted)");
        cmd->add_option("--seed", seed, "sampling seed");
    };

    // verify
    auto* verify = app.add_subcommand("verify", "residual suites for one profile");
    int points = 200;
    double tol_residual = 1e-5, tol_residue = 1e-12, tol_boundary = 1e-12;
    std::string batch_in, batch_out;
    add_profile_opts(verify);
    verify->add_option("--points", points, "number of sample points");
    verify->add_option("--tol-residual", tol_residual, "FD residual tolerance at step 1e-3");
    verify->add_option("--tol-residue", tol_residue, "residue identity relative tolerance");
    verify->add_option("--tol-boundary", tol_boundary, "boundary residual relative tolerance");
    verify->add_option("--batch-in", batch_in, "CSV of (t,x1,x2,x3) rows to evaluate");
    verify->add_option("--batch-out", batch_out, "CSV output with E,B columns appended");

    // boundary-scan
    auto* bscan = app.add_subcommand("boundary-scan", "dissipativity scan of N_eps");
    double scan_eps = 0.25;
    int scan_samples = 100000, scan_frames = 100;
    bscan->add_option("--eps", scan_eps, "boundary parameter (> -1)");
    bscan->add_option("--samples", scan_samples, "random samples in N_eps");
    bscan->add_option("--frames", scan_frames, "random frames for the spectrum check");
    bscan->add_option("--config", config_path, "JSON config file");
    bscan->add_option("--out", out_path, "report path (stdout when omitted)");
    bscan->add_option("--seed", seed, "scan seed");

    // energy-trace
    auto* etrace = app.add_subcommand("energy-trace", "shell energy and boundary flux trace");
    double t0 = 0.0, t1 = 5.0;
    int samples = 101;
    std::string csv_path = "energy_trace.csv", svg_path = "energy_trace.svg";
    add_profile_opts(etrace);
    etrace->add_option("--t0", t0, "trace start time");
    etrace->add_option("--t1", t1, "trace end time");
    etrace->add_option("--samples", samples, "trace samples");
    etrace->add_option("--csv", csv_path, "CSV output path");
    etrace->add_option("--svg", svg_path, "SVG output path");

    // simulate
    auto* sim = app.add_subcommand("simulate", "evolve the reduced radial system");
    std::string bc_str = "eps:0.25", report_path;
    double delta = 0.5, R = 12.0, dr = 0.0025, t_end = 3.0;
    std::string sim_out = "trace.csv";
    sim->add_option("--profile", spec.kind, "profile kind: exponential | bump");
    sim->add_option("--epsilon", spec.epsilon, "exponential profile parameter");
    sim->add_option("--b", spec.b, "bump half-width (> 1)");
    sim->add_option("--bc", bc_str, "boundary condition: eps:<value> | gamma");
    sim->add_option("--delta", delta, "gamma construction budget in (0,1)");
    sim->add_option("--R", R, "outer radius");
    sim->add_option("--dr", dr, "grid spacing");
    sim->add_option("--t-end", t_end, "final time");
    sim->add_option("--out", sim_out, "trace CSV path");
    sim->add_option("--report", report_path, "JSON summary path (stdout when omitted)");
    sim->add_option("--config", config_path, "JSON config file");
    sim->add_option("--seed", seed, "unused; accepted for config uniformity");

    // nogo-demo
    auto* demo = app.add_subcommand("nogo-demo", "modulated-wave and quiet-spot demonstrations");
    std::string demo_case = "modulated", demo_csv;
    demo->add_option("--case", demo_case, "modulated | quiet | georgiev");
    demo->add_option("--csv", demo_csv, "residual table CSV path");
    demo->add_option("--config", config_path, "JSON config file");
    demo->add_option("--out", out_path, "report path (stdout when omitted)");
    demo->add_option("--seed", seed, "sampling seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help() << std::flush;
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        // config file: same keys as the long options, profile as a descriptor
        if (!config_path.empty()) {
            static const std::vector<std::string> allowed = {
                "profile", "eps", "samples", "frames", "points", "seed", "t0", "t1",
                "bc", "delta", "R", "dr", "t_end", "case", "tol_residual", "tol_residue",
                "tol_boundary"};
            const json cfg = load_config(config_path, allowed);
            if (cfg.contains("profile")) {
                const ProfileSpec file_spec = parse_profile_json(cfg.at("profile"));
                if (spec.kind.empty()) spec = file_spec;
            }
            if (cfg.contains("eps")) scan_eps = cfg.at("eps").get<double>();
            if (cfg.contains("samples")) {
                scan_samples = cfg.at("samples").get<int>();
                samples = scan_samples;
            }
            if (cfg.contains("frames")) scan_frames = cfg.at("frames").get<int>();
            if (cfg.contains("points")) points = cfg.at("points").get<int>();
            if (cfg.contains("seed")) seed = cfg.at("seed").get<unsigned>();
            if (cfg.contains("t0")) t0 = cfg.at("t0").get<double>();
            if (cfg.contains("t1")) t1 = cfg.at("t1").get<double>();
            if (cfg.contains("bc")) bc_str = cfg.at("bc").get<std::string>();
            if (cfg.contains("delta")) delta = cfg.at("delta").get<double>();
            if (cfg.contains("R")) R = cfg.at("R").get<double>();
            if (cfg.contains("dr")) dr = cfg.at("dr").get<double>();
            if (cfg.contains("t_end")) t_end = cfg.at("t_end").get<double>();
            if (cfg.contains("case")) demo_case = cfg.at("case").get<std::string>();
            if (cfg.contains("tol_residual")) tol_residual = cfg.at("tol_residual").get<double>();
            if (cfg.contains("tol_residue")) tol_residue = cfg.at("tol_residue").get<double>();
            if (cfg.contains("tol_boundary")) tol_boundary = cfg.at("tol_boundary").get<double>();
        }

        if (verify->parsed()) {
            if (spec.kind.empty()) throw UsageError("verify: --profile is required");
            return cmd_verify(spec, points, seed, tol_residual, tol_residue, tol_boundary,
                              out_path, batch_in, batch_out);
        }
        if (bscan->parsed()) {
            return cmd_boundary_scan(scan_eps, scan_samples, seed, scan_frames, out_path);
        }
        if (etrace->parsed()) {
            if (spec.kind.empty()) throw UsageError("energy-trace: --profile is required");
            return cmd_energy_trace(spec, t0, t1, samples, csv_path, svg_path, out_path);
        }
        if (sim->parsed()) {
            return cmd_simulate(spec, bc_str, delta, R, dr, t_end, sim_out, report_path);
        }
        if (demo->parsed()) {
            return cmd_nogo_demo(demo_case, seed, demo_csv, out_path);
        }
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace maxdis::cli
