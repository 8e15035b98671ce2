// chkp: transverse-instability laboratory for Camassa-Holm line solitary
// waves under the CH-KP-I flow.
//
// Subcommands: soliton, spectrum, scan, rt-check, grenier, simulate,
// instability, scaling, report.  Exit codes: 0 all verdicts pass, 2 a
// verdict failed, 1 runtime error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "chkp/experiment.hpp"
#include "chkp/io.hpp"
#include "chkp/linalg.hpp"

using namespace chkp;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
};

ExperimentConfig load_config(const CommonOpts& opts) {
    std::map<std::string, std::string> kv;
    if (!opts.config_path.empty())
        kv = io::read_config(opts.config_path);
    for (const auto& kvs : opts.overrides) {
        const auto eq = kvs.find('=');
        if (eq == std::string::npos)
            throw ParameterError("--set expects key=value, got: " + kvs);
        kv[kvs.substr(0, eq)] = kvs.substr(eq + 1);
    }
    ExperimentConfig cfg = ExperimentConfig::from_map(kv);
    if (!opts.out_dir.empty())
        cfg.out_dir = opts.out_dir;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "key-value config file");
    cmd->add_option("--set", opts.overrides, "override a config key (key=value)")
        ->take_all();
    cmd->add_option("-o,--out", opts.out_dir, "output directory");
}

SolitaryWave make_wave(const ExperimentConfig& cfg, int nx) {
    return compute_soliton(cfg.c, cfg.kappa, make_grid(cfg.lx_value(), nx));
}

int cmd_soliton(const ExperimentConfig& cfg) {
    const SolitaryWave w = make_wave(cfg, cfg.nx);
    const PropertyReport pr = properties_report(w);
    fs::create_directories(cfg.out_dir);
    export_profile_csv(w, cfg.out_dir + "/soliton.csv");
    std::cout << "peak height       " << w.q.values()[w.grid->n / 2] << " (expected "
              << w.peak() << ")\n"
              << "tw residual       " << traveling_wave_residual(w) << "\n"
              << "decay rate        " << pr.decay_rate << " (expected "
              << pr.decay_rate_expected << ")\n"
              << "concavity switch  " << pr.concavity_threshold << "\n"
              << "even=" << pr.even << " monotone=" << pr.monotone << " peak=" << pr.peak_ok
              << " decay=" << pr.decay_ok << " convexity=" << pr.convexity_ok << "\n"
              << "profile written to " << cfg.out_dir << "/soliton.csv\n";
    return pr.all_ok() ? 0 : 2;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
    const SolitaryWave w = make_wave(cfg, cfg.nx);
    const Eigen::VectorXd ev = linalg::sym_eigenvalues(assemble_hc(w).m);
    int negs = 0, zeros = 0;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev[i] < -1e-6)
            ++negs;
        else if (std::abs(ev[i]) < 1e-6)
            ++zeros;
    }
    const SpectralBasis basis = SpectralBasis::make(*w.grid);
    const Eigen::VectorXd lt0 = linalg::sym_eigenvalues(assemble_ltilde(w, basis, 0.0).m);
    int lt_negs = 0;
    for (int i = 0; i < lt0.size(); ++i)
        if (lt0[i] < -1e-6)
            ++lt_negs;
    std::cout << "H_c: " << negs << " negative, " << zeros
              << " near-zero eigenvalue(s); lowest " << ev[0] << ", " << ev[1] << ", " << ev[2]
              << "\n"
              << "Ltilde(0): " << lt_negs << " negative eigenvalue(s); lowest " << lt0[0]
              << "\n";
    const bool ok = negs == 1 && zeros == 1 && lt_negs == 1;
    return ok ? 0 : 2;
}

int cmd_scan(const ExperimentConfig& cfg) {
    const SolitaryWave w = make_wave(cfg, cfg.scan_nx);
    const EigenBranch branch = scan_branch(w, 0.0, cfg.scan_kmax, cfg.scan_samples);
    fs::create_directories(cfg.out_dir);
    std::vector<std::vector<double>> rows;
    for (const auto& s : branch.samples)
        rows.push_back({s.k, s.sigma.real(), s.sigma.imag()});
    io::write_csv(cfg.out_dir + "/branch.csv", {"k", "re_sigma", "im_sigma"}, rows);
    io::LinePlot p;
    p.title = "growth rate of transverse perturbations";
    p.xlabel = "k";
    p.ylabel = "Re sigma(k)";
    io::Series s;
    for (const auto& b : branch.samples) {
        s.x.push_back(b.k);
        s.y.push_back(b.sigma.real());
    }
    p.add(std::move(s));
    p.write(cfg.out_dir + "/branch.svg");
    if (branch.has_band) {
        const BranchSample* peak = branch.argmax();
        std::cout << "unstable band: (" << branch.k_lo << ", " << branch.k_hi << "), stable for"
                  << " k >= " << branch.k_found << "\n"
                  << "peak growth: sigma = " << peak->sigma.real() << " at k = " << peak->k
                  << "\n";
    } else {
        std::cout << "no unstable band found in [0, " << cfg.scan_kmax << "]\n";
    }
    std::cout << "branch written to " << cfg.out_dir << "/branch.csv\n";
    return branch.has_band ? 0 : 2;
}

int cmd_rt_check(const ExperimentConfig& cfg) {
    const SolitaryWave w = make_wave(cfg, cfg.scan_nx);
    const EigenBranch branch = scan_branch(w, 0.0, cfg.scan_kmax, cfg.scan_samples);
    if (!branch.has_band) {
        std::cout << "no unstable band; nothing to check\n";
        return 2;
    }
    std::vector<double> ks;
    for (int i = 0; i <= 8; ++i)
        ks.push_back(2.0 * branch.k_found * i / 8.0);
    const ConditionReport rep = verify_rt_conditions(w, ks, branch.k_found);

    // constant-coefficient root check over a sigma grid inside the band
    std::vector<std::complex<double>> sigmas;
    for (int i = 1; i <= 5; ++i)
        sigmas.push_back(std::complex<double>(0.05 * i, 0.0));
    bool ainf_ok = true;
    for (int i = 1; i <= 5; ++i) {
        const double k = branch.k_found * i / 5.0;
        const AInfinityCheck chk = a_infinity_check(cfg.c, cfg.kappa, k, sigmas);
        ainf_ok = ainf_ok && chk.verdict;
    }

    fs::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/rt_conditions.json");
    out << "{\n"
        << "  \"k_threshold\": " << rep.k_threshold << ",\n"
        << "  \"cond1\": {\"verdict\": " << rep.cond1.verdict
        << ", \"margin\": " << rep.cond1.margin << "},\n"
        << "  \"cond2\": {\"verdict\": " << rep.cond2.verdict
        << ", \"margin\": " << rep.cond2.margin << "},\n"
        << "  \"cond3\": {\"verdict\": " << rep.cond3.verdict
        << ", \"margin\": " << rep.cond3.margin << "},\n"
        << "  \"cond4\": {\"verdict\": " << rep.cond4.verdict
        << ", \"margin\": " << rep.cond4.margin << "},\n"
        << "  \"a_infinity\": {\"verdict\": " << ainf_ok << "}\n"
        << "}\n";

    std::cout << "cond1 (coercive for k >= K): " << (rep.cond1.verdict ? "pass" : "FAIL")
              << "  margin " << rep.cond1.margin << "\n"
              << "cond2 (limit symbol > 0):    " << (rep.cond2.verdict ? "pass" : "FAIL")
              << "  margin " << rep.cond2.margin << "\n"
              << "cond3 (monotone in k):       " << (rep.cond3.verdict ? "pass" : "FAIL")
              << "  margin " << rep.cond3.margin << "\n"
              << "cond4 (one negative at 0):   " << (rep.cond4.verdict ? "pass" : "FAIL")
              << "  gap " << rep.cond4.margin << "\n"
              << "constant-coefficient roots:  " << (ainf_ok ? "pass" : "FAIL") << "\n";
    return (rep.all_ok() && ainf_ok) ? 0 : 2;
}

int cmd_grenier(const ExperimentConfig& cfg, double horizon) {
    const SolitaryWave w = make_wave(cfg, cfg.nx);
    const EigenBranch branch = scan_branch(w, 0.0, cfg.scan_kmax, cfg.scan_samples);
    if (!branch.has_band)
        return 2;
    const UnstableMode mode = select_most_unstable(w, branch, branch.argmax()->k);
    const double t_end = horizon > 0 ? horizon : 2.0 / mode.sigma0.real();
    const HierarchyResult h = build_hierarchy(w, mode, cfg.hierarchy_order, t_end, cfg.dt);

    fs::create_directories(cfg.out_dir);
    for (int k = 0; k <= h.order_m; ++k) {
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < h.times.size(); ++i)
            rows.push_back({h.times[i], h.vnorm[k][i]});
        io::write_csv(cfg.out_dir + "/hierarchy_v" + std::to_string(k) + ".csv",
                      {"t", "vnorm"}, rows);
    }
    std::cout << "sigma0 = " << mode.sigma0.real() << ", orders 0.." << h.order_m << "\n";
    bool ok = true;
    for (int k = 0; k <= h.order_m; ++k) {
        const double bound = (k + 1) * mode.sigma0.real();
        const bool rate_ok = h.fitted_rate[k] <= bound * 1.02 + 1e-12;
        ok = ok && rate_ok;
        std::cout << "order " << k << ": fitted rate " << h.fitted_rate[k] << " <= bound "
                  << bound << (rate_ok ? "  pass" : "  FAIL") << "\n";
    }
    return ok ? 0 : 2;
}

int cmd_simulate(const ExperimentConfig& cfg, double t_end, double delta, bool full_equation) {
    const SolitaryWave w = make_wave(cfg, cfg.nx);
    const EigenBranch branch = scan_branch(w, 0.0, cfg.scan_kmax, cfg.scan_samples);
    if (!branch.has_band)
        return 2;
    const UnstableMode mode = select_most_unstable(w, branch, branch.argmax()->k);
    const auto grid2 = make_grid2(w.grid, mode.k0, cfg.ny);

    SimState state;
    state.c = cfg.c;
    state.field = seed_mode_field(mode, grid2, 0.0);
    state.field *= delta;
    if (full_equation)
        state.field += broadcast_wave(w, grid2);

    SimOptions opts;
    opts.dt = cfg.dt;
    Stepper stepper(w, grid2,
                    full_equation ? Stepper::Form::moving_frame : Stepper::Form::perturbation,
                    opts);

    InvariantTrace trace;
    const long nsteps = std::llround(t_end / cfg.dt);
    const Field2D phi2 = broadcast_wave(w, grid2);
    for (long s = 0; s <= nsteps; ++s) {
        if (s % cfg.monitor_stride == 0 || s == nsteps) {
            const Field2D& u = state.field;
            const auto [hh, qq] = invariants(full_equation ? u : phi2 + u, cfg.kappa);
            trace.t.push_back(state.t);
            trace.h.push_back(hh);
            trace.q.push_back(qq);
        }
        if (s < nsteps)
            stepper.step(state);
    }

    fs::create_directories(cfg.out_dir);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < trace.t.size(); ++i)
        rows.push_back({trace.t[i], trace.h[i], trace.q[i]});
    io::write_csv(cfg.out_dir + "/invariants.csv", {"t", "H", "Q"}, rows);
    io::SnapshotMeta meta{state.t, cfg.c, cfg.kappa, cfg.lx_value(), mode.k0, cfg.nx, cfg.ny};
    io::save_snapshot(state.field, meta, cfg.out_dir + "/final");
    const double drift_h = std::abs(trace.h.back() - trace.h.front()) /
                           std::max(1e-300, std::abs(trace.h.front()));
    const double drift_q = std::abs(trace.q.back() - trace.q.front()) /
                           std::max(1e-300, std::abs(trace.q.front()));
    std::cout << "simulated to t = " << state.t << " (" << state.steps << " steps)\n"
              << "relative drift:  H " << drift_h << "   Q " << drift_q << "\n"
              << "snapshot written to " << cfg.out_dir << "/final.{bin,json}\n";
    return 0;
}

int cmd_instability(const ExperimentConfig& cfg) {
    RunOutputs out = run_instability(cfg, &std::cout);
    emit_outputs(out, cfg.out_dir);
    std::cout << "sigma0 = " << out.report.sigma0_re << ", slope = " << out.report.scaling.slope
              << " (expected " << out.report.scaling.slope_expected
              << "), R^2 = " << out.report.scaling.r2 << "\n"
              << "distance floor eta = " << out.report.eta_floor << "\n"
              << "report written to " << cfg.out_dir << "/report.json\n";
    return out.report.verdicts_pass() ? 0 : 2;
}

int cmd_scaling(const ExperimentConfig& cfg) {
    const ScalingTable table = scaling_study(cfg, &std::cout);
    fs::create_directories(cfg.out_dir);
    std::vector<std::vector<double>> rows;
    for (const auto& r : table.rows)
        rows.push_back({r.delta, r.t_pred, r.t_meas, r.distance_at_t});
    io::write_csv(cfg.out_dir + "/scaling.csv", {"delta", "T_delta_pred", "T_meas",
                                                 "distance_at_T"},
                  rows);
    std::cout << "fit: T = " << table.fit.slope << " * log(1/delta) + " << table.fit.intercept
              << "   (expected slope " << table.fit.slope_expected << ", R^2 = " << table.fit.r2
              << ")\n";
    const bool ok = table.fit.r2 > 0.99 &&
                    std::abs(table.fit.slope - table.fit.slope_expected) <=
                        0.1 * table.fit.slope_expected;
    return ok ? 0 : 2;
}

int cmd_report(const std::string& report_path) {
    std::ifstream in(report_path);
    if (!in)
        throw IoError("report: cannot open " + report_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const RunReport rep = report_from_json(ss.str());
    std::cout << "c = " << rep.c << ", kappa = " << rep.kappa << ", theta = " << rep.theta
              << "\n"
              << "mode: k0 = " << rep.k0 << ", m0 = " << rep.m0
              << ", sigma0 = " << rep.sigma0_re << "\n"
              << "conditions: " << (rep.cond1.verdict ? "1" : "x")
              << (rep.cond2.verdict ? "2" : "x") << (rep.cond3.verdict ? "3" : "x")
              << (rep.cond4.verdict ? "4" : "x") << "\n";
    for (const auto& r : rep.runs)
        std::cout << "  delta " << r.delta << ": T_pred " << r.t_delta_pred << ", T_meas "
                  << r.t_meas << ", distance " << r.distance_at_t
                  << (r.triangle_ok ? "" : "  [triangle FAIL]") << (r.ok ? "" : "  [FAILED]")
                  << "\n";
    std::cout << "scaling slope " << rep.scaling.slope << " (expected "
              << rep.scaling.slope_expected << "), R^2 " << rep.scaling.r2 << ", eta "
              << rep.eta_floor << "\n";
    const bool ok = rep.verdicts_pass();
    std::cout << (ok ? "ALL VERDICTS PASS" : "VERDICT FAILURE") << "\n";
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transverse instability laboratory for CH-KP-I line solitary waves"};
    app.require_subcommand(1);

    CommonOpts opts;
    double horizon = 0.0, t_end = 10.0, delta = 1e-3;
    bool full_equation = false;
    std::string report_path = "out/report.json";

    auto* soliton = app.add_subcommand("soliton", "compute and validate the solitary wave");
    add_common(soliton, opts);
    auto* spectrum = app.add_subcommand("spectrum", "H_c and Ltilde(0) eigenvalue counts");
    add_common(spectrum, opts);
    auto* scan = app.add_subcommand("scan", "scan the transverse growth rate sigma(k)");
    add_common(scan, opts);
    auto* rt = app.add_subcommand("rt-check", "verify the four spectral conditions");
    add_common(rt, opts);
    auto* grenier = app.add_subcommand("grenier", "build the high-order approximate solution");
    add_common(grenier, opts);
    grenier->add_option("--horizon", horizon, "time horizon (default 2/sigma0)");
    auto* simulate = app.add_subcommand("simulate", "time-step the nonlinear equation");
    add_common(simulate, opts);
    simulate->add_option("-T,--t-end", t_end, "final time");
    simulate->add_option("--delta", delta, "seed amplitude");
    simulate->add_flag("--full", full_equation, "evolve u (moving frame) instead of v");
    auto* instability = app.add_subcommand("instability", "full instability experiment");
    add_common(instability, opts);
    auto* scaling = app.add_subcommand("scaling", "escape-time scaling study");
    add_common(scaling, opts);
    auto* report = app.add_subcommand("report", "summarize an existing report.json");
    report->add_option("path", report_path, "path to report.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (soliton->parsed())
            return cmd_soliton(load_config(opts));
        if (spectrum->parsed())
            return cmd_spectrum(load_config(opts));
        if (scan->parsed())
            return cmd_scan(load_config(opts));
        if (rt->parsed())
            return cmd_rt_check(load_config(opts));
        if (grenier->parsed())
            return cmd_grenier(load_config(opts), horizon);
        if (simulate->parsed())
            return cmd_simulate(load_config(opts), t_end, delta, full_equation);
        if (instability->parsed())
            return cmd_instability(load_config(opts));
        if (scaling->parsed())
            return cmd_scaling(load_config(opts));
        if (report->parsed())
            return cmd_report(report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
