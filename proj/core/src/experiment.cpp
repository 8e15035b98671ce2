#include "chkp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "chkp/errors.hpp"
#include "chkp/io.hpp"

namespace chkp {

namespace {

double parse_double(const std::map<std::string, std::string>& kv, const std::string& key,
                    double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
}

int parse_int(const std::map<std::string, std::string>& kv, const std::string& key,
              int fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stoi(it->second);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit f;
    const size_t n = x.size();
    if (n < 2)
        return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (size_t i = 0; i < n; ++i) {
        const double fit = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

} // namespace

double ExperimentConfig::lx_value() const {
    return lx > 0.0 ? lx : recommended_half_length(c, kappa);
}

void ExperimentConfig::validate() const {
    if (!(c > 2.0 * kappa) || !(kappa > 0.0))
        throw ParameterError("config: requires c > 2*kappa > 0");
    const double th = theta_value();
    for (double d : deltas) {
        if (!(d > 0.0) || !(d < th))
            throw ParameterError("config: every delta must lie in (0, theta)");
    }
    if (hierarchy_order < 0 || hierarchy_order > 4)
        throw ParameterError("config: hierarchy order must be in [0, 4]");
    if (dt <= 0.0 || nx < 16 || ny < 4)
        throw ParameterError("config: invalid grid or step");
}

ExperimentConfig ExperimentConfig::from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig c;
    c.c = parse_double(kv, "physics.c", c.c);
    c.kappa = parse_double(kv, "physics.kappa", c.kappa);
    c.nx = parse_int(kv, "grid.nx", c.nx);
    c.lx = parse_double(kv, "grid.lx", c.lx);
    c.ny = parse_int(kv, "grid.ny", c.ny);
    c.scan_nx = parse_int(kv, "scan.nx", c.scan_nx);
    c.scan_kmax = parse_double(kv, "scan.kmax", c.scan_kmax);
    c.scan_samples = parse_int(kv, "scan.samples", c.scan_samples);
    c.theta = parse_double(kv, "run.theta", c.theta);
    c.hierarchy_order = parse_int(kv, "run.hierarchy_order", c.hierarchy_order);
    c.sobolev_s = parse_double(kv, "run.sobolev_s", c.sobolev_s);
    c.dt = parse_double(kv, "run.dt", c.dt);
    c.monitor_stride = parse_int(kv, "run.stride", c.monitor_stride);
    if (auto it = kv.find("run.delta_list"); it != kv.end()) {
        c.deltas.clear();
        std::istringstream in(it->second);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty())
                c.deltas.push_back(std::stod(tok));
    }
    if (auto it = kv.find("out.dir"); it != kv.end())
        c.out_dir = it->second;
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    return from_map(io::read_config(path));
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
    std::map<std::string, std::string> kv;
    kv["physics.c"] = fmt(c);
    kv["physics.kappa"] = fmt(kappa);
    kv["grid.nx"] = std::to_string(nx);
    kv["grid.lx"] = fmt(lx);
    kv["grid.ny"] = std::to_string(ny);
    kv["scan.nx"] = std::to_string(scan_nx);
    kv["scan.kmax"] = fmt(scan_kmax);
    kv["scan.samples"] = std::to_string(scan_samples);
    std::string ds;
    for (size_t i = 0; i < deltas.size(); ++i)
        ds += (i ? "," : "") + fmt(deltas[i]);
    kv["run.delta_list"] = ds;
    kv["run.theta"] = fmt(theta);
    kv["run.hierarchy_order"] = std::to_string(hierarchy_order);
    kv["run.sobolev_s"] = fmt(sobolev_s);
    kv["run.dt"] = fmt(dt);
    kv["run.stride"] = std::to_string(monitor_stride);
    kv["out.dir"] = out_dir;
    return kv;
}

OrbitalDistance orbital_distance(const Field2D& u, const SolitaryWave& w) {
    const Grid2D& g = u.grid();
    const double a = g.period();
    const double two_lx = 2.0 * g.x.half_length;

    // correlation with the wave acts on the y-mean only
    const Field1D um = y_mean(u);
    const auto& cu = um.coeffs();
    const auto& cphi = w.q.coeffs();
    std::vector<cplx> s(cu.size());
    for (size_t n = 0; n < cu.size(); ++n)
        s[n] = cu[n] * std::conj(cphi[n]);

    CField1D corr = CField1D::of_coeffs(um.grid_ptr(), s);
    const auto& cv = corr.values(); // corr(x_i) up to the a*2Lx factor
    int ibest = 0;
    for (int i = 1; i < g.x.n; ++i)
        if (cv[i].real() > cv[ibest].real())
            ibest = i;

    auto corr_at = [&](double l) {
        double acc = 0.0;
        for (size_t n = 0; n < s.size(); ++n) {
            const double xi = g.x.xi[n];
            acc += (s[n] * cplx(std::cos(xi * l), std::sin(xi * l))).real();
        }
        return acc;
    };

    // golden-section refinement around the best grid shift
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = g.x.nodes[ibest] - g.x.dx();
    double hi = g.x.nodes[ibest] + g.x.dx();
    double l1 = hi - gr * (hi - lo), l2 = lo + gr * (hi - lo);
    double f1 = corr_at(l1), f2 = corr_at(l2);
    for (int it = 0; it < 80 && (hi - lo) > 1e-10; ++it) {
        if (f1 < f2) {
            lo = l1;
            l1 = l2;
            f1 = f2;
            l2 = lo + gr * (hi - lo);
            f2 = corr_at(l2);
        } else {
            hi = l2;
            l2 = l1;
            f2 = f1;
            l1 = hi - gr * (hi - lo);
            f1 = corr_at(l1);
        }
    }
    const double lbest = 0.5 * (lo + hi);

    const double unorm2 = inner(u, u);
    const double phinorm2 = a * inner(w.q, w.q);
    const double cmax = a * two_lx * corr_at(lbest);
    const double d2 = std::max(0.0, unorm2 - 2.0 * cmax + phinorm2);

    OrbitalDistance od;
    od.distance = std::sqrt(d2);
    od.shift = std::remainder(lbest, two_lx);
    return od;
}

bool RunReport::verdicts_pass() const {
    if (!(cond1.verdict && cond2.verdict && cond3.verdict && cond4.verdict))
        return false;
    for (const auto& r : runs)
        if (!r.ok || !r.triangle_ok)
            return false;
    return scaling.r2 > 0.99 &&
           std::abs(scaling.slope - scaling.slope_expected) <= 0.1 * scaling.slope_expected &&
           eta_floor > 0.0;
}

namespace {

using nlohmann::json;

json cond_to_json(const ConditionSummary& c) {
    return json{{"verdict", c.verdict}, {"margin", c.margin}};
}

ConditionSummary cond_from_json(const json& j) {
    ConditionSummary c;
    c.verdict = j.at("verdict");
    c.margin = j.at("margin");
    return c;
}

} // namespace

std::string report_to_json(const RunReport& r) {
    json j;
    j["params"] = {{"c", r.c}, {"kappa", r.kappa}, {"theta", r.theta}};
    j["mode"] = {{"k0", r.k0},
                 {"m0", r.m0},
                 {"largest_unstable_m", r.largest_unstable_m},
                 {"sigma0_re", r.sigma0_re},
                 {"sigma0_im", r.sigma0_im},
                 {"c_s", r.c_s}};
    j["band"] = {{"k_lo", r.band_k_lo}, {"k_hi", r.band_k_hi}, {"k_found", r.k_found}};
    j["conditions"] = {{"cond1", cond_to_json(r.cond1)},
                       {"cond2", cond_to_json(r.cond2)},
                       {"cond3", cond_to_json(r.cond3)},
                       {"cond4", cond_to_json(r.cond4)}};
    j["runs"] = json::array();
    for (const auto& d : r.runs) {
        j["runs"].push_back({{"delta", d.delta},
                             {"t_delta_pred", d.t_delta_pred},
                             {"t_meas", d.t_meas},
                             {"distance_at_t", d.distance_at_t},
                             {"shift_at_t", d.shift_at_t},
                             {"growth_fit_slope", d.growth_fit_slope},
                             {"pi_vap_at_t", d.pi_vap_at_t},
                             {"w_at_t", d.w_at_t},
                             {"max_w", d.max_w},
                             {"triangle_ok", d.triangle_ok},
                             {"ok", d.ok},
                             {"error", d.error}});
    }
    j["scaling"] = {{"slope", r.scaling.slope},
                    {"intercept", r.scaling.intercept},
                    {"r2", r.scaling.r2},
                    {"slope_expected", r.scaling.slope_expected}};
    j["eta_floor"] = r.eta_floor;
    j["config"] = r.config;
    j["artifacts"] = r.artifacts;
    return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunReport r;
    r.c = j.at("params").at("c");
    r.kappa = j.at("params").at("kappa");
    r.theta = j.at("params").at("theta");
    r.k0 = j.at("mode").at("k0");
    r.m0 = j.at("mode").at("m0");
    r.largest_unstable_m = j.at("mode").at("largest_unstable_m");
    r.sigma0_re = j.at("mode").at("sigma0_re");
    r.sigma0_im = j.at("mode").at("sigma0_im");
    r.c_s = j.at("mode").at("c_s");
    r.band_k_lo = j.at("band").at("k_lo");
    r.band_k_hi = j.at("band").at("k_hi");
    r.k_found = j.at("band").at("k_found");
    r.cond1 = cond_from_json(j.at("conditions").at("cond1"));
    r.cond2 = cond_from_json(j.at("conditions").at("cond2"));
    r.cond3 = cond_from_json(j.at("conditions").at("cond3"));
    r.cond4 = cond_from_json(j.at("conditions").at("cond4"));
    for (const auto& je : j.at("runs")) {
        DeltaRecord d;
        d.delta = je.at("delta");
        d.t_delta_pred = je.at("t_delta_pred");
        d.t_meas = je.at("t_meas");
        d.distance_at_t = je.at("distance_at_t");
        d.shift_at_t = je.at("shift_at_t");
        d.growth_fit_slope = je.at("growth_fit_slope");
        d.pi_vap_at_t = je.at("pi_vap_at_t");
        d.w_at_t = je.at("w_at_t");
        d.max_w = je.at("max_w");
        d.triangle_ok = je.at("triangle_ok");
        d.ok = je.at("ok");
        d.error = je.at("error");
        r.runs.push_back(std::move(d));
    }
    r.scaling.slope = j.at("scaling").at("slope");
    r.scaling.intercept = j.at("scaling").at("intercept");
    r.scaling.r2 = j.at("scaling").at("r2");
    r.scaling.slope_expected = j.at("scaling").at("slope_expected");
    r.eta_floor = j.at("eta_floor");
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    return r;
}

namespace {

struct DeltaRunOutput {
    DeltaRecord record;
    GrowthTrace trace;
};

// One nonlinear run: v(0) = delta v0(0), stepped with the hierarchy in
// lockstep so w = v - v^ap is available at every monitor time.
DeltaRunOutput run_one_delta(const SolitaryWave& wave, const UnstableMode& mode,
                             const Grid2Ptr& grid2, const ExperimentConfig& cfg, double delta,
                             std::ostream* log) {
    const double theta = cfg.theta_value();
    const double sigma = mode.sigma0.real();
    const double t_pred = std::log(theta / delta) / sigma;
    const double cs = 1.0; // |Pi v0(0)| = 1 by normalization
    const double escape_level = 0.5 * cs * theta;

    DeltaRunOutput out;
    out.record.delta = delta;
    out.record.t_delta_pred = t_pred;
    out.record.t_meas = std::numeric_limits<double>::quiet_NaN();
    out.trace.delta = delta;

    SimState state;
    state.c = wave.c;
    state.t = 0.0;
    state.field = seed_mode_field(mode, grid2, 0.0);
    state.field *= delta;

    SimOptions opts;
    opts.dt = cfg.dt;
    Stepper stepper(wave, grid2, Stepper::Form::perturbation, opts);
    HierarchyEvolver hier(wave, mode, cfg.hierarchy_order, cfg.dt);
    const Field2D phi2 = broadcast_wave(wave, grid2);

    const long n_pred = std::llround(t_pred / cfg.dt);
    const long n_max = std::llround((1.3 * t_pred + 5.0) / cfg.dt);

    double prev_t = 0.0, prev_pi = 0.0;
    bool crossed = false;
    auto monitor = [&]() {
        const double pi = sobolev_norm(project_offzero_y(state.field), 0.0);
        const Field2D vap = hier.vap_field(delta, grid2);
        const double wn = sobolev_norm(state.field - vap, 0.0);
        const auto [h, q] = invariants(phi2 + state.field, wave.kappa);
        out.trace.t.push_back(state.t);
        out.trace.pi_norm.push_back(pi);
        out.trace.w_norm.push_back(wn);
        out.trace.h.push_back(h);
        out.trace.q.push_back(q);
        out.record.max_w = std::max(out.record.max_w, wn);
        if (!crossed && pi >= escape_level && prev_pi > 0.0) {
            // interpolate the crossing in log amplitude
            const double f = (std::log(escape_level) - std::log(prev_pi)) /
                             (std::log(pi) - std::log(prev_pi));
            out.record.t_meas = prev_t + f * (state.t - prev_t);
            crossed = true;
        }
        prev_t = state.t;
        prev_pi = pi;
    };

    monitor();
    for (long s = 1; s <= n_max; ++s) {
        stepper.step(state);
        hier.step();
        if (s % cfg.monitor_stride == 0 || s == n_pred)
            monitor();
        if (s == n_pred) {
            const Field2D vap = hier.vap_field(delta, grid2);
            const Field2D werr = state.field - vap;
            out.record.w_at_t = sobolev_norm(werr, 0.0);
            out.record.pi_vap_at_t = sobolev_norm(project_offzero_y(vap), 0.0);
            const OrbitalDistance od = orbital_distance(phi2 + state.field, wave);
            out.record.distance_at_t = od.distance;
            out.record.shift_at_t = od.shift;
            out.record.triangle_ok =
                od.distance >= out.record.pi_vap_at_t - out.record.w_at_t - 1e-9;
        }
        if (s >= n_pred && crossed)
            break;
    }

    // growth-rate fit on the linear window
    {
        std::vector<double> ts, ln;
        for (size_t i = 0; i < out.trace.t.size(); ++i) {
            const double pi = out.trace.pi_norm[i];
            if (pi >= 5.0 * delta && pi <= 0.25 * theta) {
                ts.push_back(out.trace.t[i]);
                ln.push_back(std::log(pi));
            }
        }
        if (ts.size() >= 3)
            out.record.growth_fit_slope = least_squares(ts, ln).slope;
    }

    out.record.ok = true;
    if (log)
        *log << "  delta=" << delta << "  T_pred=" << t_pred << "  T_meas=" << out.record.t_meas
             << "  dist=" << out.record.distance_at_t << "\n";
    return out;
}

} // namespace

RunOutputs run_instability(const ExperimentConfig& cfg, std::ostream* log) {
    cfg.validate();
    RunOutputs out;
    RunReport& rep = out.report;
    rep.c = cfg.c;
    rep.kappa = cfg.kappa;
    rep.theta = cfg.theta_value();
    rep.config = cfg.to_map();

    // 1. scan sigma(k) at the scan resolution
    const auto scan_grid = make_grid(cfg.lx_value(), cfg.scan_nx);
    const SolitaryWave scan_wave = compute_soliton(cfg.c, cfg.kappa, scan_grid);
    if (log)
        *log << "scanning sigma(k) on [0, " << cfg.scan_kmax << "] with " << cfg.scan_samples
             << " samples...\n";
    out.branch = scan_branch(scan_wave, 0.0, cfg.scan_kmax, cfg.scan_samples);
    if (!out.branch.has_band)
        throw NoUnstableModeError("run_instability: no unstable band found in the scan range");
    rep.band_k_lo = out.branch.k_lo;
    rep.band_k_hi = out.branch.k_hi;
    rep.k_found = out.branch.k_found;

    // 2. condition checks on [0, 2 K]
    {
        std::vector<double> ks;
        for (int i = 0; i <= 8; ++i)
            ks.push_back(2.0 * out.branch.k_found * i / 8.0);
        const ConditionReport cr = verify_rt_conditions(scan_wave, ks, out.branch.k_found);
        rep.cond1 = {cr.cond1.verdict, cr.cond1.margin};
        rep.cond2 = {cr.cond2.verdict, cr.cond2.margin};
        rep.cond3 = {cr.cond3.verdict, cr.cond3.margin};
        rep.cond4 = {cr.cond4.verdict, cr.cond4.margin};
        if (log)
            *log << "conditions: " << cr.cond1.verdict << cr.cond2.verdict << cr.cond3.verdict
                 << cr.cond4.verdict << "\n";
    }

    // 3. refine k0 = argmax Re sigma(k) by golden section at scan resolution
    const BranchSample* peak = out.branch.argmax();
    double k0 = peak->k;
    {
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = std::max(out.branch.k_lo, k0 - 2.0 * cfg.scan_kmax / cfg.scan_samples);
        double hi = std::min(out.branch.k_hi, k0 + 2.0 * cfg.scan_kmax / cfg.scan_samples);
        auto growth = [&](double k) {
            auto p = unstable_eigen(scan_wave, k);
            return p ? p->sigma.real() : 0.0;
        };
        double l1 = hi - gr * (hi - lo), l2 = lo + gr * (hi - lo);
        double f1 = growth(l1), f2 = growth(l2);
        for (int it = 0; it < 24; ++it) {
            if (f1 < f2) {
                lo = l1;
                l1 = l2;
                f1 = f2;
                l2 = lo + gr * (hi - lo);
                f2 = growth(l2);
            } else {
                hi = l2;
                l2 = l1;
                f2 = f1;
                l1 = hi - gr * (hi - lo);
                f1 = growth(l1);
            }
        }
        k0 = 0.5 * (lo + hi);
    }

    // 4. final eigenpair on the run resolution
    const auto run_grid = make_grid(cfg.lx_value(), cfg.nx);
    const SolitaryWave wave =
        (cfg.nx == cfg.scan_nx) ? scan_wave : compute_soliton(cfg.c, cfg.kappa, run_grid);
    out.mode = select_most_unstable(wave, out.branch, k0);
    rep.k0 = out.mode.k0;
    rep.m0 = out.mode.m0;
    rep.largest_unstable_m = out.mode.largest_unstable_m;
    rep.sigma0_re = out.mode.sigma0.real();
    rep.sigma0_im = out.mode.sigma0.imag();
    if (log)
        *log << "mode: k0=" << rep.k0 << " m0=" << rep.m0 << " sigma0=" << rep.sigma0_re << "+"
             << rep.sigma0_im << "i\n";

    // 5. per-delta nonlinear runs
    const auto grid2 = make_grid2(wave.grid, out.mode.k0, cfg.ny);
    rep.c_s = sobolev_norm(project_offzero_y(seed_mode_field(out.mode, grid2, 0.0)), 0.0);
    for (double delta : cfg.deltas) {
        try {
            DeltaRunOutput dro = run_one_delta(wave, out.mode, grid2, cfg, delta, log);
            rep.runs.push_back(dro.record);
            out.traces.push_back(std::move(dro.trace));
        } catch (const Error& e) {
            DeltaRecord rec;
            rec.delta = delta;
            rec.ok = false;
            rec.error = e.what();
            rep.runs.push_back(rec);
            if (log)
                *log << "  delta=" << delta << " failed: " << e.what() << "\n";
        }
    }

    // 6. escape-time scaling fit
    {
        std::vector<double> xs, ys;
        rep.eta_floor = std::numeric_limits<double>::infinity();
        for (const auto& r : rep.runs) {
            if (r.ok && std::isfinite(r.t_meas)) {
                xs.push_back(std::log(1.0 / r.delta));
                ys.push_back(r.t_meas);
            }
            if (r.ok)
                rep.eta_floor = std::min(rep.eta_floor, r.distance_at_t);
        }
        if (!std::isfinite(rep.eta_floor))
            rep.eta_floor = 0.0;
        if (xs.size() >= 2) {
            const LineFit f = least_squares(xs, ys);
            rep.scaling.slope = f.slope;
            rep.scaling.intercept = f.intercept;
            rep.scaling.r2 = f.r2;
        }
        rep.scaling.slope_expected = 1.0 / rep.sigma0_re;
    }
    return out;
}

ScalingTable scaling_study(const ExperimentConfig& cfg, std::ostream* log) {
    if (cfg.deltas.size() < 3)
        throw InsufficientDataError("scaling_study: need at least 3 deltas");
    const double dmin = *std::min_element(cfg.deltas.begin(), cfg.deltas.end());
    const double dmax = *std::max_element(cfg.deltas.begin(), cfg.deltas.end());
    if (dmax / dmin < 99.0)
        throw InsufficientDataError("scaling_study: deltas must span >= 2 decades");

    RunOutputs out = run_instability(cfg, log);
    ScalingTable table;
    table.theta = cfg.theta_value();
    std::vector<double> xs, ys;
    for (const auto& r : out.report.runs) {
        if (!r.ok || !std::isfinite(r.t_meas))
            continue;
        table.rows.push_back({r.delta, r.t_delta_pred, r.t_meas, r.distance_at_t});
        xs.push_back(std::log(1.0 / r.delta));
        ys.push_back(r.t_meas);
    }
    if (table.rows.size() < 3)
        throw InsufficientDataError("scaling_study: fewer than 3 runs succeeded");
    const LineFit f = least_squares(xs, ys);
    table.fit.slope = f.slope;
    table.fit.intercept = f.intercept;
    table.fit.r2 = f.r2;
    table.fit.slope_expected = 1.0 / out.report.sigma0_re;
    return table;
}

void emit_outputs(RunOutputs& outputs, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    RunReport& rep = outputs.report;
    rep.artifacts.clear();
    auto path = [&](const std::string& name) { return out_dir + "/" + name; };

    // branch.csv
    {
        std::vector<std::vector<double>> rows;
        for (const auto& s : outputs.branch.samples)
            rows.push_back({s.k, s.sigma.real(), s.sigma.imag()});
        io::write_csv(path("branch.csv"), {"k", "re_sigma", "im_sigma"}, rows);
        rep.artifacts.push_back(path("branch.csv"));
    }
    // growth_<delta>.csv
    for (const auto& tr : outputs.traces) {
        char name[64];
        std::snprintf(name, sizeof name, "growth_%.0e.csv", tr.delta);
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < tr.t.size(); ++i)
            rows.push_back({tr.t[i], tr.pi_norm[i], tr.w_norm[i], tr.h[i], tr.q[i]});
        io::write_csv(path(name), {"t", "norm_pi_v", "norm_w", "H", "Q"}, rows);
        rep.artifacts.push_back(path(name));
    }
    // scaling.csv
    {
        std::vector<std::vector<double>> rows;
        for (const auto& r : rep.runs)
            if (r.ok)
                rows.push_back({r.delta, r.t_delta_pred, r.t_meas, r.distance_at_t});
        io::write_csv(path("scaling.csv"), {"delta", "T_delta_pred", "T_meas", "distance_at_T"},
                      rows);
        rep.artifacts.push_back(path("scaling.csv"));
    }
    // eigenfunction profile
    {
        std::vector<std::vector<double>> rows;
        const auto& u = outputs.mode.u0.values();
        const auto& g = *outputs.mode.u0.grid_ptr();
        for (int i = 0; i < g.n; ++i)
            rows.push_back({g.nodes[i], u[i].real(), u[i].imag()});
        io::write_csv(path("mode_u0.csv"), {"x", "re_u", "im_u"}, rows);
        rep.artifacts.push_back(path("mode_u0.csv"));
    }

    // plots
    {
        io::LinePlot p;
        p.title = "growth rate of transverse perturbations";
        p.xlabel = "k";
        p.ylabel = "Re sigma(k)";
        io::Series s;
        for (const auto& b : outputs.branch.samples) {
            s.x.push_back(b.k);
            s.y.push_back(b.sigma.real());
        }
        s.label = "Re sigma";
        p.add(std::move(s));
        p.write(path("branch.svg"));
        rep.artifacts.push_back(path("branch.svg"));
    }
    {
        io::LinePlot p;
        p.title = "perturbation growth";
        p.xlabel = "t";
        p.ylabel = "|Pi v|";
        p.logy = true;
        const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
        int ci = 0;
        for (const auto& tr : outputs.traces) {
            io::Series s;
            s.x = tr.t;
            s.y = tr.pi_norm;
            char lbl[48];
            std::snprintf(lbl, sizeof lbl, "delta=%.0e", tr.delta);
            s.label = lbl;
            s.color = colors[ci++ % 5];
            p.add(std::move(s));
        }
        if (!outputs.traces.empty()) {
            // reference slope exp(Re sigma0 t)
            const auto& tr = outputs.traces.front();
            io::Series ref;
            for (double t : tr.t) {
                ref.x.push_back(t);
                ref.y.push_back(tr.delta * std::exp(rep.sigma0_re * t));
            }
            ref.label = "sigma0 slope";
            ref.color = "#999999";
            p.add(std::move(ref));
        }
        p.write(path("growth.svg"));
        rep.artifacts.push_back(path("growth.svg"));
    }
    {
        io::LinePlot p;
        p.title = "escape time vs log(1/delta)";
        p.xlabel = "log(1/delta)";
        p.ylabel = "T";
        io::Series pts;
        pts.points_only = true;
        pts.color = "#d62728";
        for (const auto& r : rep.runs)
            if (r.ok && std::isfinite(r.t_meas)) {
                pts.x.push_back(std::log(1.0 / r.delta));
                pts.y.push_back(r.t_meas);
            }
        pts.label = "measured";
        io::Series line;
        for (double x : pts.x) {
            line.x.push_back(x);
            line.y.push_back(rep.scaling.slope * x + rep.scaling.intercept);
        }
        line.label = "fit";
        line.color = "#1f77b4";
        p.add(std::move(pts));
        p.add(std::move(line));
        p.write(path("scaling.svg"));
        rep.artifacts.push_back(path("scaling.svg"));
    }

    // report.json last, with the artifact list complete
    rep.artifacts.push_back(path("report.json"));
    std::ofstream out(path("report.json"));
    if (!out)
        throw IoError("emit_outputs: cannot open " + path("report.json"));
    out << report_to_json(rep) << '\n';
}

} // namespace chkp
