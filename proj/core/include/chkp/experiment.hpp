#pragma once

#include <iosfwd>
#include <map>
#include <optional>

#include "chkp/hierarchy.hpp"
#include "chkp/sim.hpp"
#include "chkp/spectrum.hpp"

namespace chkp {

/// End-to-end experiment parameters.  File keys: physics.c, physics.kappa,
/// grid.nx, grid.lx, grid.ny, run.delta_list, run.theta,
/// run.hierarchy_order, run.sobolev_s, out.dir (plus the optional scan.*
/// and run.dt/run.stride knobs).
struct ExperimentConfig {
    double c = 3.0;
    double kappa = 1.0;
    int nx = 1024;
    double lx = 0.0; // 0 -> decay-based default
    int ny = 32;
    int scan_nx = 512;        // resolution of the k-scan and condition checks
    double scan_kmax = 0.8;   // upper end of the sigma(k) scan
    int scan_samples = 33;
    std::vector<double> deltas{1e-3, 1e-4, 1e-5};
    double theta = 0.0; // 0 -> 0.05*(c - 2 kappa)
    int hierarchy_order = 2;
    double sobolev_s = 0.0;
    double dt = 2e-3;
    int monitor_stride = 25;
    std::string out_dir = "out";

    double theta_value() const { return theta > 0.0 ? theta : 0.05 * (c - 2.0 * kappa); }
    double lx_value() const;
    void validate() const;

    static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
    static ExperimentConfig from_file(const std::string& path);
    std::map<std::string, std::string> to_map() const;
};

struct OrbitalDistance {
    double distance = 0.0;
    double shift = 0.0; // argmin l in [-Lx, Lx)
};

/// inf over periodized shifts l of |u - phi(.-l)|_{L2(R x T_a)}: coarse
/// cross-correlation over grid shifts, then golden-section refinement.
OrbitalDistance orbital_distance(const Field2D& u, const SolitaryWave& w);

struct GrowthTrace {
    double delta = 0.0;
    std::vector<double> t, pi_norm, w_norm, h, q;
};

struct DeltaRecord {
    double delta = 0.0;
    double t_delta_pred = 0.0; // log(theta/delta)/Re sigma0
    double t_meas = 0.0;       // first |Pi v| >= c_s theta/2 (NaN when not reached)
    double distance_at_t = 0.0;
    double shift_at_t = 0.0;
    double growth_fit_slope = 0.0;
    double pi_vap_at_t = 0.0;
    double w_at_t = 0.0;
    double max_w = 0.0;
    bool triangle_ok = false; // distance >= |Pi v^ap| - |w| (up to roundoff)
    bool ok = false;
    std::string error;
};

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_expected = 0.0; // 1/Re sigma0
};

struct ConditionSummary {
    bool verdict = false;
    double margin = 0.0;
};

struct RunReport {
    double c = 0.0, kappa = 0.0, theta = 0.0;
    double k0 = 0.0;
    int m0 = 1;
    int largest_unstable_m = 1;
    double sigma0_re = 0.0, sigma0_im = 0.0;
    double c_s = 1.0; // |Pi v0(0)|_0 after normalization
    double band_k_lo = 0.0, band_k_hi = 0.0, k_found = 0.0;
    ConditionSummary cond1, cond2, cond3, cond4;
    std::vector<DeltaRecord> runs;
    ScalingFit scaling;
    double eta_floor = 0.0; // min orbital distance across runs
    std::map<std::string, std::string> config;
    std::vector<std::string> artifacts;

    bool verdicts_pass() const;
};

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

struct RunOutputs {
    RunReport report;
    std::vector<GrowthTrace> traces;
    EigenBranch branch;
    UnstableMode mode;
};

/// Full pipeline: solitary wave, branch scan, condition checks, mode
/// selection, hierarchy co-evolution, one nonlinear run per delta.
/// Per-delta failures are recorded in the report instead of aborting.
RunOutputs run_instability(const ExperimentConfig& cfg, std::ostream* log = nullptr);

struct ScalingRow {
    double delta = 0.0, t_pred = 0.0, t_meas = 0.0, distance_at_t = 0.0;
};

struct ScalingTable {
    std::vector<ScalingRow> rows;
    ScalingFit fit;
    double theta = 0.0;
};

/// Escape-time scaling: requires >= 3 deltas spanning >= 2 decades;
/// throws InsufficientDataError when fewer than 3 runs succeed.
ScalingTable scaling_study(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Write branch.csv, growth_<delta>.csv, scaling.csv, report.json and the
/// SVG plots into cfg out_dir; records the paths in the report.
void emit_outputs(RunOutputs& outputs, const std::string& out_dir);

} // namespace chkp
