#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "chkp/errors.hpp"
#include "chkp/experiment.hpp"
#include "chkp/io.hpp"
#include "test_support.hpp"

using namespace chkp;
using testsupport::kC;
using testsupport::kKappa;
namespace fs = std::filesystem;

TEST_CASE("orbital distance") {
    const auto& w = testsupport::wave(512);
    auto g2 = make_grid2(w.grid, 0.5, 8);
    const Field2D phi2 = broadcast_wave(w, g2);

    SUBCASE("the wave itself") {
        const OrbitalDistance od = orbital_distance(phi2, w);
        CHECK(od.distance < 1e-8);
        CHECK(std::abs(od.shift) < 1e-5);
    }
    SUBCASE("recovers a pure shift") {
        const double shift = 3.7;
        std::vector<double> vals(static_cast<size_t>(g2->x.n) * g2->ny);
        for (int ix = 0; ix < g2->x.n; ++ix) {
            const double q = soliton_value(kC, kKappa, g2->x.nodes[ix] - shift);
            for (int iy = 0; iy < g2->ny; ++iy)
                vals[ix * g2->ny + iy] = q;
        }
        const Field2D u = Field2D::of_values(g2, std::move(vals));
        const OrbitalDistance od = orbital_distance(u, w);
        CHECK(od.distance < 1e-8);
        CHECK(od.shift == doctest::Approx(shift).epsilon(1e-5 / shift));
    }
    SUBCASE("shift invariance of the infimum") {
        Field2D u = phi2 + 0.01 * testsupport::random_field2(g2, 5);
        const double d0 = orbital_distance(u, w).distance;
        // shift u by an exact number of grid cells (circular roll in x)
        const int roll = 37;
        const auto& uv = u.values();
        std::vector<double> rolled(uv.size());
        for (int ix = 0; ix < g2->x.n; ++ix)
            for (int iy = 0; iy < g2->ny; ++iy)
                rolled[((ix + roll) % g2->x.n) * g2->ny + iy] = uv[ix * g2->ny + iy];
        const double d1 = orbital_distance(Field2D::of_values(g2, std::move(rolled)), w).distance;
        CHECK(std::abs(d0 - d1) < 1e-8 * std::max(1.0, d0));
    }
    SUBCASE("orthogonal bump: distance equals the bump norm") {
        // odd bump, Gram-Schmidt against Q' so the shift stays at zero
        Field1D qp = w.qp;
        std::vector<double> bump(w.grid->n);
        for (int i = 0; i < w.grid->n; ++i) {
            const double x = w.grid->nodes[i];
            bump[i] = x * std::exp(-0.5 * x * x);
        }
        Field1D b = Field1D::of_values(w.grid, std::move(bump));
        const double proj = inner(b, qp) / inner(qp, qp);
        b -= proj * qp;
        const double eps = 1e-3;

        std::vector<double> vals(static_cast<size_t>(g2->x.n) * g2->ny);
        for (int ix = 0; ix < g2->x.n; ++ix)
            for (int iy = 0; iy < g2->ny; ++iy)
                vals[ix * g2->ny + iy] = eps * b.values()[ix];
        const Field2D u = phi2 + Field2D::of_values(g2, std::move(vals));
        const OrbitalDistance od = orbital_distance(u, w);
        const double expect = eps * sobolev_norm(b, 0.0) * std::sqrt(g2->period());

        // brute-force oracle: direct quadrature over a 10x finer shift grid
        double best = 1e300;
        const double fine = w.grid->dx() / 10.0;
        const Field1D umean = y_mean(u);
        for (int i = -20; i <= 20; ++i) {
            const double l = i * fine;
            double acc = 0.0;
            for (int ix = 0; ix < w.grid->n; ++ix) {
                const double d = umean.values()[ix] - soliton_value(kC, kKappa, w.grid->nodes[ix] - l);
                acc += d * d;
            }
            best = std::min(best, acc * w.grid->dx() * g2->period());
        }
        const double brute = std::sqrt(best);

        CHECK(std::abs(od.distance - expect) < 1e-4 * expect);
        CHECK(od.distance <= brute + 1e-12);
        CHECK(std::abs(od.distance - brute) < 1e-4 * expect);
    }
}

TEST_CASE("config parsing and validation") {
    SUBCASE("namespaced keys") {
        const auto kv = io::parse_config(
            "# comment\nphysics.c = 4.0\nphysics.kappa = 1.5\ngrid.nx = 512\n"
            "run.delta_list = 1e-2,1e-3\nrun.theta = 0.08\nout.dir = results\n");
        const ExperimentConfig cfg = ExperimentConfig::from_map(kv);
        CHECK(cfg.c == 4.0);
        CHECK(cfg.kappa == 1.5);
        CHECK(cfg.nx == 512);
        CHECK(cfg.deltas == std::vector<double>{1e-2, 1e-3});
        CHECK(cfg.theta == 0.08);
        CHECK(cfg.out_dir == "results");
        cfg.validate();
    }
    SUBCASE("defaults") {
        const ExperimentConfig cfg;
        CHECK(cfg.theta_value() == doctest::Approx(0.05 * (kC - 2.0 * kKappa)));
        CHECK(cfg.lx_value() == doctest::Approx(recommended_half_length(kC, kKappa)));
        cfg.validate();
    }
    SUBCASE("invalid parameters are rejected") {
        ExperimentConfig cfg;
        cfg.c = 2.0;
        CHECK_THROWS_AS(cfg.validate(), ParameterError);
        cfg = ExperimentConfig{};
        cfg.deltas = {0.9}; // >= theta
        CHECK_THROWS_AS(cfg.validate(), ParameterError);
    }
    SUBCASE("map round trip") {
        ExperimentConfig cfg;
        cfg.c = 3.5;
        cfg.deltas = {1e-2, 5e-3};
        cfg.out_dir = "x";
        const ExperimentConfig back = ExperimentConfig::from_map(cfg.to_map());
        CHECK(back.c == cfg.c);
        CHECK(back.deltas == cfg.deltas);
        CHECK(back.out_dir == cfg.out_dir);
    }
}

namespace {

RunOutputs synthetic_outputs() {
    RunOutputs out;
    RunReport& r = out.report;
    r.c = kC;
    r.kappa = kKappa;
    r.theta = 0.05;
    r.k0 = 0.2;
    r.m0 = 1;
    r.largest_unstable_m = 1;
    r.sigma0_re = 0.12;
    r.sigma0_im = 0.0;
    r.c_s = 1.0;
    r.band_k_lo = 0.02;
    r.band_k_hi = 0.31;
    r.k_found = 0.32;
    r.cond1 = {true, 0.01};
    r.cond2 = {true, 0.04};
    r.cond3 = {true, -1e-12};
    r.cond4 = {true, 0.07};
    for (int i = 0; i < 3; ++i) {
        DeltaRecord d;
        d.delta = std::pow(10.0, -3 - i);
        d.t_delta_pred = std::log(r.theta / d.delta) / r.sigma0_re;
        d.t_meas = d.t_delta_pred - 5.0;
        d.distance_at_t = 0.03 + 0.001 * i;
        d.growth_fit_slope = 0.119;
        d.pi_vap_at_t = 0.05;
        d.w_at_t = 1e-4;
        d.max_w = 2e-4;
        d.triangle_ok = true;
        d.ok = true;
        r.runs.push_back(d);

        GrowthTrace tr;
        tr.delta = d.delta;
        for (int s = 0; s <= 10; ++s) {
            tr.t.push_back(0.5 * s);
            tr.pi_norm.push_back(d.delta * std::exp(r.sigma0_re * 0.5 * s));
            tr.w_norm.push_back(1e-6);
            tr.h.push_back(-1.23);
            tr.q.push_back(4.56);
        }
        out.traces.push_back(tr);
    }
    r.scaling = {1.0 / r.sigma0_re, -3.0, 0.9999, 1.0 / r.sigma0_re};
    r.eta_floor = 0.03;
    r.config = ExperimentConfig{}.to_map();
    for (int i = 0; i < 5; ++i) {
        BranchSample s;
        s.k = 0.1 * (i + 1);
        s.sigma = cplx(std::max(0.0, 0.12 - 0.02 * i), 0.0);
        s.unstable = s.sigma.real() > 0;
        out.branch.samples.push_back(s);
    }
    out.branch.has_band = true;
    out.mode.k0 = r.k0;
    out.mode.m0 = 1;
    out.mode.sigma0 = cplx(r.sigma0_re, 0.0);
    out.mode.u0 = CField1D::of_real(testsupport::wave(256).qp);
    return out;
}

std::string first_line(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

} // namespace

TEST_CASE("report JSON round trip") {
    const RunOutputs out = synthetic_outputs();
    const std::string text = report_to_json(out.report);
    const RunReport back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    CHECK(back.runs.size() == 3);
    CHECK(back.scaling.slope == out.report.scaling.slope);
    CHECK(back.verdicts_pass());
}

TEST_CASE("emit_outputs writes the documented schemas") {
    RunOutputs out = synthetic_outputs();
    const std::string dir = "emit_test_out";
    fs::remove_all(dir);
    emit_outputs(out, dir);

    CHECK(first_line(dir + "/branch.csv") == "k,re_sigma,im_sigma");
    CHECK(first_line(dir + "/scaling.csv") == "delta,T_delta_pred,T_meas,distance_at_T");
    CHECK(first_line(dir + "/growth_1e-03.csv") == "t,norm_pi_v,norm_w,H,Q");
    CHECK(fs::exists(dir + "/growth_1e-04.csv"));
    CHECK(fs::exists(dir + "/growth_1e-05.csv"));
    CHECK(fs::exists(dir + "/mode_u0.csv"));
    CHECK(fs::exists(dir + "/report.json"));

    SUBCASE("one growth series per delta plus the reference slope") {
        std::ifstream svg(dir + "/growth.svg");
        std::string text((std::istreambuf_iterator<char>(svg)),
                         std::istreambuf_iterator<char>());
        size_t count = 0, pos = 0;
        while ((pos = text.find("<polyline", pos)) != std::string::npos) {
            ++count;
            pos += 9;
        }
        CHECK(count == out.traces.size() + 1);
    }
    SUBCASE("report.json parses back") {
        std::ifstream in(dir + "/report.json");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        const RunReport rep = report_from_json(text);
        CHECK(rep.runs.size() == out.report.runs.size());
        CHECK(!rep.artifacts.empty());
    }
    fs::remove_all(dir);
}

TEST_CASE("snapshot round trip") {
    const auto& w = testsupport::wave(256);
    auto g2 = make_grid2(w.grid, 0.4, 8);
    Field2D f = testsupport::random_field2(g2, 17);
    io::SnapshotMeta meta;
    meta.t = 2.5;
    meta.c = kC;
    meta.kappa = kKappa;
    io::save_snapshot(f, meta, "snap_test");
    io::SnapshotMeta got;
    const Field2D g = io::load_snapshot("snap_test", &got);
    CHECK(got.t == 2.5);
    CHECK(got.nx == g2->x.n);
    CHECK(sobolev_norm(f - g, 0.0) < 1e-14);
    fs::remove("snap_test.bin");
    fs::remove("snap_test.json");
}

TEST_CASE("scaling study guards") {
    ExperimentConfig cfg;
    cfg.deltas = {1e-3, 1e-4};
    CHECK_THROWS_AS((void)scaling_study(cfg), InsufficientDataError);
    cfg.deltas = {1e-3, 8e-4, 6e-4};
    CHECK_THROWS_AS((void)scaling_study(cfg), InsufficientDataError);
}
