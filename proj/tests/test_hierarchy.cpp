#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "chkp/errors.hpp"
#include "chkp/hierarchy.hpp"
#include "test_support.hpp"

using namespace chkp;

namespace {

// 2 nsteps + 1 samples of t -> amp(t) * profile at dt/2 spacing
std::vector<CField1D> sampled_forcing(const CField1D& profile, double dt, int nsteps,
                                      const std::function<double(double)>& amp) {
    std::vector<CField1D> f;
    for (int i = 0; i <= 2 * nsteps; ++i) {
        const double t = 0.5 * dt * i;
        f.push_back(cplx(amp(t)) * profile);
    }
    return f;
}

// J^{-1} = (1 - dxx) dx^{-1} on mean-free profiles
CField1D inverse_j(const CField1D& u) {
    auto c = u.coeffs();
    const Grid1D& g = u.grid();
    for (int j = 0; j < g.n; ++j) {
        if (j == 0 || j == g.nyquist()) {
            c[j] = 0.0;
            continue;
        }
        const double xi = g.xi[j];
        c[j] *= (1.0 + xi * xi) / cplx(0.0, xi);
    }
    return CField1D::of_coeffs(u.grid_ptr(), std::move(c));
}

double fit_log_slope(const std::vector<double>& ts, const std::vector<double>& ln) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const size_t n = ts.size();
    for (size_t i = 0; i < n; ++i) {
        sx += ts[i];
        sy += ln[i];
        sxx += ts[i] * ts[i];
        sxy += ts[i] * ln[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("zero forcing gives the zero trajectory") {
    const auto& w = testsupport::wave(256);
    const double dt = 5e-3;
    const int nsteps = 100;
    std::vector<CField1D> zeros(2 * nsteps + 1, CField1D(w.grid));
    const auto res = solve_forced_mode(w, 0.21, 1, zeros, nsteps * dt, dt);
    CHECK(res.u.size() == static_cast<size_t>(nsteps) + 1);
    for (const auto& u : res.u)
        CHECK(sobolev_norm(u, 0.0) == 0.0);
}

TEST_CASE("eigen-direction forcing reproduces the exact Duhamel solution") {
    const auto& w = testsupport::wave(512);
    const auto& mode = testsupport::mode(512);
    const double sigma = mode.sigma0.real();
    const double dt = 2e-3;
    const double t_end = 4.0;
    const int nsteps = static_cast<int>(t_end / dt + 0.5);

    // constant forcing J F = sigma0 U0 gives u(t) = (e^{sigma0 t} - 1) U0
    const CField1D f0 = inverse_j(cplx(sigma) * mode.u0);
    const auto forcing = sampled_forcing(f0, dt, nsteps, [](double) { return 1.0; });
    const auto res = solve_forced_mode(w, mode.m0 * mode.k0, 1, forcing, t_end, dt);

    const CField1D expect = cplx(std::exp(sigma * t_end) - 1.0) * mode.u0;
    const double err = sobolev_norm(res.u.back() - expect, 0.0);
    CHECK(err < 1e-6 * sobolev_norm(expect, 0.0));
}

TEST_CASE("forcing growth rate bounds the solution growth rate") {
    const auto& w = testsupport::wave(512);
    const auto& mode = testsupport::mode(512);
    const double gamma = 2.0 * mode.sigma0.real();
    const double dt = 2e-3;
    const double t_end = 8.0;
    const int nsteps = static_cast<int>(t_end / dt + 0.5);

    const CField1D prof = CField1D::of_real(testsupport::random_field(w.grid, 31, 40));
    const auto forcing =
        sampled_forcing(prof, dt, nsteps, [&](double t) { return std::exp(gamma * t); });
    const auto res = solve_forced_mode(w, mode.m0 * mode.k0, 1, forcing, t_end, dt);

    std::vector<double> ts, ln;
    for (size_t i = res.u.size() / 2; i < res.u.size(); ++i) {
        const double v = sobolev_norm(res.u[i], 0.0);
        if (v > 0) {
            ts.push_back(res.times[i]);
            ln.push_back(std::log(v));
        }
    }
    const double slope = fit_log_slope(ts, ln);
    CHECK(slope <= gamma * 1.02);
    CHECK(slope >= 0.5 * gamma); // diagnostic lower end
}

TEST_CASE("solve_forced_mode is linear in the forcing") {
    const auto& w = testsupport::wave(256);
    const double dt = 5e-3;
    const int nsteps = 200;
    const CField1D pa = CField1D::of_real(testsupport::random_field(w.grid, 41, 20));
    const CField1D pb = CField1D::of_real(testsupport::random_field(w.grid, 43, 20));
    auto fa = sampled_forcing(pa, dt, nsteps, [](double t) { return std::cos(t); });
    auto fb = sampled_forcing(pb, dt, nsteps, [](double t) { return std::exp(0.1 * t); });
    std::vector<CField1D> fsum;
    for (size_t i = 0; i < fa.size(); ++i)
        fsum.push_back(fa[i] + fb[i]);

    const double t_total = nsteps * dt;
    const auto ra = solve_forced_mode(w, 0.21, 1, fa, t_total, dt);
    const auto rb = solve_forced_mode(w, 0.21, 1, fb, t_total, dt);
    const auto rsum = solve_forced_mode(w, 0.21, 1, fsum, t_total, dt);
    const CField1D diff = rsum.u.back() - ra.u.back() - rb.u.back();
    const double scale = sobolev_norm(rsum.u.back(), 0.0);
    CHECK(sobolev_norm(diff, 0.0) < 1e-11 * std::max(1.0, scale));
}

TEST_CASE("step-size guard") {
    const auto& w = testsupport::wave(512);
    std::vector<CField1D> zeros(3, CField1D(w.grid));
    CHECK_THROWS_AS((void)solve_forced_mode(w, 0.21, 1, zeros, 1.0, 1.0), StabilityError);
}

TEST_CASE("hierarchy structure") {
    const auto& w = testsupport::wave(256);
    const auto& mode = testsupport::mode(256);
    const HierarchyResult h = build_hierarchy(w, mode, 2, 1.0, 4e-3, 50);

    SUBCASE("orders start from zero exactly") {
        REQUIRE(!h.snaps.empty());
        REQUIRE(std::abs(h.snap_times.front()) == 0.0);
        for (const auto& stack : h.snaps.front())
            CHECK(stack.vnorm(0.0) == 0.0);
    }
    SUBCASE("mode support stays within [-(k+1), k+1]") {
        const auto& last = h.snaps.back();
        CHECK(last[0].kmax() == 2);
        CHECK(last[1].kmax() == 3);
        // v1 lives on {0, +-2}: the odd entry vanishes identically
        CHECK(sobolev_norm(last[0].entry(1), 0.0) == 0.0);
        CHECK(sobolev_norm(last[0].entry(2), 0.0) > 0.0);
        // v2 lives on {+-1, +-3}: even entries vanish
        CHECK(sobolev_norm(last[1].entry(0), 0.0) == 0.0);
        CHECK(sobolev_norm(last[1].entry(2), 0.0) == 0.0);
        CHECK(sobolev_norm(last[1].entry(3), 0.0) > 0.0);
    }
}

TEST_CASE("rate ladder") {
    const auto& w = testsupport::wave(512);
    const auto& mode = testsupport::mode(512);
    const double sigma = mode.sigma0.real();
    const double t_end = 2.0 / sigma;
    const HierarchyResult h = build_hierarchy(w, mode, 2, t_end, 2e-3, 1000);
    REQUIRE(h.fitted_rate.size() == 3);
    CHECK(h.fitted_rate[0] == doctest::Approx(sigma).epsilon(1e-6));
    for (int k = 1; k <= 2; ++k) {
        CHECK(h.fitted_rate[k] <= (k + 1) * sigma * 1.02);
        CHECK(h.fitted_rate[k] >= k * sigma); // diagnostic lower end
    }
}

TEST_CASE("leading-order assembly") {
    const auto& w = testsupport::wave(256);
    const auto& mode = testsupport::mode(256);
    auto grid2 = make_grid2(w.grid, mode.k0, 16);

    SUBCASE("M = 0 gives exactly delta v0") {
        const HierarchyResult h = HierarchyResult::leading_only(mode);
        const double delta = 1e-3;
        const Field2D vap = assemble_vap(w, h, delta, 0.7, grid2);
        const Field2D v0 = seed_mode_field(mode, grid2, 0.7);
        CHECK(sobolev_norm(vap - delta * v0, 0.0) < 1e-15);
    }
    SUBCASE("delta -> 0 limit of |v^ap|/delta") {
        const HierarchyResult h = build_hierarchy(w, mode, 2, 0.5, 5e-3, 100);
        const double t = 0.5;
        const double n0 = sobolev_norm(seed_mode_field(mode, grid2, t), 0.0);
        double prev_gap = 1e300;
        for (double delta : {1e-2, 1e-3, 1e-4}) {
            const double n = sobolev_norm(assemble_vap(w, h, delta, t, grid2), 0.0) / delta;
            const double gap = std::abs(n - n0);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-6 * n0);
    }
}

TEST_CASE("residual scaling exponent in delta") {
    const auto& w = testsupport::wave(512);
    const auto& mode = testsupport::mode(512);
    auto grid2 = make_grid2(w.grid, mode.k0, 32);
    const int order_m = 1;

    HierarchyEvolver ev(w, mode, order_m, 2e-3);
    while (ev.time() < 1.0 - 1e-12)
        ev.step();

    std::vector<double> lg_delta, lg_g;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const Field2D g = ev.residual_g(delta, grid2);
        lg_delta.push_back(std::log(delta));
        lg_g.push_back(std::log(sobolev_norm(g, 0.0)));
    }
    const double slope01 = (lg_g[1] - lg_g[0]) / (lg_delta[1] - lg_delta[0]);
    const double slope12 = (lg_g[2] - lg_g[1]) / (lg_delta[2] - lg_delta[1]);
    CHECK(std::abs(slope01 - (order_m + 2)) < 0.15);
    CHECK(std::abs(slope12 - (order_m + 2)) < 0.15);
}
