#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "chkp/errors.hpp"
#include "chkp/solitary_wave.hpp"
#include "test_support.hpp"

using namespace chkp;
using testsupport::kC;
using testsupport::kKappa;

// First integral of the traveling-wave equation, obtained by integrating
//   1/2 Q'^2 + Q Q'' - 2k Q - 3/2 Q^2 + c(Q - Q'') = 0
// twice with decaying boundary conditions:
//   (Q')^2 = R(Q) = Q^2 (c - 2 kappa - Q) / (c - Q).
// R vanishes at the peak height c - 2 kappa and R'(peak) < 0 there.
static double first_integral(double q, double c, double kappa) {
    return q * q * (c - 2.0 * kappa - q) / (c - q);
}

TEST_CASE("peak height and parameters") {
    const auto& w = testsupport::wave(512);
    const int i0 = w.grid->n / 2;
    CHECK(std::abs(w.q.values()[i0] - (kC - 2.0 * kKappa)) < 1e-10);
    // peak is the max
    CHECK(max_abs(w.q) == doctest::Approx(kC - 2.0 * kKappa).epsilon(1e-12));
    // non-degeneracy: min(c - Q) = 2 kappa at the peak
    double mn = 1e300;
    for (double q : w.q.values())
        mn = std::min(mn, kC - q);
    CHECK(std::abs(mn - 2.0 * kKappa) < 1e-10);
}

TEST_CASE("parameter validation") {
    auto g = make_grid(40.0, 256);
    CHECK_THROWS_AS((void)compute_soliton(2.0, 1.0, g), ParameterError);   // c = 2 kappa
    CHECK_THROWS_AS((void)compute_soliton(1.5, 1.0, g), ParameterError);   // c < 2 kappa
    CHECK_THROWS_AS((void)compute_soliton(3.0, -0.1, g), ParameterError);  // kappa <= 0
    // too-short grid: tail above 1e-13 of the peak at the boundary
    CHECK_THROWS_AS((void)compute_soliton(3.0, 1.0, make_grid(10.0, 256)), ResolutionError);
}

TEST_CASE("first-integral oracle") {
    const auto& w = testsupport::wave(1024);
    const auto& q = w.q.values();
    const auto& qp = w.qp.values();
    double worst = 0.0;
    for (int i = 0; i < w.grid->n; ++i)
        worst = std::max(worst, std::abs(qp[i] * qp[i] - first_integral(q[i], kC, kKappa)));
    CHECK(worst < 1e-8);

    // R(peak) = 0 and the signs are consistent with a maximum at x = 0
    CHECK(std::abs(first_integral(kC - 2.0 * kKappa, kC, kKappa)) < 1e-14);
    CHECK(first_integral(0.5 * (kC - 2.0 * kKappa), kC, kKappa) > 0.0);
}

TEST_CASE("traveling-wave residual") {
    SUBCASE("converged profile") {
        const auto& w = testsupport::wave(2048);
        CHECK(traveling_wave_residual(w) < 1e-8);
    }
    SUBCASE("residual falls with refinement") {
        // spectral convergence: each doubling shrinks the residual (until
        // it saturates near machine precision)
        const double r256 = traveling_wave_residual(testsupport::wave(256));
        const double r512 = traveling_wave_residual(testsupport::wave(512));
        CHECK(r512 < r256);
        CHECK(r512 < 1e-8);
    }
    SUBCASE("perturbed profile is detected") {
        SolitaryWave w = testsupport::wave(512);
        auto vals = w.q.values();
        for (int i = 0; i < w.grid->n; ++i)
            vals[i] += 1e-3 / std::cosh(w.grid->nodes[i]);
        w.q = Field1D::of_values(w.grid, std::move(vals));
        w.qp = x_derivative(w.q, 1);
        w.qpp = x_derivative(w.q, 2);
        CHECK(traveling_wave_residual(w) > 1e-4);
    }
    SUBCASE("zero profile is steady") {
        SolitaryWave w = testsupport::wave(256);
        w.q = Field1D(w.grid);
        w.qp = Field1D(w.grid);
        w.qpp = Field1D(w.grid);
        CHECK(traveling_wave_residual(w) == 0.0);
    }
}

TEST_CASE("tail decay rate") {
    const auto& w = testsupport::wave(1024);
    const double expected = std::sqrt(1.0 - 2.0 * kKappa / kC);
    CHECK(std::abs(w.decay_rate - expected) < 0.01 * expected);
    CHECK(w.decay_rate == doctest::Approx(0.57735).epsilon(0.01));
}

TEST_CASE("profile properties report") {
    const auto& w = testsupport::wave(1024);
    const PropertyReport r = properties_report(w);
    CHECK(r.even);
    CHECK(r.monotone);
    CHECK(r.peak_ok);
    CHECK(r.decay_ok);

    SUBCASE("concavity transition at c - kappa/2 - sqrt(c kappa + kappa^2/4)") {
        CHECK(r.concavity_threshold == doctest::Approx(2.5 - std::sqrt(3.25)).epsilon(1e-12));
        CHECK(r.concavity_threshold == doctest::Approx(0.69722).epsilon(1e-4));
        CHECK(r.convexity_ok);
    }
    SUBCASE("curvature signs at the peak and in the tail") {
        const auto& qpp = w.qpp.values();
        const int i0 = w.grid->n / 2;
        CHECK(qpp[i0] < 0.0);                     // interior maximum
        CHECK(qpp[i0 + w.grid->n / 4] > 0.0);     // far tail is convex
    }
}

TEST_CASE("spectral convergence of the sampled profile") {
    const auto& coarse = testsupport::wave(1024);
    const auto& fine = testsupport::wave(2048);
    // compare on the shared nodes (every second fine node)
    double worst = 0.0;
    for (int i = 0; i < coarse.grid->n; ++i)
        worst = std::max(worst,
                         std::abs(coarse.q.values()[i] - fine.q.values()[2 * i]));
    CHECK(worst < 1e-9);
}

TEST_CASE("closed-form point evaluation agrees with the sampled profile") {
    const auto& w = testsupport::wave(512);
    for (int i : {0, 100, 256, 300, 400})
        CHECK(soliton_value(kC, kKappa, w.grid->nodes[i]) ==
              doctest::Approx(w.q.values()[i]).epsilon(1e-12));
}

TEST_CASE("profile export schema") {
    const auto& w = testsupport::wave(256);
    const std::string path = "soliton_test_export.csv";
    export_profile_csv(w, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,Q,Qp,Qpp");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == w.grid->n);
    std::remove(path.c_str());
}
