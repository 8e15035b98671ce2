#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chkp/errors.hpp"
#include "chkp/linalg.hpp"
#include "chkp/spectrum.hpp"
#include "oracle_fd.hpp"
#include "test_support.hpp"

using namespace chkp;
using testsupport::kC;
using testsupport::kKappa;

TEST_CASE("no growth at k = 0 and the translation kernel") {
    const auto& w = testsupport::wave(512);
    CHECK_FALSE(unstable_eigen(w, 0.0).has_value());

    // J L(0) Q' = J H_c Q' ~ 0
    const OperatorMatrix hc = assemble_hc(w);
    Eigen::VectorXd qp =
        Eigen::Map<const Eigen::VectorXd>(w.qp.values().data(), w.grid->n);
    const Eigen::MatrixXd j = assemble_j(w).m;
    CHECK((j * (hc.m * qp)).norm() < 1e-6 * qp.norm());
}

TEST_CASE("unstable eigenpair in the band") {
    const auto& w = testsupport::wave(512);
    auto pair = unstable_eigen(w, 0.21);
    REQUIRE(pair.has_value());
    CHECK(pair->sigma.real() > 0.1);
    CHECK(std::abs(pair->sigma.imag()) < 1e-10);
    CHECK(pair->residual < 1e-8);
    CHECK(sobolev_norm(pair->u, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sigma agrees with the finite-difference oracle") {
    const auto& w = testsupport::wave(512);
    auto pair = unstable_eigen(w, 0.21);
    REQUIRE(pair.has_value());
    const oracle::FdOperators fd(w);
    const auto sigma_fd = fd.leading_sigma(0.21);
    CHECK(std::abs(pair->sigma - sigma_fd) < 0.005 * std::abs(pair->sigma));
}

TEST_CASE("branch scan brackets the band") {
    const auto& w = testsupport::wave(512);
    const EigenBranch br = scan_branch(w, 0.0, 0.8, 17);
    REQUIRE(br.has_band);
    CHECK(br.k_lo > 0.0);
    CHECK(br.k_hi > br.k_lo);
    CHECK(br.k_found >= br.k_hi);
    CHECK(br.k_found < 0.5);

    SUBCASE("growth vanishes toward the refined upper edge") {
        auto at_edge = unstable_eigen(w, br.k_hi);
        if (at_edge)
            CHECK(at_edge->sigma.real() < 1e-3);
        auto beyond = unstable_eigen(w, br.k_found + 1e-4);
        CHECK_FALSE(beyond.has_value());
        // bisection tightened the bracket
        CHECK(br.k_found - br.k_hi < 1e-5 * std::max(1.0, br.k_found));
    }
    SUBCASE("no instability beyond the edge: Ltilde(k) > 0") {
        const SpectralBasis basis = SpectralBasis::make(*w.grid);
        for (double k : {br.k_found * 1.01, br.k_found * 1.5, 2.0 * br.k_found}) {
            const Eigen::VectorXd ev =
                linalg::sym_eigenvalues(assemble_ltilde(w, basis, k).m);
            CHECK(ev.minCoeff() > 0.0);
        }
    }
    SUBCASE("branch growth rates are continuous in k") {
        double prev = -1.0;
        double max_jump = 0.0;
        for (const auto& s : br.samples) {
            if (s.unstable && prev >= 0.0)
                max_jump = std::max(max_jump, std::abs(s.sigma.real() - prev));
            prev = s.unstable ? s.sigma.real() : -1.0;
        }
        CHECK(max_jump < 0.06); // smooth at the 0.05 sample spacing
    }
    SUBCASE("eigen-residuals hold along the branch") {
        for (size_t i = 0; i < br.samples.size(); ++i)
            if (br.samples[i].unstable)
                CHECK(br.samples[i].sigma.real() > kGrowthTol);
    }
}

TEST_CASE("spectral condition checks") {
    const auto& w = testsupport::wave(512);
    const EigenBranch br = scan_branch(w, 0.0, 0.8, 17);
    REQUIRE(br.has_band);
    std::vector<double> ks;
    for (int i = 0; i <= 8; ++i)
        ks.push_back(2.0 * br.k_found * i / 8.0);
    const ConditionReport rep = verify_rt_conditions(w, ks, br.k_found);

    CHECK(rep.cond1.verdict);
    CHECK(rep.cond1.margin > 0.0);
    CHECK(rep.cond2.verdict);
    CHECK(rep.cond3.verdict);
    CHECK(rep.cond3.margin > -1e-10);
    CHECK(rep.cond4.verdict);

    SUBCASE("cond1 margins grow with k") {
        REQUIRE(rep.cond1.values.size() >= 2);
        CHECK(rep.cond1.values.back() > rep.cond1.values.front());
    }
    SUBCASE("cond2 sample value: c=3, kappa=1, xi=1, k=1 gives 5") {
        CHECK(n_infinity_symbol(3.0, 1.0, 1.0, 1.0) == doctest::Approx(5.0));
    }
    SUBCASE("cond3 equality case: identical k gives the zero matrix") {
        const SpectralBasis basis = SpectralBasis::make(*w.grid);
        const Eigen::MatrixXd a = assemble_ltilde(w, basis, 0.3).m;
        const Eigen::MatrixXd b = assemble_ltilde(w, basis, 0.3).m;
        CHECK((a - b).norm() == 0.0);
    }
}

TEST_CASE("constant-coefficient characteristic roots stay off the imaginary axis") {
    std::vector<std::complex<double>> sigmas;
    for (int i = 1; i <= 5; ++i)
        sigmas.push_back(std::complex<double>(0.06 * i, 0.0));
    SUBCASE("margin and roots across a (sigma, k) grid") {
        for (int ik = 1; ik <= 5; ++ik) {
            const double k = 0.2 * ik;
            const AInfinityCheck chk = a_infinity_check(kC, kKappa, k, sigmas);
            CHECK(chk.verdict);
            CHECK(chk.root_count == 4);
            CHECK(chk.min_abs_re_root > 0.0);
            CHECK(chk.analytic_margin == doctest::Approx(k * k));
        }
    }
    SUBCASE("complex sigma with positive real part") {
        const std::vector<std::complex<double>> cs = {{0.1, 0.05}};
        const AInfinityCheck chk = a_infinity_check(kC, kKappa, 1.0, cs);
        CHECK(chk.verdict);
        CHECK(chk.analytic_margin == doctest::Approx(1.0));
    }
    SUBCASE("parameter guards") {
        CHECK_THROWS_AS((void)a_infinity_check(kC, kKappa, 0.0, sigmas), ParameterError);
        CHECK_THROWS_AS((void)a_infinity_check(1.0, 1.0, 1.0, sigmas), ParameterError);
    }
}

TEST_CASE("most unstable mode selection") {
    const auto& w = testsupport::wave(512);
    const EigenBranch br = scan_branch(w, 0.0, 0.8, 17);
    REQUIRE(br.has_band);

    SUBCASE("argmax choice with m0 = 1") {
        const BranchSample* peak = br.argmax();
        const UnstableMode mode = select_most_unstable(w, br, peak->k);
        CHECK(mode.m0 == 1);
        CHECK(mode.sigma0.real() >= peak->sigma.real() - 1e-6);
        CHECK(mode.residual < 1e-10);
    }
    SUBCASE("k0 beyond the band has no unstable multiple") {
        CHECK_THROWS_AS((void)select_most_unstable(w, br, br.k_found + 0.05),
                        NoUnstableModeError);
    }
    SUBCASE("small k0 selects the multiple with maximal growth") {
        const BranchSample* peak = br.argmax();
        const double k0 = peak->k / 2.0;
        const UnstableMode mode = select_most_unstable(w, br, k0);
        CHECK(mode.m0 == 2); // 2*k0 sits at the peak
        CHECK(mode.largest_unstable_m >= mode.m0);
    }
    SUBCASE("seed field is real, unit norm, zero y-mean") {
        const UnstableMode mode = select_most_unstable(w, br, br.argmax()->k);
        auto grid2 = make_grid2(w.grid, mode.k0, 16);
        const Field2D v0 = seed_mode_field(mode, grid2, 0.0);
        CHECK(sobolev_norm(v0, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sobolev_norm(y_mean(v0), 0.0) < 1e-12);
        // |v0(t)| = e^{sigma t} |v0(0)|
        const Field2D v0t = seed_mode_field(mode, grid2, 1.5);
        CHECK(sobolev_norm(v0t, 0.0) ==
              doctest::Approx(std::exp(1.5 * mode.sigma0.real())).epsilon(1e-9));
    }
}
