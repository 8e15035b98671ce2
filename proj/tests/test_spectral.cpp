#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "chkp/errors.hpp"
#include "chkp/spectral.hpp"
#include "test_support.hpp"

using namespace chkp;
using std::numbers::pi;

namespace {

GridPtr pi_grid(int n = 64) { return make_grid(pi, n); }

Field1D sampled(const GridPtr& g, double (*f)(double)) {
    std::vector<double> v(g->n);
    for (int i = 0; i < g->n; ++i)
        v[i] = f(g->nodes[i]);
    return Field1D::of_values(g, std::move(v));
}

} // namespace

TEST_CASE("transform round trip") {
    auto g = pi_grid(128);
    Field1D f = testsupport::random_field(g, 7);
    const auto vals = f.values();
    Field1D back = Field1D::of_coeffs(g, f.coeffs());
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < g->n; ++i) {
        err = std::max(err, std::abs(back.values()[i] - vals[i]));
        scale = std::max(scale, std::abs(vals[i]));
    }
    CHECK(err < 1e-12 * scale);
}

TEST_CASE("helmholtz inverse on cosine and constant") {
    auto g = pi_grid();
    Field1D c = sampled(g, [](double x) { return std::cos(x); });
    Field1D hc = helmholtz_inverse(c);
    for (int i = 0; i < g->n; ++i)
        CHECK(hc.values()[i] == doctest::Approx(0.5 * std::cos(g->nodes[i])).epsilon(1e-12));

    Field1D one = sampled(g, [](double) { return 1.0; });
    Field1D hone = helmholtz_inverse(one);
    for (int i = 0; i < g->n; ++i)
        CHECK(hone.values()[i] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("helmholtz inverse solves (1 - dxx) g = f") {
    auto g = pi_grid(128);
    Field1D f = testsupport::random_field(g, 3);
    Field1D sol = helmholtz_inverse(f);
    Field1D resid = sol - x_derivative(sol, 2) - f;
    CHECK(max_abs(resid) < 1e-10 * std::max(1.0, max_abs(f)));
}

TEST_CASE("J on sin and constants") {
    auto g = pi_grid();
    Field1D s = sampled(g, [](double x) { return std::sin(x); });
    Field1D js = apply_j(s);
    for (int i = 0; i < g->n; ++i)
        CHECK(js.values()[i] == doctest::Approx(0.5 * std::cos(g->nodes[i])).epsilon(1e-12));

    Field1D one = sampled(g, [](double) { return 1.0; });
    CHECK(max_abs(apply_j(one)) < 1e-14);
}

TEST_CASE("J is skew adjoint") {
    auto g = pi_grid(128);
    for (unsigned seed = 1; seed <= 5; ++seed) {
        Field1D f = testsupport::random_field(g, seed);
        Field1D h = testsupport::random_field(g, seed + 100);
        CHECK(std::abs(inner(apply_j(f), f)) < 1e-12);
        CHECK(std::abs(inner(apply_j(f), h) + inner(f, apply_j(h))) < 1e-12);
    }
}

TEST_CASE("x antiderivative twice") {
    auto g = pi_grid();
    Field1D c = sampled(g, [](double x) { return std::cos(x); });
    Field1D r = x_antiderivative2(c);
    for (int i = 0; i < g->n; ++i)
        CHECK(r.values()[i] == doctest::Approx(-std::cos(g->nodes[i])).epsilon(1e-12));

    Field1D s2 = sampled(g, [](double x) { return std::sin(2 * x); });
    Field1D r2 = x_antiderivative2(s2);
    for (int i = 0; i < g->n; ++i)
        CHECK(r2.values()[i] ==
              doctest::Approx(-0.25 * std::sin(2 * g->nodes[i])).epsilon(1e-12));
}

TEST_CASE("x antiderivative rejects nonzero mean") {
    auto g = pi_grid();
    Field1D f = sampled(g, [](double x) { return 0.1 + std::cos(x); });
    CHECK_THROWS_AS((void)x_antiderivative2(f), NonzeroMeanError);
    // explicit zero policy drops the mean instead
    Field1D z = x_antiderivative2(f, ZeroMode::zero);
    CHECK(std::abs(z.coeffs()[0]) == 0.0);
}

TEST_CASE("antiderivative inverts two derivatives on zero-mean fields") {
    auto g = pi_grid(128);
    Field1D f = testsupport::random_field(g, 11);
    auto c = f.coeffs();
    c[0] = 0.0; // zero mean
    c[g->n / 2] = 0.0;
    f = Field1D::of_coeffs(g, c);
    Field1D round = x_antiderivative2(x_derivative(f, 2));
    Field1D diff = round - f;
    CHECK(max_abs(diff) < 1e-12 * std::max(1.0, max_abs(f)));
}

TEST_CASE("helmholtz_inverse after derivative equals J coefficient-wise") {
    auto g = pi_grid(128);
    Field1D f = testsupport::random_field(g, 12);
    auto c = f.coeffs();
    c[0] = 0.0;
    f = Field1D::of_coeffs(g, c);
    const auto a = helmholtz_inverse(x_derivative(f, 1)).coeffs();
    const auto b = apply_j(f).coeffs();
    for (int i = 0; i < g->n; ++i)
        CHECK(std::abs(a[i] - b[i]) == 0.0);
}

TEST_CASE("dealias") {
    auto g = pi_grid(128);
    SUBCASE("fields inside the kept band are unchanged") {
        Field1D f = testsupport::random_field(g, 5, g->n / 3);
        Field1D d = dealias(f);
        const auto &a = f.coeffs(), &b = d.coeffs();
        for (int i = 0; i < g->n; ++i)
            CHECK(std::abs(a[i] - b[i]) == 0.0);
    }
    SUBCASE("pure Nyquist mode is annihilated") {
        std::vector<cplx> c(g->n, cplx(0.0));
        c[g->n / 2] = 1.0;
        Field1D f = Field1D::of_coeffs(g, std::move(c));
        CHECK(max_abs(dealias(f)) == 0.0);
    }
    SUBCASE("idempotent") {
        Field1D f = testsupport::random_field(g, 6, g->n / 2 - 1);
        const auto& once = dealias(f).coeffs();
        const auto& twice = dealias(dealias(f)).coeffs();
        for (int i = 0; i < g->n; ++i)
            CHECK(std::abs(once[i] - twice[i]) == 0.0);
    }
}

TEST_CASE("sobolev norms against closed forms") {
    auto g = pi_grid();
    Field1D s = sampled(g, [](double x) { return std::sin(x); });
    CHECK(sobolev_norm(s, 0.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));

    Field1D z(g);
    CHECK(sobolev_norm(z, 0.0) == 0.0);
    CHECK(sobolev_norm(z, 2.0) == 0.0);

    Field1D c2 = sampled(g, [](double x) { return std::cos(2 * x); });
    CHECK(sobolev_norm(c2, 1.0) == doctest::Approx(std::sqrt(5.0 * pi)).epsilon(1e-13));
}

TEST_CASE("Parseval matches quadrature") {
    auto g = pi_grid(128);
    for (unsigned seed = 21; seed <= 23; ++seed) {
        Field1D f = testsupport::random_field(g, seed);
        std::vector<double> sq(g->n);
        for (int i = 0; i < g->n; ++i)
            sq[i] = f.values()[i] * f.values()[i];
        const double quad = quadrature(Field1D::of_values(g, std::move(sq)));
        const double par = sobolev_norm(f, 0.0);
        CHECK(std::abs(par * par - quad) < 1e-10 * std::abs(quad));
    }
}

TEST_CASE("2D norms, projection and y-mean") {
    auto gx = make_grid(pi, 32);
    auto g2 = make_grid2(gx, 2.0, 8); // period pi in y
    const Grid2D& g = *g2;

    std::vector<double> v(static_cast<size_t>(g.x.n) * g.ny);
    for (int ix = 0; ix < g.x.n; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            v[ix * g.ny + iy] = std::sin(g.x.nodes[ix]) * std::cos(2.0 * g.ynodes[iy]);
    Field2D f = Field2D::of_values(g2, std::move(v));

    // |sin(x) cos(2y)|_{L2}^2 = (2Lx/2) * (a/2) = pi * pi/2
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-12));

    SUBCASE("projection removes only the zero mode") {
        Field2D p = project_offzero_y(f);
        CHECK(sobolev_norm(p - f, 0.0) < 1e-13); // no zero mode here
        Field2D ymean_only = f - p;
        CHECK(sobolev_norm(ymean_only, 0.0) < 1e-13);
    }
    SUBCASE("projection kills y-independent fields and is idempotent") {
        std::vector<double> u(static_cast<size_t>(g.x.n) * g.ny);
        for (int ix = 0; ix < g.x.n; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                u[ix * g.ny + iy] = std::cos(g.x.nodes[ix]);
        Field2D h = Field2D::of_values(g2, std::move(u));
        CHECK(sobolev_norm(project_offzero_y(h), 0.0) < 1e-13);

        Field2D mix = h + f;
        Field2D once = project_offzero_y(mix);
        Field2D twice = project_offzero_y(once);
        CHECK(sobolev_norm(once - twice, 0.0) == 0.0);
        CHECK(sobolev_norm(once, 0.0) <= sobolev_norm(mix, 0.0));
    }
}

TEST_CASE("multiplier symbols of real operators have Hermitian symmetry") {
    const Multiplier ops[] = {Multiplier::x_derivative(1), Multiplier::x_derivative(2),
                              Multiplier::helmholtz_inverse(), Multiplier::j_operator()};
    for (const auto& m : ops)
        for (double xi : {0.3, 1.7, 4.0})
            CHECK(m.symbol(-xi) == std::conj(m.symbol(xi)));
}
