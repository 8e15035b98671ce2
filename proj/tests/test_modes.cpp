#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chkp/errors.hpp"
#include "chkp/mode_stack.hpp"
#include "test_support.hpp"

using namespace chkp;

namespace {

const double kF0 = 0.5; // base transverse frequency for these tests

ModeStack stack_pm1(const GridPtr& g, unsigned seed) {
    ModeStack s(g, kF0, 1);
    Field1D re = testsupport::random_field(g, seed);
    Field1D im = testsupport::random_field(g, seed + 1);
    std::vector<cplx> vals(g->n);
    for (int i = 0; i < g->n; ++i)
        vals[i] = cplx(re.values()[i], im.values()[i]);
    s.set_entry(1, CField1D::of_values(g, std::move(vals)));
    return s;
}

} // namespace

TEST_CASE("index convolution support") {
    auto g = make_grid(10.0, 64);
    ModeStack a = stack_pm1(g, 3);
    ModeStack b = stack_pm1(g, 5);
    ModeStack p = mode_product(a, b, ProductForm::id_id, 2);
    CHECK(p.support() == 2);
    // entries at odd indices vanish
    CHECK(sobolev_norm(p.entry(1), 0.0) == 0.0);
    CHECK(sobolev_norm(p.entry(0), 0.0) > 0.0);
    CHECK(sobolev_norm(p.entry(2), 0.0) > 0.0);
}

TEST_CASE("product with the zero stack vanishes") {
    auto g = make_grid(10.0, 64);
    ModeStack a = stack_pm1(g, 7);
    ModeStack z(g, kF0, 1);
    for (auto form : {ProductForm::grad_grad, ProductForm::id_dxx, ProductForm::id_id}) {
        ModeStack p = mode_product(a, z, form, 2);
        CHECK(p.vnorm(0.0) == 0.0);
    }
}

TEST_CASE("truncation bookkeeping is enforced") {
    auto g = make_grid(10.0, 64);
    ModeStack a = stack_pm1(g, 11);
    CHECK_THROWS_AS((void)mode_product(a, a, ProductForm::id_id, 1), TruncationError);
    CHECK_THROWS_AS((void)ModeStack(g, kF0, 1).entry(2), TruncationError);
}

TEST_CASE("hermitian pairing gives real synthesized fields") {
    auto g = make_grid(10.0, 64);
    ModeStack a = stack_pm1(g, 13);
    const CField1D minus = a.entry(-1);
    const CField1D plus = a.entry(1);
    for (int i = 0; i < g->n; ++i)
        CHECK(minus.values()[i] == std::conj(plus.values()[i]));

    auto g2 = make_grid2(g, kF0, 16);
    const Field2D f = synthesize(a, g2);
    // reality: the coefficients survive a values round trip unchanged
    Field2D back = Field2D::of_values(g2, f.values());
    const auto& ca = f.coeffs();
    const auto& cb = back.coeffs();
    double err = 0.0;
    for (size_t i = 0; i < ca.size(); ++i)
        err = std::max(err, std::abs(ca[i] - cb[i]));
    CHECK(err < 1e-12 * std::max(1.0, a.vnorm(0.0)));
}

TEST_CASE("physical-space product oracle") {
    auto g = make_grid(10.0, 128);
    auto g2 = make_grid2(g, kF0, 32); // 2/3 rule keeps |m| <= 10, enough for support 2
    ModeStack a = stack_pm1(g, 17);
    ModeStack b = stack_pm1(g, 19);

    auto check_form = [&](ProductForm form) {
        const ModeStack p = mode_product(a, b, form, 2);
        const Field2D via_stack = synthesize(p, g2);
        const Field2D fa_raw = synthesize(a, g2);
        const Field2D fb_raw = synthesize(b, g2);
        const Field2D fa =
            (form == ProductForm::grad_grad) ? x_derivative(fa_raw, 1) : fa_raw;
        const Field2D fb = (form == ProductForm::grad_grad) ? x_derivative(fb_raw, 1)
                           : (form == ProductForm::id_dxx) ? x_derivative(fb_raw, 2)
                                                           : fb_raw;
        std::vector<double> prod(fa.values().size());
        for (size_t i = 0; i < prod.size(); ++i)
            prod[i] = fa.values()[i] * fb.values()[i];
        const Field2D via_phys = dealias(Field2D::of_values(g2, std::move(prod)));
        const double scale = std::max(1.0, sobolev_norm(via_phys, 0.0));
        CHECK(sobolev_norm(via_stack - via_phys, 0.0) < 1e-10 * scale);
    };

    check_form(ProductForm::id_id);
    check_form(ProductForm::grad_grad);
    check_form(ProductForm::id_dxx);
}

TEST_CASE("vnorm is the max over entries") {
    auto g = make_grid(10.0, 64);
    ModeStack s(g, kF0, 2);
    Field1D f = testsupport::random_field(g, 23);
    s.set_entry(2, CField1D::of_real(f));
    CHECK(s.vnorm(0.0) == doctest::Approx(sobolev_norm(f, 0.0)));
    CHECK(s.vnorm(1.0) == doctest::Approx(sobolev_norm(f, 1.0)));
}
