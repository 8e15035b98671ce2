#include "chkp/mode_stack.hpp"

#include <cmath>

#include "chkp/errors.hpp"

namespace chkp {

ModeStack::ModeStack(GridPtr grid, double base_freq, int kmax)
    : grid_(std::move(grid)), base_freq_(base_freq), kmax_(kmax) {
    entries_.reserve(kmax + 1);
    for (int j = 0; j <= kmax; ++j)
        entries_.emplace_back(grid_);
}

CField1D ModeStack::entry(int j) const {
    if (std::abs(j) > kmax_)
        throw TruncationError("ModeStack::entry: index outside the stack");
    return j >= 0 ? entries_[j] : entries_[-j].conj();
}

const CField1D& ModeStack::entry_nonneg(int j) const { return entries_[j]; }

void ModeStack::set_entry(int j, CField1D f) {
    if (j < 0 || j > kmax_)
        throw TruncationError("ModeStack::set_entry: index outside the stack");
    if (j == 0) {
        // the j = 0 profile of a real field is self-conjugate
        auto& v = f.values_mut();
        for (auto& z : v)
            z = cplx(z.real(), 0.0);
    }
    entries_[j] = std::move(f);
}

int ModeStack::support() const {
    for (int j = kmax_; j >= 0; --j) {
        const auto& c = entries_[j].coeffs();
        for (const auto& z : c)
            if (z != cplx(0.0))
                return j;
    }
    return 0;
}

double ModeStack::vnorm(double s) const {
    double m = 0.0;
    for (int j = 0; j <= kmax_; ++j)
        m = std::max(m, sobolev_norm(entries_[j], s));
    return m;
}

ModeStack& ModeStack::operator+=(const ModeStack& other) {
    if (other.kmax_ > kmax_)
        throw TruncationError("ModeStack::operator+=: source support exceeds target");
    for (int j = 0; j <= other.kmax_; ++j)
        entries_[j] += other.entries_[j];
    return *this;
}

ModeStack& ModeStack::scale(double s) {
    for (auto& e : entries_)
        e *= cplx(s);
    return *this;
}

ModeStack mode_product(const ModeStack& a, const ModeStack& b, ProductForm form, int out_kmax) {
    if (a.kmax() + b.kmax() > out_kmax)
        throw TruncationError("mode_product: output stack cannot hold the combined support");
    const GridPtr& grid = a.grid_ptr();
    const int n = grid->n;

    auto factor = [&](const ModeStack& s, int j, bool second) -> CField1D {
        CField1D e = s.entry(j);
        switch (form) {
        case ProductForm::grad_grad:
            return x_derivative(e, 1);
        case ProductForm::id_dxx:
            return second ? x_derivative(e, 2) : e;
        case ProductForm::id_id:
            return e;
        }
        return e;
    };

    ModeStack out(grid, a.base_freq(), out_kmax);
    for (int nidx = 0; nidx <= out_kmax; ++nidx) {
        std::vector<cplx> acc(n, cplx(0.0));
        bool any = false;
        for (int j = -a.kmax(); j <= a.kmax(); ++j) {
            const int l = nidx - j;
            if (std::abs(l) > b.kmax())
                continue;
            const CField1D fa = factor(a, j, false);
            const CField1D fb = factor(b, l, true);
            const auto& va = fa.values();
            const auto& vb = fb.values();
            for (int i = 0; i < n; ++i)
                acc[i] += va[i] * vb[i];
            any = true;
        }
        if (!any)
            continue;
        out.set_entry(nidx, dealias(CField1D::of_values(grid, std::move(acc))));
    }
    return out;
}

Field2D synthesize(const ModeStack& stack, const Grid2Ptr& grid) {
    const Grid2D& g = *grid;
    const double ratio = stack.base_freq() / g.k0;
    const int stride = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - stride) > 1e-9 || stride < 1)
        throw ParameterError("synthesize: stack base frequency is not a multiple of grid k0");
    if (stack.kmax() * stride > g.ny / 2 - 1)
        throw TruncationError("synthesize: transverse grid too small for the stack support");

    std::vector<cplx> coeffs(static_cast<size_t>(g.x.n) * g.ny, cplx(0.0));
    for (int j = -stack.kmax(); j <= stack.kmax(); ++j) {
        const CField1D e = stack.entry(j);
        const auto& c = e.coeffs();
        const int m = j * stride;
        const int iy = (m >= 0) ? m : m + g.ny;
        for (int ix = 0; ix < g.x.n; ++ix)
            coeffs[static_cast<size_t>(ix) * g.ny + iy] += c[ix];
    }
    return Field2D::of_coeffs(grid, std::move(coeffs));
}

} // namespace chkp
