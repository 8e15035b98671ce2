#include "chkp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "chkp/errors.hpp"

namespace chkp {

namespace {

double max_coeff_abs(const std::vector<cplx>& c) {
    double m = 0.0;
    for (const auto& z : c)
        m = std::max(m, std::abs(z));
    return m;
}

void apply_symbol_1d(std::vector<cplx>& c, const Grid1D& g, const Multiplier& m) {
    const double scale = max_coeff_abs(c);
    for (int j = 0; j < g.n; ++j) {
        if (j == 0) {
            switch (m.zero_mode) {
            case ZeroMode::zero:
                c[0] = 0.0;
                break;
            case ZeroMode::pass:
                c[0] *= m.symbol(0.0);
                break;
            case ZeroMode::reject:
                if (std::abs(c[0]) > kZeroModeTol * std::max(scale, 1e-300))
                    throw NonzeroMeanError("multiplier: zero x-mode carries data");
                c[0] = 0.0;
                break;
            }
        } else if (j == g.nyquist() && m.zero_nyquist) {
            c[j] = 0.0;
        } else {
            c[j] *= m.symbol(g.xi[j]);
        }
    }
}

// Enforce Hermitian symmetry of the coefficients of a real field; cheap
// and keeps roundoff from real-symbol application out of the invariant.
void hermitize(std::vector<cplx>& c, int n) {
    c[0] = cplx(c[0].real(), 0.0);
    c[n / 2] = cplx(c[n / 2].real(), 0.0);
    for (int j = 1; j < n / 2; ++j) {
        const cplx avg = 0.5 * (c[j] + std::conj(c[n - j]));
        c[j] = avg;
        c[n - j] = std::conj(avg);
    }
}

} // namespace

Multiplier Multiplier::x_derivative(int order) {
    return Multiplier{
        [order](double xi) { return std::pow(cplx(0.0, xi), order); },
        ZeroMode::pass,
        order % 2 != 0,
    };
}

Multiplier Multiplier::helmholtz_inverse() {
    return Multiplier{
        [](double xi) { return cplx(1.0 / (1.0 + xi * xi), 0.0); },
        ZeroMode::pass,
        false,
    };
}

Multiplier Multiplier::j_operator() {
    return Multiplier{
        [](double xi) { return cplx(0.0, xi / (1.0 + xi * xi)); },
        ZeroMode::zero,
        true,
    };
}

Multiplier Multiplier::x_antiderivative2(ZeroMode policy) {
    return Multiplier{
        [](double xi) { return cplx(-1.0 / (xi * xi), 0.0); },
        policy,
        false,
    };
}

Field1D apply(const Multiplier& m, const Field1D& f) {
    std::vector<cplx> c = f.coeffs();
    apply_symbol_1d(c, f.grid(), m);
    hermitize(c, f.grid().n);
    return Field1D::of_coeffs(f.grid_ptr(), std::move(c));
}

CField1D apply(const Multiplier& m, const CField1D& f) {
    std::vector<cplx> c = f.coeffs();
    apply_symbol_1d(c, f.grid(), m);
    return CField1D::of_coeffs(f.grid_ptr(), std::move(c));
}

Field2D apply_x(const Multiplier& m, const Field2D& f) {
    const Grid2D& g = f.grid();
    const int nx = g.x.n, ny = g.ny;
    std::vector<cplx> c = f.coeffs();
    const double scale = max_coeff_abs(c);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            cplx& z = c[static_cast<size_t>(ix) * ny + iy];
            if (ix == 0) {
                switch (m.zero_mode) {
                case ZeroMode::zero:
                    z = 0.0;
                    break;
                case ZeroMode::pass:
                    z *= m.symbol(0.0);
                    break;
                case ZeroMode::reject:
                    if (std::abs(z) > kZeroModeTol * std::max(scale, 1e-300))
                        throw NonzeroMeanError(
                            "multiplier: zero x-mode carries data on a transverse mode");
                    z = 0.0;
                    break;
                }
            } else if (ix == g.x.nyquist() && m.zero_nyquist) {
                z = 0.0;
            } else {
                z *= m.symbol(g.x.xi[ix]);
            }
        }
    }
    return Field2D::of_coeffs(f.grid_ptr(), std::move(c));
}

Field1D helmholtz_inverse(const Field1D& f) { return apply(Multiplier::helmholtz_inverse(), f); }
Field2D helmholtz_inverse(const Field2D& f) { return apply_x(Multiplier::helmholtz_inverse(), f); }

// Applied as the literal composition so that
// helmholtz_inverse(x_derivative(f)) == apply_j(f) holds coefficient-wise
// exactly, not just to rounding.
Field1D apply_j(const Field1D& f) {
    return apply(Multiplier::helmholtz_inverse(), apply(Multiplier::x_derivative(1), f));
}
CField1D apply_j(const CField1D& f) {
    return apply(Multiplier::helmholtz_inverse(), apply(Multiplier::x_derivative(1), f));
}
Field2D apply_j(const Field2D& f) {
    return apply_x(Multiplier::helmholtz_inverse(), apply_x(Multiplier::x_derivative(1), f));
}
Field1D x_derivative(const Field1D& f, int order) { return apply(Multiplier::x_derivative(order), f); }
CField1D x_derivative(const CField1D& f, int order) { return apply(Multiplier::x_derivative(order), f); }
Field2D x_derivative(const Field2D& f, int order) { return apply_x(Multiplier::x_derivative(order), f); }

Field1D x_antiderivative2(const Field1D& f, ZeroMode policy) {
    if (policy == ZeroMode::pass)
        throw ParameterError("x_antiderivative2: symbol is singular at xi = 0");
    return apply(Multiplier::x_antiderivative2(policy), f);
}

Field2D x_antiderivative2(const Field2D& f, ZeroMode policy) {
    if (policy == ZeroMode::pass)
        throw ParameterError("x_antiderivative2: symbol is singular at xi = 0");
    return apply_x(Multiplier::x_antiderivative2(policy), f);
}

Field2D y_derivative2(const Field2D& f) {
    const Grid2D& g = f.grid();
    std::vector<cplx> c = f.coeffs();
    for (int ix = 0; ix < g.x.n; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            c[static_cast<size_t>(ix) * g.ny + iy] *= -g.eta[iy] * g.eta[iy];
    return Field2D::of_coeffs(f.grid_ptr(), std::move(c));
}

namespace {

template <typename FieldT> FieldT dealias_1d(const FieldT& f) {
    const Grid1D& g = f.grid();
    std::vector<cplx> c = f.coeffs();
    const int cut = g.n / 3;
    for (int j = 0; j < g.n; ++j) {
        const int n = (j < g.n / 2) ? j : j - g.n;
        if (std::abs(n) > cut)
            c[j] = 0.0;
    }
    return FieldT::of_coeffs(f.grid_ptr(), std::move(c));
}

} // namespace

Field1D dealias(const Field1D& f) { return dealias_1d<Field1D>(f); }
CField1D dealias(const CField1D& f) { return dealias_1d<CField1D>(f); }

Field2D dealias(const Field2D& f) {
    const Grid2D& g = f.grid();
    std::vector<cplx> c = f.coeffs();
    const int cx = g.x.n / 3, cy = g.ny / 3;
    for (int ix = 0; ix < g.x.n; ++ix) {
        const int n = (ix < g.x.n / 2) ? ix : ix - g.x.n;
        for (int iy = 0; iy < g.ny; ++iy) {
            const int m = (iy < g.ny / 2) ? iy : iy - g.ny;
            if (std::abs(n) > cx || std::abs(m) > cy)
                c[static_cast<size_t>(ix) * g.ny + iy] = 0.0;
        }
    }
    return Field2D::of_coeffs(f.grid_ptr(), std::move(c));
}

namespace {

template <typename FieldT> double sobolev_1d(const FieldT& f, double s) {
    const Grid1D& g = f.grid();
    const auto& c = f.coeffs();
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + g.xi[j] * g.xi[j], s);
        acc += w * std::norm(c[j]);
    }
    return std::sqrt(2.0 * g.half_length * acc);
}

} // namespace

double sobolev_norm(const Field1D& f, double s) { return sobolev_1d<Field1D>(f, s); }
double sobolev_norm(const CField1D& f, double s) { return sobolev_1d<CField1D>(f, s); }

double sobolev_norm(const Field2D& f, double s) {
    const Grid2D& g = f.grid();
    const auto& c = f.coeffs();
    double acc = 0.0;
    for (int ix = 0; ix < g.x.n; ++ix) {
        const double xx = g.x.xi[ix] * g.x.xi[ix];
        for (int iy = 0; iy < g.ny; ++iy) {
            const double w =
                (s == 0.0) ? 1.0 : std::pow(1.0 + xx + g.eta[iy] * g.eta[iy], s);
            acc += w * std::norm(c[static_cast<size_t>(ix) * g.ny + iy]);
        }
    }
    return std::sqrt(2.0 * g.x.half_length * g.period() * acc);
}

double inner(const Field1D& a, const Field1D& b) {
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    double acc = 0.0;
    for (size_t j = 0; j < ca.size(); ++j)
        acc += (ca[j] * std::conj(cb[j])).real();
    return 2.0 * a.grid().half_length * acc;
}

cplx inner(const CField1D& a, const CField1D& b) {
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    cplx acc = 0.0;
    for (size_t j = 0; j < ca.size(); ++j)
        acc += ca[j] * std::conj(cb[j]);
    return 2.0 * a.grid().half_length * acc;
}

double inner(const Field2D& a, const Field2D& b) {
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    double acc = 0.0;
    for (size_t j = 0; j < ca.size(); ++j)
        acc += (ca[j] * std::conj(cb[j])).real();
    return 2.0 * a.grid().x.half_length * a.grid().period() * acc;
}

double quadrature(const Field1D& f) {
    const auto& v = f.values();
    double acc = 0.0;
    for (double x : v)
        acc += x;
    return acc * f.grid().dx();
}

double quadrature(const Field2D& f) {
    const auto& v = f.values();
    double acc = 0.0;
    for (double x : v)
        acc += x;
    return acc * f.grid().x.dx() * f.grid().dy();
}

double eval_at(const Field1D& f, double x) {
    const Grid1D& g = f.grid();
    const auto& c = f.coeffs();
    // Taking the real part yields the cosine convention at the Nyquist mode.
    double acc = c[0].real();
    for (int j = 1; j < g.n; ++j) {
        const cplx ph(std::cos(g.xi[j] * x), std::sin(g.xi[j] * x));
        acc += (c[j] * ph).real();
    }
    return acc;
}

double max_abs(const Field1D& f) {
    double m = 0.0;
    for (double v : f.values())
        m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Field2D& f) {
    double m = 0.0;
    for (double v : f.values())
        m = std::max(m, std::abs(v));
    return m;
}

Field1D y_mean(const Field2D& f) {
    const Grid2D& g = f.grid();
    const auto& c = f.coeffs();
    std::vector<cplx> prof(g.x.n);
    for (int ix = 0; ix < g.x.n; ++ix)
        prof[ix] = c[static_cast<size_t>(ix) * g.ny];
    auto xg = std::make_shared<const Grid1D>(g.x);
    return Field1D::of_coeffs(std::move(xg), std::move(prof));
}

Field2D project_offzero_y(const Field2D& f) {
    const Grid2D& g = f.grid();
    std::vector<cplx> c = f.coeffs();
    for (int ix = 0; ix < g.x.n; ++ix)
        c[static_cast<size_t>(ix) * g.ny] = 0.0;
    return Field2D::of_coeffs(f.grid_ptr(), std::move(c));
}

} // namespace chkp
