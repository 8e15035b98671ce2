#pragma once

#include <functional>

#include "chkp/field.hpp"

namespace chkp {

/// Policy for the xi = 0 coefficient under a Fourier multiplier.
enum class ZeroMode {
    zero,   // annihilate the mean
    pass,   // apply the (finite) symbol value
    reject, // throw NonzeroMeanError when the mean carries data
};

/// Fourier multiplier in the x direction.  Symbols of real operators
/// satisfy m(-xi) = conj(m(xi)); odd symbols zero the unpaired Nyquist mode.
struct Multiplier {
    std::function<cplx(double)> symbol;
    ZeroMode zero_mode = ZeroMode::pass;
    bool zero_nyquist = false;

    static Multiplier x_derivative(int order = 1);
    static Multiplier helmholtz_inverse(); // (1 - d_x^2)^{-1}
    static Multiplier j_operator();        // (1 - d_x^2)^{-1} d_x
    static Multiplier x_antiderivative2(ZeroMode policy = ZeroMode::reject);
};

// Relative amplitude above which a rejected zero mode is an error.
inline constexpr double kZeroModeTol = 1e-12;

Field1D apply(const Multiplier& m, const Field1D& f);
CField1D apply(const Multiplier& m, const CField1D& f);
/// Apply an x multiplier to every transverse mode of a 2D field.
Field2D apply_x(const Multiplier& m, const Field2D& f);

Field1D helmholtz_inverse(const Field1D& f);
Field2D helmholtz_inverse(const Field2D& f);
Field1D apply_j(const Field1D& f);
CField1D apply_j(const CField1D& f);
Field2D apply_j(const Field2D& f);
Field1D x_derivative(const Field1D& f, int order = 1);
CField1D x_derivative(const CField1D& f, int order = 1);
Field2D x_derivative(const Field2D& f, int order = 1);
Field1D x_antiderivative2(const Field1D& f, ZeroMode policy = ZeroMode::reject);
Field2D x_antiderivative2(const Field2D& f, ZeroMode policy = ZeroMode::reject);
Field2D y_derivative2(const Field2D& f);

/// 2/3-rule truncation for quadratic nonlinearities; idempotent.
Field1D dealias(const Field1D& f);
CField1D dealias(const CField1D& f);
Field2D dealias(const Field2D& f);

/// Parseval-based H^s norm, scaled to match the continuum integral at s = 0.
double sobolev_norm(const Field1D& f, double s);
double sobolev_norm(const CField1D& f, double s);
double sobolev_norm(const Field2D& f, double s);

/// L^2 inner products (real for real fields).
double inner(const Field1D& a, const Field1D& b);
double inner(const Field2D& a, const Field2D& b);
cplx inner(const CField1D& a, const CField1D& b);

/// Trapezoidal quadrature of the collocation values (spectrally exact
/// for periodic data).
double quadrature(const Field1D& f);
double quadrature(const Field2D& f);

/// Evaluate the trigonometric interpolant at an arbitrary point.
double eval_at(const Field1D& f, double x);

double max_abs(const Field1D& f);
double max_abs(const Field2D& f);

/// y-average of a 2D field as a 1D profile (the m = 0 transverse mode).
Field1D y_mean(const Field2D& f);

/// Remove the transverse zero mode: u - (1/a) int u dy.  Orthogonal
/// projection, idempotent.
Field2D project_offzero_y(const Field2D& f);

} // namespace chkp
