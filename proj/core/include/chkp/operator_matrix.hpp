#pragma once

#include <Eigen/Dense>

#include "chkp/solitary_wave.hpp"

namespace chkp {

enum class OperatorTag { Hc, Lk, Jop, LtildeK, nK };

/// Dense discretization of one of the linearized operators over the
/// collocation basis of a Grid1D.  Hc and Jop act on the full grid;
/// Lk and LtildeK are restricted to the mean- and Nyquist-free subspace
/// (dimension Nx - 2), where d_x^{-2} is well defined.
struct OperatorMatrix {
    Eigen::MatrixXd m;
    OperatorTag tag = OperatorTag::Hc;
    double k = 0.0;

    /// relative Frobenius defect from (skew-)symmetry
    double hermiticity_defect() const { return (m - m.transpose()).norm() / m.norm(); }
    double skewness_defect() const { return (m + m.transpose()).norm() / m.norm(); }
};

/// Orthonormal basis of the subspace orthogonal to the constant and the
/// Nyquist (alternating-sign) directions.  Operators built from the
/// spectral symbols leave this subspace invariant, so restriction is exact.
struct SpectralBasis {
    Eigen::MatrixXd z; // n x (n-2), columns orthonormal

    static SpectralBasis make(const Grid1D& g);
    Eigen::MatrixXd reduce(const Eigen::MatrixXd& full) const {
        return z.transpose() * full * z;
    }
};

/// Circulant matrix of a Fourier multiplier (real operator symbols only).
Eigen::MatrixXd circulant(const Grid1D& g, const std::vector<cplx>& symbol);

/// Spectral differentiation matrix (Nyquist zeroed).
Eigen::MatrixXd x_derivative_matrix(const Grid1D& g);
/// J = (1 - d_x^2)^{-1} d_x; real antisymmetric.
Eigen::MatrixXd j_matrix(const Grid1D& g);
/// d_x^{-2} with the zero mode dropped; real symmetric.
Eigen::MatrixXd x_antiderivative2_matrix(const Grid1D& g);

/// H_c = -d_x((c - phi) d_x) + phi'' - 3 phi - 2 kappa + c on the full grid.
OperatorMatrix assemble_hc(const SolitaryWave& w);

/// J on the full grid.
OperatorMatrix assemble_j(const SolitaryWave& w);

/// L(k) = H_c - k^2 d_x^{-2} on the reduced subspace; k must be nonzero.
OperatorMatrix assemble_lk(const SolitaryWave& w, const SpectralBasis& basis, double k);

/// Ltilde(k) = J L(k) J^* on the reduced subspace (numerical triple
/// product).  k = 0 drops the transverse term exactly.
OperatorMatrix assemble_ltilde(const SolitaryWave& w, const SpectralBasis& basis, double k);

/// Same operator composed at the symbol level,
///   Ltilde(k) = circ[(c xi^4 + (c-2k) xi^2 + k^2)/(1+xi^2)^2]
///             - (JD) diag(phi) (JD) + J diag(phi'' - 3 phi) J^T,
/// used as the dual-construction oracle.
OperatorMatrix assemble_ltilde_symbolic(const SolitaryWave& w, const SpectralBasis& basis,
                                        double k);

/// Symbol of the limiting operator n_inf(k) = c d_x^4 - (c - 2 kappa) d_x^2 + k^2.
inline double n_infinity_symbol(double c, double kappa, double xi, double k) {
    const double x2 = xi * xi;
    return c * x2 * x2 + (c - 2.0 * kappa) * x2 + k * k;
}

} // namespace chkp
