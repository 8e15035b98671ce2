#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace chkp::linalg {

struct SymEig {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns
};

/// Symmetric dense eigensolve (LAPACK dsyevd).  The input is symmetrized
/// as (A + A^T)/2.
SymEig sym_eig(const Eigen::MatrixXd& a);
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a);

struct NonsymEig {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors; // right eigenvectors, unit 2-norm columns
};

/// General real dense eigensolve (LAPACK dgeev).
/// Throws ConvergenceError when the QR iteration fails.
NonsymEig nonsym_eig(const Eigen::MatrixXd& a);

/// Roots of sum_i coeffs[i] * z^i (ascending degree) via the companion
/// matrix.  Leading coefficient must be nonzero.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs);

} // namespace chkp::linalg
