#include "chkp/linalg.hpp"

#include <lapacke.h>

#include "chkp/errors.hpp"

namespace chkp::linalg {

SymEig sym_eig(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    SymEig out;
    out.vectors = 0.5 * (a + a.transpose());
    out.values.resize(n);
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                    out.values.data());
    if (info != 0)
        throw ConvergenceError("dsyevd failed, info = " + std::to_string(info));
    return out;
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd work = 0.5 * (a + a.transpose());
    Eigen::VectorXd values(n);
    const int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data());
    if (info != 0)
        throw ConvergenceError("dsyevd failed, info = " + std::to_string(info));
    return values;
}

NonsymEig nonsym_eig(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd work = a;
    Eigen::VectorXd wr(n), wi(n);
    Eigen::MatrixXd vr(n, n);
    const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n, wr.data(),
                                   wi.data(), nullptr, 1, vr.data(), n);
    if (info != 0)
        throw ConvergenceError("dgeev failed, info = " + std::to_string(info));

    NonsymEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = std::complex<double>(wr[j], wi[j]);
        if (wi[j] > 0.0) {
            // conjugate pair packed as (re, im) column pair
            out.vectors.col(j) = vr.col(j) + std::complex<double>(0, 1) * vr.col(j + 1);
        } else if (wi[j] < 0.0) {
            out.vectors.col(j) = vr.col(j - 1) - std::complex<double>(0, 1) * vr.col(j);
        } else {
            out.vectors.col(j) = vr.col(j).cast<std::complex<double>>();
        }
        const double nrm = out.vectors.col(j).norm();
        if (nrm > 0.0)
            out.vectors.col(j) /= nrm;
    }
    return out;
}

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1 || std::abs(coeffs[deg]) == 0.0)
        throw ParameterError("poly_roots: degenerate leading coefficient");
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("poly_roots: companion eigensolve failed");
    std::vector<std::complex<double>> roots(deg);
    for (int i = 0; i < deg; ++i)
        roots[i] = es.eigenvalues()[i];
    return roots;
}

} // namespace chkp::linalg
