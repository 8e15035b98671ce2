#include "chkp/operator_matrix.hpp"

#include "chkp/errors.hpp"
#include "chkp/fft.hpp"

namespace chkp {

SpectralBasis SpectralBasis::make(const Grid1D& g) {
    const int n = g.n;
    Eigen::MatrixXd b(n, 2);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        b(i, 0) = s;
        b(i, 1) = (i % 2 == 0) ? s : -s;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
    Eigen::MatrixXd q = qr.householderQ();
    SpectralBasis out;
    out.z = q.rightCols(n - 2);
    return out;
}

Eigen::MatrixXd circulant(const Grid1D& g, const std::vector<cplx>& symbol) {
    const int n = g.n;
    std::vector<cplx> kernel(symbol);
    fft::dft_1d(kernel.data(), n, +1);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            m(i, l) = kernel[(i - l + n) % n].real() / n;
    return m;
}

namespace {

std::vector<cplx> bake(const Grid1D& g, const Multiplier& mult) {
    std::vector<cplx> sym(g.n);
    for (int j = 0; j < g.n; ++j) {
        if (j == 0)
            sym[j] = (mult.zero_mode == ZeroMode::pass) ? mult.symbol(0.0) : cplx(0.0);
        else if (j == g.nyquist() && mult.zero_nyquist)
            sym[j] = 0.0;
        else
            sym[j] = mult.symbol(g.xi[j]);
    }
    return sym;
}

} // namespace

Eigen::MatrixXd x_derivative_matrix(const Grid1D& g) {
    return circulant(g, bake(g, Multiplier::x_derivative(1)));
}

Eigen::MatrixXd j_matrix(const Grid1D& g) {
    return circulant(g, bake(g, Multiplier::j_operator()));
}

Eigen::MatrixXd x_antiderivative2_matrix(const Grid1D& g) {
    return circulant(g, bake(g, Multiplier::x_antiderivative2(ZeroMode::zero)));
}

OperatorMatrix assemble_hc(const SolitaryWave& w) {
    const Grid1D& g = *w.grid;
    const Eigen::MatrixXd d = x_derivative_matrix(g);
    const auto& q = w.q.values();
    const auto& qpp = w.qpp.values();
    Eigen::VectorXd cmphi(g.n), pot(g.n);
    for (int i = 0; i < g.n; ++i) {
        cmphi[i] = w.c - q[i];
        pot[i] = qpp[i] - 3.0 * q[i] - 2.0 * w.kappa + w.c;
    }
    OperatorMatrix out;
    out.m = -d * cmphi.asDiagonal() * d;
    out.m += pot.asDiagonal();
    out.tag = OperatorTag::Hc;
    return out;
}

OperatorMatrix assemble_j(const SolitaryWave& w) {
    OperatorMatrix out;
    out.m = j_matrix(*w.grid);
    out.tag = OperatorTag::Jop;
    return out;
}

OperatorMatrix assemble_lk(const SolitaryWave& w, const SpectralBasis& basis, double k) {
    if (k == 0.0)
        throw ZeroFrequencyError("assemble_lk: d_x^{-2} requires k != 0; use assemble_hc");
    const OperatorMatrix hc = assemble_hc(w);
    Eigen::MatrixXd full = hc.m - k * k * x_antiderivative2_matrix(*w.grid);
    OperatorMatrix out;
    out.m = basis.reduce(full);
    out.tag = OperatorTag::Lk;
    out.k = k;
    return out;
}

OperatorMatrix assemble_ltilde(const SolitaryWave& w, const SpectralBasis& basis, double k) {
    const Grid1D& g = *w.grid;
    const Eigen::MatrixXd j = j_matrix(g);
    Eigen::MatrixXd lk = assemble_hc(w).m;
    if (k != 0.0)
        lk -= k * k * x_antiderivative2_matrix(g);
    OperatorMatrix out;
    out.m = basis.reduce(j * lk * j.transpose());
    out.tag = OperatorTag::LtildeK;
    out.k = k;
    return out;
}

OperatorMatrix assemble_ltilde_symbolic(const SolitaryWave& w, const SpectralBasis& basis,
                                        double k) {
    const Grid1D& g = *w.grid;
    std::vector<cplx> sym(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double xi = g.xi[j];
        const double h = 1.0 + xi * xi;
        sym[j] = n_infinity_symbol(w.c, w.kappa, xi, k) / (h * h);
    }
    Eigen::MatrixXd m = circulant(g, sym);

    // smoothing first derivative JD = (1 - d_x^2)^{-1} d_x^2, real symmetric
    std::vector<cplx> jd_sym(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double xi = g.xi[j];
        jd_sym[j] = (j == g.nyquist()) ? 0.0 : -xi * xi / (1.0 + xi * xi);
    }
    const Eigen::MatrixXd jd = circulant(g, jd_sym);
    const Eigen::MatrixXd j = j_matrix(g);

    const auto& q = w.q.values();
    const auto& qpp = w.qpp.values();
    Eigen::VectorXd phi(g.n), pot(g.n);
    for (int i = 0; i < g.n; ++i) {
        phi[i] = q[i];
        pot[i] = qpp[i] - 3.0 * q[i];
    }
    m -= jd * phi.asDiagonal() * jd;
    m += j * pot.asDiagonal() * j.transpose();

    OperatorMatrix out;
    out.m = basis.reduce(m);
    out.tag = OperatorTag::LtildeK;
    out.k = k;
    return out;
}

} // namespace chkp
