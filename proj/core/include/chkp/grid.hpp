#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "chkp/errors.hpp"

namespace chkp {

/// Uniform periodic collocation grid on [-Lx, Lx).
///
/// Wavenumbers are stored in FFT order: xi[j] = pi*n/Lx with n = j for
/// j < Nx/2 and n = j - Nx otherwise.  The set is symmetric about zero
/// except for the single Nyquist mode n = -Nx/2.
struct Grid1D {
    double half_length = 0.0; // Lx
    int n = 0;                // Nx, a power of two
    std::vector<double> nodes;
    std::vector<double> xi;

    static Grid1D make(double half_length, int n) {
        if (half_length <= 0.0)
            throw ParameterError("Grid1D: half_length must be positive");
        if (n < 4 || (n & (n - 1)) != 0)
            throw ParameterError("Grid1D: node count must be a power of two >= 4");
        Grid1D g;
        g.half_length = half_length;
        g.n = n;
        g.nodes.resize(n);
        g.xi.resize(n);
        const double dx = 2.0 * half_length / n;
        const double dxi = std::numbers::pi / half_length;
        for (int j = 0; j < n; ++j) {
            g.nodes[j] = -half_length + j * dx;
            const int m = (j < n / 2) ? j : j - n;
            g.xi[j] = dxi * m;
        }
        return g;
    }

    double dx() const { return 2.0 * half_length / n; }
    int nyquist() const { return n / 2; } // FFT index of the unpaired mode
};

/// Tensor grid on [-Lx, Lx) x T_a with transverse period a = 2*pi/k0.
///
/// Transverse wavenumbers are eta_m = m*k0 so that a*k0 = 2*pi holds exactly.
struct Grid2D {
    Grid1D x;
    double k0 = 0.0; // base transverse frequency
    int ny = 0;      // even, >= 4
    std::vector<double> ynodes;
    std::vector<double> eta;

    static Grid2D make(Grid1D x_grid, double k0, int ny) {
        if (k0 <= 0.0)
            throw ParameterError("Grid2D: k0 must be positive");
        if (ny < 4 || ny % 2 != 0)
            throw ParameterError("Grid2D: ny must be even and >= 4");
        Grid2D g;
        g.x = std::move(x_grid);
        g.k0 = k0;
        g.ny = ny;
        g.ynodes.resize(ny);
        g.eta.resize(ny);
        const double a = g.period();
        for (int q = 0; q < ny; ++q) {
            g.ynodes[q] = q * a / ny;
            const int m = (q < ny / 2) ? q : q - ny;
            g.eta[q] = m * k0;
        }
        return g;
    }

    double period() const { return 2.0 * std::numbers::pi / k0; }
    double dy() const { return period() / ny; }
};

using GridPtr = std::shared_ptr<const Grid1D>;
using Grid2Ptr = std::shared_ptr<const Grid2D>;

inline GridPtr make_grid(double half_length, int n) {
    return std::make_shared<const Grid1D>(Grid1D::make(half_length, n));
}

inline Grid2Ptr make_grid2(GridPtr x, double k0, int ny) {
    return std::make_shared<const Grid2D>(Grid2D::make(*x, k0, ny));
}

} // namespace chkp
