#pragma once

#include <complex>
#include <vector>

#include "chkp/grid.hpp"

namespace chkp {

using cplx = std::complex<double>;

/// Real periodic field on a Grid1D with lazily synchronized Fourier data.
///
/// Coefficients approximate Fourier-series coefficients of the interpolant,
///   f(x) = sum_n c_n exp(i*xi_n*x),
/// stored in FFT order.  Grid-spacing factors live in the norm/quadrature
/// routines, not in the transforms.
class Field1D {
  public:
    Field1D() = default;
    explicit Field1D(GridPtr grid);
    static Field1D of_values(GridPtr grid, std::vector<double> values);
    static Field1D of_coeffs(GridPtr grid, std::vector<cplx> coeffs);

    const Grid1D& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int size() const { return grid_ ? grid_->n : 0; }

    const std::vector<double>& values() const;
    const std::vector<cplx>& coeffs() const;

    /// Mutable access; invalidates the other representation.
    std::vector<double>& values_mut();
    std::vector<cplx>& coeffs_mut();

    Field1D& operator+=(const Field1D& other);
    Field1D& operator-=(const Field1D& other);
    Field1D& operator*=(double s);

  private:
    GridPtr grid_;
    mutable std::vector<double> vals_;
    mutable std::vector<cplx> coef_;
    mutable bool vals_ok_ = false;
    mutable bool coef_ok_ = false;

    void sync_values() const;
    void sync_coeffs() const;
};

Field1D operator+(Field1D a, const Field1D& b);
Field1D operator-(Field1D a, const Field1D& b);
Field1D operator*(double s, Field1D f);

/// Complex-valued counterpart of Field1D (no Hermitian symmetry implied).
/// Used for transverse Fourier coefficient profiles.
class CField1D {
  public:
    CField1D() = default;
    explicit CField1D(GridPtr grid);
    static CField1D of_values(GridPtr grid, std::vector<cplx> values);
    static CField1D of_coeffs(GridPtr grid, std::vector<cplx> coeffs);
    static CField1D of_real(const Field1D& f);

    const Grid1D& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int size() const { return grid_ ? grid_->n : 0; }

    const std::vector<cplx>& values() const;
    const std::vector<cplx>& coeffs() const;
    std::vector<cplx>& values_mut();
    std::vector<cplx>& coeffs_mut();

    CField1D conj() const;

    CField1D& operator+=(const CField1D& other);
    CField1D& operator-=(const CField1D& other);
    CField1D& operator*=(cplx s);

  private:
    GridPtr grid_;
    mutable std::vector<cplx> vals_;
    mutable std::vector<cplx> coef_;
    mutable bool vals_ok_ = false;
    mutable bool coef_ok_ = false;

    void sync_values() const;
    void sync_coeffs() const;
};

CField1D operator+(CField1D a, const CField1D& b);
CField1D operator-(CField1D a, const CField1D& b);
CField1D operator*(cplx s, CField1D f);

/// Real periodic field on a Grid2D, row-major (ix, iy) storage.
class Field2D {
  public:
    Field2D() = default;
    explicit Field2D(Grid2Ptr grid);
    static Field2D of_values(Grid2Ptr grid, std::vector<double> values);
    static Field2D of_coeffs(Grid2Ptr grid, std::vector<cplx> coeffs);

    const Grid2D& grid() const { return *grid_; }
    const Grid2Ptr& grid_ptr() const { return grid_; }
    int nx() const { return grid_ ? grid_->x.n : 0; }
    int ny() const { return grid_ ? grid_->ny : 0; }
    int size() const { return nx() * ny(); }
    int index(int ix, int iy) const { return ix * ny() + iy; }

    const std::vector<double>& values() const;
    const std::vector<cplx>& coeffs() const;
    std::vector<double>& values_mut();
    std::vector<cplx>& coeffs_mut();

    Field2D& operator+=(const Field2D& other);
    Field2D& operator-=(const Field2D& other);
    Field2D& operator*=(double s);

  private:
    Grid2Ptr grid_;
    mutable std::vector<double> vals_;
    mutable std::vector<cplx> coef_;
    mutable bool vals_ok_ = false;
    mutable bool coef_ok_ = false;

    void sync_values() const;
    void sync_coeffs() const;
};

Field2D operator+(Field2D a, const Field2D& b);
Field2D operator-(Field2D a, const Field2D& b);
Field2D operator*(double s, Field2D f);

} // namespace chkp
