#include "chkp/field.hpp"

#include <cassert>

#include "chkp/fft.hpp"

namespace chkp {

namespace {

// Nodes start at -Lx, so series coefficients pick up a (-1)^j twist
// relative to the raw DFT (j is the FFT index, Nx even).
void forward_1d(std::vector<cplx>& buf, int n) {
    fft::dft_1d(buf.data(), n, -1);
    const double inv = 1.0 / n;
    for (int j = 0; j < n; ++j)
        buf[j] *= (j % 2 == 0) ? inv : -inv;
}

void backward_1d(std::vector<cplx>& buf, int n) {
    for (int j = 1; j < n; j += 2)
        buf[j] = -buf[j];
    fft::dft_1d(buf.data(), n, +1);
}

// 2D: twist in x only; the y origin sits at 0.
void forward_2d(std::vector<cplx>& buf, int nx, int ny) {
    fft::dft_2d(buf.data(), nx, ny, -1);
    const double inv = 1.0 / (static_cast<double>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix) {
        const double s = (ix % 2 == 0) ? inv : -inv;
        for (int iy = 0; iy < ny; ++iy)
            buf[ix * ny + iy] *= s;
    }
}

void backward_2d(std::vector<cplx>& buf, int nx, int ny) {
    for (int ix = 1; ix < nx; ix += 2)
        for (int iy = 0; iy < ny; ++iy)
            buf[ix * ny + iy] = -buf[ix * ny + iy];
    fft::dft_2d(buf.data(), nx, ny, +1);
}

} // namespace

// ---------------------------------------------------------------- Field1D

Field1D::Field1D(GridPtr grid) : grid_(std::move(grid)) {
    vals_.assign(grid_->n, 0.0);
    coef_.assign(grid_->n, cplx(0.0));
    vals_ok_ = coef_ok_ = true;
}

Field1D Field1D::of_values(GridPtr grid, std::vector<double> values) {
    assert(static_cast<int>(values.size()) == grid->n);
    Field1D f;
    f.grid_ = std::move(grid);
    f.vals_ = std::move(values);
    f.vals_ok_ = true;
    return f;
}

Field1D Field1D::of_coeffs(GridPtr grid, std::vector<cplx> coeffs) {
    assert(static_cast<int>(coeffs.size()) == grid->n);
    Field1D f;
    f.grid_ = std::move(grid);
    f.coef_ = std::move(coeffs);
    f.coef_ok_ = true;
    return f;
}

void Field1D::sync_coeffs() const {
    if (coef_ok_)
        return;
    const int n = grid_->n;
    coef_.resize(n);
    for (int j = 0; j < n; ++j)
        coef_[j] = cplx(vals_[j], 0.0);
    forward_1d(coef_, n);
    coef_ok_ = true;
}

void Field1D::sync_values() const {
    if (vals_ok_)
        return;
    const int n = grid_->n;
    std::vector<cplx> buf = coef_;
    backward_1d(buf, n);
    vals_.resize(n);
    // Real-valuedness is enforced on materialization.
    for (int j = 0; j < n; ++j)
        vals_[j] = buf[j].real();
    vals_ok_ = true;
}

const std::vector<double>& Field1D::values() const {
    sync_values();
    return vals_;
}

const std::vector<cplx>& Field1D::coeffs() const {
    sync_coeffs();
    return coef_;
}

std::vector<double>& Field1D::values_mut() {
    sync_values();
    coef_ok_ = false;
    return vals_;
}

std::vector<cplx>& Field1D::coeffs_mut() {
    sync_coeffs();
    vals_ok_ = false;
    return coef_;
}

Field1D& Field1D::operator+=(const Field1D& other) {
    auto& c = coeffs_mut();
    const auto& oc = other.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        c[j] += oc[j];
    return *this;
}

Field1D& Field1D::operator-=(const Field1D& other) {
    auto& c = coeffs_mut();
    const auto& oc = other.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        c[j] -= oc[j];
    return *this;
}

Field1D& Field1D::operator*=(double s) {
    if (coef_ok_) {
        vals_ok_ = false;
        for (auto& c : coef_)
            c *= s;
    } else {
        for (auto& v : vals_)
            v *= s;
    }
    return *this;
}

Field1D operator+(Field1D a, const Field1D& b) { return a += b; }
Field1D operator-(Field1D a, const Field1D& b) { return a -= b; }
Field1D operator*(double s, Field1D f) { return f *= s; }

// --------------------------------------------------------------- CField1D

CField1D::CField1D(GridPtr grid) : grid_(std::move(grid)) {
    vals_.assign(grid_->n, cplx(0.0));
    coef_.assign(grid_->n, cplx(0.0));
    vals_ok_ = coef_ok_ = true;
}

CField1D CField1D::of_values(GridPtr grid, std::vector<cplx> values) {
    assert(static_cast<int>(values.size()) == grid->n);
    CField1D f;
    f.grid_ = std::move(grid);
    f.vals_ = std::move(values);
    f.vals_ok_ = true;
    return f;
}

CField1D CField1D::of_coeffs(GridPtr grid, std::vector<cplx> coeffs) {
    assert(static_cast<int>(coeffs.size()) == grid->n);
    CField1D f;
    f.grid_ = std::move(grid);
    f.coef_ = std::move(coeffs);
    f.coef_ok_ = true;
    return f;
}

CField1D CField1D::of_real(const Field1D& f) {
    const auto& c = f.coeffs();
    return of_coeffs(f.grid_ptr(), c);
}

void CField1D::sync_coeffs() const {
    if (coef_ok_)
        return;
    coef_ = vals_;
    forward_1d(coef_, grid_->n);
    coef_ok_ = true;
}

void CField1D::sync_values() const {
    if (vals_ok_)
        return;
    vals_ = coef_;
    backward_1d(vals_, grid_->n);
    vals_ok_ = true;
}

const std::vector<cplx>& CField1D::values() const {
    sync_values();
    return vals_;
}

const std::vector<cplx>& CField1D::coeffs() const {
    sync_coeffs();
    return coef_;
}

std::vector<cplx>& CField1D::values_mut() {
    sync_values();
    coef_ok_ = false;
    return vals_;
}

std::vector<cplx>& CField1D::coeffs_mut() {
    sync_coeffs();
    vals_ok_ = false;
    return coef_;
}

CField1D CField1D::conj() const {
    // conj in physical space = conjugate + frequency reversal in coefficients
    const auto& v = values();
    std::vector<cplx> out(v.size());
    for (size_t j = 0; j < v.size(); ++j)
        out[j] = std::conj(v[j]);
    return of_values(grid_, std::move(out));
}

CField1D& CField1D::operator+=(const CField1D& other) {
    auto& c = coeffs_mut();
    const auto& oc = other.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        c[j] += oc[j];
    return *this;
}

CField1D& CField1D::operator-=(const CField1D& other) {
    auto& c = coeffs_mut();
    const auto& oc = other.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        c[j] -= oc[j];
    return *this;
}

CField1D& CField1D::operator*=(cplx s) {
    auto& c = coeffs_mut();
    for (auto& x : c)
        x *= s;
    return *this;
}

CField1D operator+(CField1D a, const CField1D& b) { return a += b; }
CField1D operator-(CField1D a, const CField1D& b) { return a -= b; }
CField1D operator*(cplx s, CField1D f) { return f *= s; }

// ---------------------------------------------------------------- Field2D

Field2D::Field2D(Grid2Ptr grid) : grid_(std::move(grid)) {
    vals_.assign(static_cast<size_t>(grid_->x.n) * grid_->ny, 0.0);
    coef_.assign(vals_.size(), cplx(0.0));
    vals_ok_ = coef_ok_ = true;
}

Field2D Field2D::of_values(Grid2Ptr grid, std::vector<double> values) {
    assert(static_cast<int>(values.size()) == grid->x.n * grid->ny);
    Field2D f;
    f.grid_ = std::move(grid);
    f.vals_ = std::move(values);
    f.vals_ok_ = true;
    return f;
}

Field2D Field2D::of_coeffs(Grid2Ptr grid, std::vector<cplx> coeffs) {
    assert(static_cast<int>(coeffs.size()) == grid->x.n * grid->ny);
    Field2D f;
    f.grid_ = std::move(grid);
    f.coef_ = std::move(coeffs);
    f.coef_ok_ = true;
    return f;
}

void Field2D::sync_coeffs() const {
    if (coef_ok_)
        return;
    coef_.resize(vals_.size());
    for (size_t j = 0; j < vals_.size(); ++j)
        coef_[j] = cplx(vals_[j], 0.0);
    forward_2d(coef_, grid_->x.n, grid_->ny);
    coef_ok_ = true;
}

void Field2D::sync_values() const {
    if (vals_ok_)
        return;
    std::vector<cplx> buf = coef_;
    backward_2d(buf, grid_->x.n, grid_->ny);
    vals_.resize(buf.size());
    for (size_t j = 0; j < buf.size(); ++j)
        vals_[j] = buf[j].real();
    vals_ok_ = true;
}

const std::vector<double>& Field2D::values() const {
    sync_values();
    return vals_;
}

const std::vector<cplx>& Field2D::coeffs() const {
    sync_coeffs();
    return coef_;
}

std::vector<double>& Field2D::values_mut() {
    sync_values();
    coef_ok_ = false;
    return vals_;
}

std::vector<cplx>& Field2D::coeffs_mut() {
    sync_coeffs();
    vals_ok_ = false;
    return coef_;
}

Field2D& Field2D::operator+=(const Field2D& other) {
    auto& c = coeffs_mut();
    const auto& oc = other.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        c[j] += oc[j];
    return *this;
}

Field2D& Field2D::operator-=(const Field2D& other) {
    auto& c = coeffs_mut();
    const auto& oc = other.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        c[j] -= oc[j];
    return *this;
}

Field2D& Field2D::operator*=(double s) {
    if (coef_ok_) {
        vals_ok_ = false;
        for (auto& c : coef_)
            c *= s;
    } else {
        for (auto& v : vals_)
            v *= s;
    }
    return *this;
}

Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
Field2D operator*(double s, Field2D f) { return f *= s; }

} // namespace chkp
