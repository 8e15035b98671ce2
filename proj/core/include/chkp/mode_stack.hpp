#pragma once

#include "chkp/field.hpp"
#include "chkp/spectral.hpp"

namespace chkp {

/// Truncated transverse Fourier representation of a real field,
///   u(x, y) = sum_{j=-K}^{K} u_j(x) exp(i j f0 y),   f0 = m0 * k0.
/// Hermitian pairing u_{-j} = conj(u_j) is maintained structurally:
/// only j >= 0 is stored.
class ModeStack {
  public:
    ModeStack() = default;
    ModeStack(GridPtr grid, double base_freq, int kmax);

    int kmax() const { return kmax_; }
    double base_freq() const { return base_freq_; }
    const GridPtr& grid_ptr() const { return grid_; }

    /// entry(j) for any |j| <= kmax; negative j returns the conjugate.
    CField1D entry(int j) const;
    const CField1D& entry_nonneg(int j) const;
    void set_entry(int j, CField1D f); // j >= 0; j = 0 is made self-conjugate

    /// support = largest |j| with a nonzero profile
    int support() const;

    /// |u|_{V_K^s} = max_j |u_j|_s
    double vnorm(double s = 0.0) const;

    ModeStack& operator+=(const ModeStack& other);
    ModeStack& scale(double s);

  private:
    GridPtr grid_;
    double base_freq_ = 0.0;
    int kmax_ = 0;
    std::vector<CField1D> entries_; // index j = 0..kmax
};

enum class ProductForm {
    grad_grad, // a_x * b_x
    id_dxx,    // a * b_xx
    id_id,     // a * b
};

/// Transverse-index convolution out_n = sum_{j+l=n} form(a_j, b_l) with
/// every x product dealiased.  Throws TruncationError when the combined
/// support cannot fit in out_kmax.
ModeStack mode_product(const ModeStack& a, const ModeStack& b, ProductForm form, int out_kmax);

/// Synthesize onto a 2D grid whose base frequency k0 divides the stack's
/// base frequency (stack index j lands on transverse mode j * f0 / k0).
Field2D synthesize(const ModeStack& stack, const Grid2Ptr& grid);

} // namespace chkp
