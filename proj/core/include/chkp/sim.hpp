#pragma once

#include "chkp/solitary_wave.hpp"

namespace chkp {

struct SimOptions {
    double dt = 2e-3;
    bool dealias_products = true;
    double blowup_factor = 50.0; // BlowupError when max|u_x| > factor*(c - 2 kappa)
    double epsilon_visc = 0.0;   // optional (1 - d_x^2 + eps Delta^2)^{-1} d_x regularization
};

struct SimState {
    double t = 0.0;
    Field2D field; // u in the moving frame, or the perturbation v
    double c = 0.0;
    long steps = 0;
};

/// 4th-order integrating-factor Runge-Kutta stepper for the moving-frame
/// flow or the perturbation flow about the line wave.  The constant-
/// coefficient symbol is advanced exactly in Fourier space; the
/// phi-dependent and quadratic terms are explicit, with the quasilinear
/// product applied through the smoothing identity so no derivative beyond
/// the first acts on the state.  The zero x-mean of every transverse mode
/// is checked before and re-imposed after each step.
class Stepper {
  public:
    enum class Form {
        moving_frame, // u_t = J(u_x^2/2 + u u_xx - 2k u - 3/2 u^2 + dx^-2 dyy u + c(u - u_xx))
        perturbation, // v_t = J L v + J(v_x^2/2 + v v_xx - 3/2 v^2)
    };

    Stepper(const SolitaryWave& w, Grid2Ptr grid, Form form, SimOptions opts = {});

    void step(SimState& s);
    /// full tendency (linear symbol + explicit terms), for tests/diagnostics
    Field2D rhs(const Field2D& f);

    double dt() const { return opts_.dt; }
    const SimOptions& options() const { return opts_; }

  private:
    Grid2Ptr grid_;
    Form form_;
    SimOptions opts_;
    double c_ = 0.0, kappa_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<double> phi_rot_, pot_rot_; // profile and phi''-3phi, rotated order
    std::vector<cplx> lambda_, efull_, ehalf_;
    std::vector<cplx> jsym_, smooth_, dxsym_; // i xi H, -xi^2 H, i xi
    std::vector<double> mask_;                // 2/3 dealias mask (1/0)
    double guard_ = 0.0;
    // scratch
    std::vector<cplx> p1_, p2_, sa_, sb_, n1_, n2_, n3_, n4_, tmp_;

    void nonlinear(const std::vector<cplx>& in, std::vector<cplx>& out, bool check);
    void check_constraint(const std::vector<cplx>& c) const;
};

Field2D rhs_moving_frame(const SolitaryWave& w, const Field2D& u, SimOptions opts = {});
Field2D rhs_perturbation(const SolitaryWave& w, const Field2D& v, SimOptions opts = {});

/// Conserved functionals of the flow:
///   H = -1/2 int [u^3 + u u_x^2 + 2 kappa u^2 - (dx^-1 dy u)^2],
///   Q =  1/2 int [u^2 + u_x^2].
std::pair<double, double> invariants(const Field2D& u, double kappa);

struct InvariantTrace {
    std::vector<double> t, h, q;
};

/// w = u - phi - v^ap with Sobolev-norm diagnostics.
struct ErrorField {
    Field2D w;
    double norm0 = 0.0, norm1 = 0.0, norm2 = 0.0;
};

ErrorField error_field(const Field2D& u, const SolitaryWave& wave, const Field2D& vap);

/// Broadcast the line wave onto a 2D grid (m = 0 transverse mode).
Field2D broadcast_wave(const SolitaryWave& w, const Grid2Ptr& grid);

} // namespace chkp
