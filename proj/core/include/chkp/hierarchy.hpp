#pragma once

#include "chkp/mode_stack.hpp"
#include "chkp/spectrum.hpp"

namespace chkp {

/// J L(k) action on a single transverse-mode profile, split into the
/// constant-coefficient symbol (advanced exactly by the integrating
/// factor) and the phi-dependent remainder (explicit).  The quasilinear
/// term is applied through
///   (1-d_x^2)^{-1}(-d_x^2)[(c-phi) u_x] = (c-phi)u_x - (1-d_x^2)^{-1}[(c-phi)u_x],
/// so no derivative beyond the first is formed on the unknown.
class ModeOperator {
  public:
    ModeOperator(const SolitaryWave& w, double k);

    const std::vector<cplx>& symbol() const { return symbol_; }
    /// phi-dependent explicit part, in coefficient space
    void explicit_part(const std::vector<cplx>& in, std::vector<cplx>& out) const;
    /// full action J L(k) u (symbol + explicit), for tests and residuals
    CField1D apply(const CField1D& u) const;

    /// spectral-radius estimate of the explicit part (RK4 bound dt <= 2.8/rho)
    double explicit_radius() const { return rho_; }
    double k() const { return k_; }

  private:
    GridPtr grid_;
    double k_ = 0.0;
    std::vector<cplx> symbol_;      // i [c xi^3 + (c-2kappa) xi + k^2/xi] / (1+xi^2)
    std::vector<double> phi_;       // profile values
    std::vector<double> pot_;       // phi'' - 3 phi
    std::vector<cplx> dx_sym_;      // i xi (Nyquist zeroed)
    std::vector<cplx> smooth_sym_;  // -xi^2/(1+xi^2)
    std::vector<cplx> j_sym_;       // i xi/(1+xi^2)
    std::vector<int> dealias_keep_; // 2/3 mask
    double rho_ = 0.0;
};

/// Trajectory of one forced transverse mode,
///   d_t u_j = J L(j f0) u_j + J F_j,   u_j(0) = 0,
/// integrated by 4th-order integrating-factor RK.  The forcing is sampled
/// on the integrator's own node set (spacing dt/2: nodes and stage
/// midpoints), so the Duhamel quadrature never resamples.
struct ForcedModeResult {
    std::vector<double> times; // node times, spacing dt
    std::vector<CField1D> u;
};

ForcedModeResult solve_forced_mode(const SolitaryWave& w, double base_freq, int j,
                                   const std::vector<CField1D>& forcing_half_nodes, double T,
                                   double dt);

/// Coupled evolution of the correction orders v^1..v^M of the iterative
/// approximation v^ap = delta (v^0 + sum_k delta^k v^k).  The leading
/// order is the analytic eigenmode e^{sigma0 t} at stack index +-1; each
/// order k is forced by the quadratic interactions of orders j + l = k - 1
///   1/2 sum v^j_x v^l_x + sum v^j v^l_xx - 3/2 sum v^j v^l,
/// evaluated at the Runge-Kutta stage values (no interpolation).
class HierarchyEvolver {
  public:
    HierarchyEvolver(const SolitaryWave& w, const UnstableMode& mode, int order_m, double dt);

    void step();
    double time() const { return t_; }
    double dt() const { return dt_; }
    int order_m() const { return m_; }
    const UnstableMode& mode() const { return mode_; }

    /// analytic leading order at time t (entries +-1)
    ModeStack v0(double t) const;
    /// current state of order k, 1 <= k <= M
    const ModeStack& order(int k) const { return state_[k - 1]; }

    /// forcing stack for order k at time t from the given lower orders
    ModeStack forcing(int k, double t, const std::vector<ModeStack>& lower) const;

    /// delta (v0 + sum delta^k v^k) as one stack (kmax = M+1) at current time
    ModeStack vap_stack(double delta) const;
    Field2D vap_field(double delta, const Grid2Ptr& grid) const;

    /// residual G = -d_t v^ap + J L v^ap + J(quadratic(v^ap)) at the current
    /// state, with d_t v^ap taken from the integrator's dense output
    Field2D residual_g(double delta, const Grid2Ptr& grid) const;

  private:
    const SolitaryWave* wave_;
    UnstableMode mode_;
    int m_ = 0;
    double dt_ = 0.0;
    double t_ = 0.0;
    std::vector<ModeStack> state_;           // orders 1..M
    std::vector<ModeOperator> ops_;          // per |j| = 0..M+1
    std::vector<std::vector<cplx>> exp_full_; // e^{dt * symbol} per |j|
    std::vector<std::vector<cplx>> exp_half_;

    std::vector<ModeStack> eval(double t, const std::vector<ModeStack>& s) const;
    CField1D linear_action(int j, const CField1D& u) const;
};

/// Result of evolving the hierarchy to a horizon: per-order V-norm time
/// series, growth-rate fits and coarse stack snapshots.
struct HierarchyResult {
    UnstableMode mode;
    int order_m = 0;
    double dt = 0.0;
    std::vector<double> times;                    // every node
    std::vector<std::vector<double>> vnorm;       // [order 0..M][node]
    std::vector<double> fitted_rate;              // log-fit on [T/2, T], orders 0..M
    std::vector<double> snap_times;
    std::vector<std::vector<ModeStack>> snaps;    // [snap][order-1], orders 1..M

    static HierarchyResult leading_only(const UnstableMode& mode);
};

/// Evolve orders 1..M to time T.  v^k(0) = 0 exactly; support of v^k stays
/// within [-(k+1), k+1] structurally.
HierarchyResult build_hierarchy(const SolitaryWave& w, const UnstableMode& mode, int order_m,
                                double T, double dt, int snap_stride = 50);

/// v^ap = delta (v0 + sum delta^k v^k) at a stored snapshot time.
Field2D assemble_vap(const SolitaryWave& w, const HierarchyResult& h, double delta, double t,
                     const Grid2Ptr& grid);

} // namespace chkp
