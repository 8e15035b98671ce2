#include "chkp/hierarchy.hpp"

#include <cmath>

#include "chkp/errors.hpp"
#include "chkp/fft.hpp"

namespace chkp {

namespace {

// linear least squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

ModeOperator::ModeOperator(const SolitaryWave& w, double k) : grid_(w.grid), k_(k) {
    const Grid1D& g = *grid_;
    const int n = g.n;
    symbol_.resize(n);
    dx_sym_.resize(n);
    smooth_sym_.resize(n);
    j_sym_.resize(n);
    dealias_keep_.resize(n);
    for (int j = 0; j < n; ++j) {
        const double xi = g.xi[j];
        const double h = 1.0 + xi * xi;
        const bool nyq = (j == g.nyquist());
        const int mode = (j < n / 2) ? j : j - n;
        dealias_keep_[j] = std::abs(mode) <= n / 3;
        if (j == 0 || nyq) {
            symbol_[j] = 0.0;
            dx_sym_[j] = 0.0;
            j_sym_[j] = 0.0;
            smooth_sym_[j] = (j == 0) ? 0.0 : cplx(-xi * xi / h);
        } else {
            symbol_[j] = cplx(0.0, (w.c * xi * xi * xi + (w.c - 2.0 * w.kappa) * xi + k * k / xi) / h);
            dx_sym_[j] = cplx(0.0, xi);
            j_sym_[j] = cplx(0.0, xi / h);
            smooth_sym_[j] = cplx(-xi * xi / h);
        }
    }
    // Stored in index order rotated by n/2: the raw DFT of the twisted
    // series coefficients yields physical values in exactly this order,
    // so pointwise products below need no twist handling.
    const auto& q = w.q.values();
    const auto& qpp = w.qpp.values();
    phi_.resize(n);
    pot_.resize(n);
    for (int i = 0; i < n; ++i) {
        const int r = (i + n / 2) % n;
        phi_[i] = q[r];
        pot_[i] = qpp[r] - 3.0 * q[r];
    }

    double phimax = 0.0, potmax = 0.0, ximax = 0.0;
    for (int i = 0; i < n; ++i) {
        phimax = std::max(phimax, std::abs(phi_[i]));
        potmax = std::max(potmax, std::abs(pot_[i]));
    }
    for (int j = 0; j < n; ++j)
        ximax = std::max(ximax, std::abs(g.xi[j]));
    rho_ = phimax * ximax + 0.5 * potmax;
}

void ModeOperator::explicit_part(const std::vector<cplx>& in, std::vector<cplx>& out) const {
    const int n = grid_->n;
    std::vector<cplx> u(in), ux(n);
    for (int j = 0; j < n; ++j)
        ux[j] = in[j] * dx_sym_[j];
    fft::dft_1d(u.data(), n, +1); // values in rotated order, matching phi_
    fft::dft_1d(ux.data(), n, +1);
    std::vector<cplx> g(n), h(n);
    for (int i = 0; i < n; ++i) {
        g[i] = phi_[i] * ux[i];
        h[i] = pot_[i] * u[i];
    }
    fft::dft_1d(g.data(), n, -1);
    fft::dft_1d(h.data(), n, -1);
    const double inv = 1.0 / n;
    out.resize(n);
    for (int j = 0; j < n; ++j) {
        if (!dealias_keep_[j]) {
            out[j] = 0.0;
            continue;
        }
        out[j] = inv * (smooth_sym_[j] * g[j] + j_sym_[j] * h[j]);
    }
}

CField1D ModeOperator::apply(const CField1D& u) const {
    const auto& c = u.coeffs();
    std::vector<cplx> out;
    explicit_part(c, out);
    for (int j = 0; j < grid_->n; ++j)
        out[j] += symbol_[j] * c[j];
    return CField1D::of_coeffs(u.grid_ptr(), std::move(out));
}

namespace {

std::vector<cplx> exp_table(const std::vector<cplx>& symbol, double dt) {
    std::vector<cplx> e(symbol.size());
    for (size_t j = 0; j < symbol.size(); ++j)
        e[j] = std::exp(dt * symbol[j]);
    return e;
}

void require_step_stable(const ModeOperator& op, double dt) {
    if (dt * op.explicit_radius() > 2.8)
        throw StabilityError("mode integrator: dt exceeds the RK4 stability bound "
                             "for the explicit part");
}

} // namespace

ForcedModeResult solve_forced_mode(const SolitaryWave& w, double base_freq, int j,
                                   const std::vector<CField1D>& forcing_half_nodes, double T,
                                   double dt) {
    const int nsteps = static_cast<int>(std::llround(T / dt));
    if (nsteps < 1 || std::abs(nsteps * dt - T) > 1e-9 * std::max(1.0, T))
        throw ParameterError("solve_forced_mode: T must be an integer number of steps");
    if (static_cast<int>(forcing_half_nodes.size()) < 2 * nsteps + 1)
        throw ParameterError("solve_forced_mode: forcing series must cover nodes and "
                             "stage midpoints (2*nsteps + 1 samples)");

    const double k = std::abs(j) * base_freq;
    ModeOperator op(w, k);
    require_step_stable(op, dt);
    const auto efull = exp_table(op.symbol(), dt);
    const auto ehalf = exp_table(op.symbol(), 0.5 * dt);
    const Grid1D& g = *w.grid;
    const int n = g.n;

    // J applied to the sampled forcing
    std::vector<std::vector<cplx>> jf(forcing_half_nodes.size());
    for (size_t i = 0; i < forcing_half_nodes.size(); ++i) {
        jf[i] = forcing_half_nodes[i].coeffs();
        for (int q = 0; q < n; ++q) {
            const double xi = g.xi[q];
            jf[i][q] *= (q == 0 || q == g.nyquist()) ? cplx(0.0)
                                                     : cplx(0.0, xi / (1.0 + xi * xi));
        }
    }

    ForcedModeResult res;
    res.times.resize(nsteps + 1);
    res.u.reserve(nsteps + 1);
    std::vector<cplx> u(n, cplx(0.0));
    res.times[0] = 0.0;
    res.u.push_back(CField1D::of_coeffs(w.grid, u));

    std::vector<cplx> n1(n), n2(n), n3(n), n4(n), tmp(n);
    auto eval = [&](const std::vector<cplx>& state, int half_index, std::vector<cplx>& out) {
        op.explicit_part(state, out);
        const auto& f = jf[half_index];
        for (int q = 0; q < n; ++q)
            out[q] += f[q];
    };

    for (int s = 0; s < nsteps; ++s) {
        eval(u, 2 * s, n1);
        for (int q = 0; q < n; ++q)
            tmp[q] = ehalf[q] * (u[q] + 0.5 * dt * n1[q]);
        eval(tmp, 2 * s + 1, n2);
        for (int q = 0; q < n; ++q)
            tmp[q] = ehalf[q] * u[q] + 0.5 * dt * n2[q];
        eval(tmp, 2 * s + 1, n3);
        for (int q = 0; q < n; ++q)
            tmp[q] = efull[q] * u[q] + dt * ehalf[q] * n3[q];
        eval(tmp, 2 * s + 2, n4);
        for (int q = 0; q < n; ++q)
            u[q] = efull[q] * u[q] +
                   dt / 6.0 * (efull[q] * n1[q] + 2.0 * ehalf[q] * (n2[q] + n3[q]) + n4[q]);
        res.times[s + 1] = (s + 1) * dt;
        res.u.push_back(CField1D::of_coeffs(w.grid, u));
    }
    return res;
}

// ------------------------------------------------------------ HierarchyEvolver

HierarchyEvolver::HierarchyEvolver(const SolitaryWave& w, const UnstableMode& mode, int order_m,
                                   double dt)
    : wave_(&w), mode_(mode), m_(order_m), dt_(dt) {
    if (order_m < 0)
        throw ParameterError("HierarchyEvolver: order must be >= 0");
    const double f0 = mode.m0 * mode.k0;
    for (int j = 0; j <= m_ + 1; ++j) {
        ops_.emplace_back(w, j * f0);
        require_step_stable(ops_.back(), dt);
        exp_full_.push_back(exp_table(ops_.back().symbol(), dt));
        exp_half_.push_back(exp_table(ops_.back().symbol(), 0.5 * dt));
    }
    for (int k = 1; k <= m_; ++k)
        state_.emplace_back(w.grid, f0, k + 1);
}

ModeStack HierarchyEvolver::v0(double t) const {
    ModeStack s(wave_->grid, mode_.m0 * mode_.k0, 1);
    s.set_entry(1, std::exp(mode_.sigma0 * t) * mode_.u0);
    return s;
}

ModeStack HierarchyEvolver::forcing(int k, double t, const std::vector<ModeStack>& lower) const {
    const double f0 = mode_.m0 * mode_.k0;
    ModeStack f(wave_->grid, f0, k + 1);
    const ModeStack lead = v0(t);
    auto order_ref = [&](int idx) -> const ModeStack& {
        return idx == 0 ? lead : lower[idx - 1];
    };
    for (int j = 0; j <= k - 1; ++j) {
        const int l = k - 1 - j;
        const ModeStack& a = order_ref(j);
        const ModeStack& b = order_ref(l);
        ModeStack gg = mode_product(a, b, ProductForm::grad_grad, k + 1);
        ModeStack dd = mode_product(a, b, ProductForm::id_dxx, k + 1);
        ModeStack ii = mode_product(a, b, ProductForm::id_id, k + 1);
        gg.scale(0.5);
        ii.scale(-1.5);
        f += gg;
        f += dd;
        f += ii;
    }
    return f;
}

CField1D HierarchyEvolver::linear_action(int j, const CField1D& u) const {
    return ops_[std::abs(j)].apply(u);
}

std::vector<ModeStack> HierarchyEvolver::eval(double t, const std::vector<ModeStack>& s) const {
    const double f0 = mode_.m0 * mode_.k0;
    const Grid1D& g = *wave_->grid;
    std::vector<ModeStack> out;
    out.reserve(m_);
    for (int k = 1; k <= m_; ++k) {
        ModeStack f = forcing(k, t, s);
        ModeStack tend(wave_->grid, f0, k + 1);
        for (int j = 0; j <= k + 1; ++j) {
            const ModeOperator& op = ops_[j];
            const auto& uc = s[k - 1].entry_nonneg(j).coeffs();
            const auto& fc = f.entry_nonneg(j).coeffs();
            std::vector<cplx> tc;
            op.explicit_part(uc, tc);
            for (int q = 0; q < g.n; ++q) {
                const double xi = g.xi[q];
                const cplx jsym = (q == 0 || q == g.nyquist())
                                      ? cplx(0.0)
                                      : cplx(0.0, xi / (1.0 + xi * xi));
                tc[q] += op.symbol()[q] * uc[q] + jsym * fc[q];
            }
            tend.set_entry(j, CField1D::of_coeffs(wave_->grid, std::move(tc)));
        }
        out.push_back(std::move(tend));
    }
    return out;
}

void HierarchyEvolver::step() {
    if (m_ == 0) {
        t_ += dt_;
        return;
    }
    // IF-RK4 with per-mode phase factors:
    //   u+ = E u + dt/6 (E n1 + 2 E2 (n2 + n3) + n4)
    auto combine = [&](const std::vector<ModeStack>& base, bool full_on_base,
                       const std::vector<ModeStack>& incr, double h,
                       bool half_on_incr) {
        std::vector<ModeStack> out = base;
        for (size_t k = 0; k < out.size(); ++k) {
            for (int j = 0; j <= out[k].kmax(); ++j) {
                const auto& uc = base[k].entry_nonneg(j).coeffs();
                const auto& nc = incr[k].entry_nonneg(j).coeffs();
                const auto& eb = full_on_base ? exp_full_[j] : exp_half_[j];
                std::vector<cplx> yc(uc.size());
                for (size_t q = 0; q < uc.size(); ++q) {
                    const cplx add = half_on_incr ? exp_half_[j][q] * nc[q] : nc[q];
                    yc[q] = eb[q] * uc[q] + h * add;
                }
                out[k].set_entry(j, CField1D::of_coeffs(out[k].grid_ptr(), std::move(yc)));
            }
        }
        return out;
    };

    const std::vector<ModeStack> n1 = eval(t_, state_);
    // E2 (u + dt/2 n1) = E2 u + dt/2 E2 n1
    const std::vector<ModeStack> n2 =
        eval(t_ + 0.5 * dt_, combine(state_, false, n1, 0.5 * dt_, true));
    // E2 u + dt/2 n2
    const std::vector<ModeStack> n3 =
        eval(t_ + 0.5 * dt_, combine(state_, false, n2, 0.5 * dt_, false));
    // E u + dt E2 n3
    const std::vector<ModeStack> n4 = eval(t_ + dt_, combine(state_, true, n3, dt_, true));

    for (size_t k = 0; k < state_.size(); ++k) {
        for (int j = 0; j <= state_[k].kmax(); ++j) {
            const auto& uc = state_[k].entry_nonneg(j).coeffs();
            const auto& c1 = n1[k].entry_nonneg(j).coeffs();
            const auto& c2 = n2[k].entry_nonneg(j).coeffs();
            const auto& c3 = n3[k].entry_nonneg(j).coeffs();
            const auto& c4 = n4[k].entry_nonneg(j).coeffs();
            std::vector<cplx> yc(uc.size());
            for (size_t q = 0; q < uc.size(); ++q)
                yc[q] = exp_full_[j][q] * uc[q] +
                        dt_ / 6.0 *
                            (exp_full_[j][q] * c1[q] + 2.0 * exp_half_[j][q] * (c2[q] + c3[q]) +
                             c4[q]);
            state_[k].set_entry(j, CField1D::of_coeffs(state_[k].grid_ptr(), std::move(yc)));
        }
    }
    t_ += dt_;
}

ModeStack HierarchyEvolver::vap_stack(double delta) const {
    const double f0 = mode_.m0 * mode_.k0;
    ModeStack out(wave_->grid, f0, m_ + 1);
    ModeStack lead = v0(t_);
    lead.scale(delta);
    out += lead;
    double w = delta;
    for (int k = 1; k <= m_; ++k) {
        w *= delta;
        ModeStack term = state_[k - 1];
        term.scale(w);
        out += term;
    }
    return out;
}

Field2D HierarchyEvolver::vap_field(double delta, const Grid2Ptr& grid) const {
    return synthesize(vap_stack(delta), grid);
}

Field2D HierarchyEvolver::residual_g(double delta, const Grid2Ptr& grid) const {
    const double f0 = mode_.m0 * mode_.k0;
    const int big = 2 * (m_ + 1);
    ModeStack vap = vap_stack(delta);

    // dense-output time derivative: sigma0-scaled leading order plus the
    // evaluated right-hand sides of the correction orders
    ModeStack dvap(wave_->grid, f0, m_ + 1);
    {
        ModeStack lead(wave_->grid, f0, 1);
        lead.set_entry(1, (mode_.sigma0 * std::exp(mode_.sigma0 * t_)) * mode_.u0);
        lead.scale(delta);
        dvap += lead;
        if (m_ > 0) {
            std::vector<ModeStack> rhs = eval(t_, state_);
            double w = delta;
            for (int k = 1; k <= m_; ++k) {
                w *= delta;
                rhs[k - 1].scale(w);
                dvap += rhs[k - 1];
            }
        }
    }

    // linear action on v^ap
    ModeStack lin(wave_->grid, f0, m_ + 1);
    for (int j = 0; j <= m_ + 1; ++j)
        lin.set_entry(j, ops_[j].apply(vap.entry_nonneg(j)));

    // J applied to the quadratic interaction of v^ap with itself
    ModeStack gg = mode_product(vap, vap, ProductForm::grad_grad, big);
    ModeStack dd = mode_product(vap, vap, ProductForm::id_dxx, big);
    ModeStack ii = mode_product(vap, vap, ProductForm::id_id, big);
    gg.scale(0.5);
    ii.scale(-1.5);
    ModeStack quad(wave_->grid, f0, big);
    quad += gg;
    quad += dd;
    quad += ii;
    Multiplier jop = Multiplier::j_operator();
    ModeStack g(wave_->grid, f0, big);
    for (int j = 0; j <= big; ++j)
        g.set_entry(j, apply(jop, quad.entry_nonneg(j)));

    // G = -d_t v^ap + J L v^ap + J quad
    for (int j = 0; j <= m_ + 1; ++j) {
        CField1D entry = g.entry_nonneg(j);
        entry += lin.entry_nonneg(j);
        entry -= dvap.entry_nonneg(j);
        g.set_entry(j, std::move(entry));
    }
    return synthesize(g, grid);
}

// ------------------------------------------------------------ build / assemble

HierarchyResult HierarchyResult::leading_only(const UnstableMode& mode) {
    HierarchyResult r;
    r.mode = mode;
    r.order_m = 0;
    return r;
}

HierarchyResult build_hierarchy(const SolitaryWave& w, const UnstableMode& mode, int order_m,
                                double T, double dt, int snap_stride) {
    if (order_m < 0)
        throw ParameterError("build_hierarchy: order must be >= 0");
    HierarchyEvolver ev(w, mode, order_m, dt);
    const int nsteps = static_cast<int>(std::llround(T / dt));

    HierarchyResult res;
    res.mode = mode;
    res.order_m = order_m;
    res.dt = dt;
    res.vnorm.assign(order_m + 1, {});
    auto record = [&]() {
        res.times.push_back(ev.time());
        res.vnorm[0].push_back(ev.v0(ev.time()).vnorm(0.0));
        for (int k = 1; k <= order_m; ++k)
            res.vnorm[k].push_back(ev.order(k).vnorm(0.0));
    };
    auto snap = [&]() {
        res.snap_times.push_back(ev.time());
        std::vector<ModeStack> s;
        for (int k = 1; k <= order_m; ++k)
            s.push_back(ev.order(k));
        res.snaps.push_back(std::move(s));
    };
    record();
    snap();
    for (int s = 0; s < nsteps; ++s) {
        ev.step();
        record();
        if ((s + 1) % snap_stride == 0 || s + 1 == nsteps)
            snap();
    }

    // growth-rate fits over the second half of the horizon
    for (int k = 0; k <= order_m; ++k) {
        std::vector<double> ts, ln;
        for (size_t i = 0; i < res.times.size(); ++i) {
            if (res.times[i] < 0.5 * T)
                continue;
            const double v = res.vnorm[k][i];
            if (v > 0.0) {
                ts.push_back(res.times[i]);
                ln.push_back(std::log(v));
            }
        }
        res.fitted_rate.push_back(ts.size() >= 2 ? fit_slope(ts, ln) : 0.0);
    }
    return res;
}

Field2D assemble_vap(const SolitaryWave& w, const HierarchyResult& h, double delta, double t,
                     const Grid2Ptr& grid) {
    if (!(delta > 0.0))
        throw ParameterError("assemble_vap: delta must be positive");
    const double f0 = h.mode.m0 * h.mode.k0;
    ModeStack out(w.grid, f0, h.order_m + 1);
    ModeStack lead(w.grid, f0, 1);
    lead.set_entry(1, std::exp(h.mode.sigma0 * t) * h.mode.u0);
    lead.scale(delta);
    out += lead;
    if (h.order_m > 0) {
        int idx = -1;
        for (size_t i = 0; i < h.snap_times.size(); ++i)
            if (std::abs(h.snap_times[i] - t) < 0.5 * h.dt)
                idx = static_cast<int>(i);
        if (idx < 0)
            throw ParameterError("assemble_vap: t does not match a stored snapshot");
        double wgt = delta;
        for (int k = 1; k <= h.order_m; ++k) {
            wgt *= delta;
            ModeStack term = h.snaps[idx][k - 1];
            term.scale(wgt);
            out += term;
        }
    }
    return synthesize(out, grid);
}

} // namespace chkp
