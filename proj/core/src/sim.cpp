#include "chkp/sim.hpp"

#include <cmath>

#include "chkp/errors.hpp"
#include "chkp/fft.hpp"

namespace chkp {

Stepper::Stepper(const SolitaryWave& w, Grid2Ptr grid, Form form, SimOptions opts)
    : grid_(std::move(grid)), form_(form), opts_(opts), c_(w.c), kappa_(w.kappa) {
    const Grid2D& g = *grid_;
    nx_ = g.x.n;
    ny_ = g.ny;
    const size_t sz = static_cast<size_t>(nx_) * ny_;

    if (g.x.n != w.grid->n || std::abs(g.x.half_length - w.grid->half_length) > 1e-12)
        throw ParameterError("Stepper: wave and 2D grid x-axes differ");

    phi_rot_.assign(nx_, 0.0);
    pot_rot_.assign(nx_, 0.0);
    const auto& q = w.q.values();
    const auto& qpp = w.qpp.values();
    for (int i = 0; i < nx_; ++i) {
        const int r = (i + nx_ / 2) % nx_;
        if (form_ == Form::perturbation) {
            phi_rot_[i] = q[r];
            pot_rot_[i] = qpp[r] - 3.0 * q[r];
        }
    }

    lambda_.resize(sz);
    jsym_.resize(sz);
    smooth_.resize(sz);
    dxsym_.resize(sz);
    mask_.resize(sz);
    efull_.resize(sz);
    ehalf_.resize(sz);
    const double eps = opts_.epsilon_visc;
    for (int ix = 0; ix < nx_; ++ix) {
        const double xi = g.x.xi[ix];
        const bool nyq = ix == g.x.nyquist();
        const int nmode = (ix < nx_ / 2) ? ix : ix - nx_;
        for (int iy = 0; iy < ny_; ++iy) {
            const double eta = g.eta[iy];
            const int mmode = (iy < ny_ / 2) ? iy : iy - ny_;
            const size_t id = static_cast<size_t>(ix) * ny_ + iy;
            const double lap = xi * xi + eta * eta;
            const double h = 1.0 / (1.0 + xi * xi + eps * lap * lap);
            mask_[id] = (std::abs(nmode) <= nx_ / 3 && std::abs(mmode) <= ny_ / 3) ? 1.0 : 0.0;
            if (ix == 0 || nyq) {
                lambda_[id] = 0.0;
                jsym_[id] = 0.0;
                smooth_[id] = (ix == 0) ? cplx(0.0) : cplx(-xi * xi * h);
                dxsym_[id] = 0.0;
            } else {
                lambda_[id] = cplx(0.0, xi * h * (c_ * (1.0 + xi * xi) - 2.0 * kappa_) +
                                            h * eta * eta / xi);
                jsym_[id] = cplx(0.0, xi * h);
                smooth_[id] = cplx(-xi * xi * h);
                dxsym_[id] = cplx(0.0, xi);
            }
            efull_[id] = std::exp(opts_.dt * lambda_[id]);
            ehalf_[id] = std::exp(0.5 * opts_.dt * lambda_[id]);
        }
    }

    guard_ = opts_.blowup_factor * (c_ - 2.0 * kappa_);

    p1_.resize(sz);
    p2_.resize(sz);
    sa_.resize(sz);
    sb_.resize(sz);
    n1_.resize(sz);
    n2_.resize(sz);
    n3_.resize(sz);
    n4_.resize(sz);
    tmp_.resize(sz);
}

void Stepper::check_constraint(const std::vector<cplx>& c) const {
    double scale = 1e-300;
    for (size_t i = 0; i < c.size(); ++i)
        scale = std::max(scale, std::abs(c[i]));
    for (int iy = 1; iy < ny_; ++iy)
        if (std::abs(c[iy]) > 1e-10 * scale)
            throw ConstraintError("stepper: nonzero x-mean on a transverse mode");
}

void Stepper::nonlinear(const std::vector<cplx>& in, std::vector<cplx>& out, bool check) {
    const size_t sz = in.size();
    sa_ = in;
    for (size_t i = 0; i < sz; ++i)
        sb_[i] = in[i] * dxsym_[i];
    fft::dft_2d(sa_.data(), nx_, ny_, +1); // rotated-in-x physical values
    fft::dft_2d(sb_.data(), nx_, ny_, +1);

    if (check) {
        double umax = 0.0, uxmax = 0.0;
        for (size_t i = 0; i < sz; ++i) {
            umax = std::max(umax, std::abs(sa_[i].real()));
            uxmax = std::max(uxmax, std::abs(sb_[i].real()));
        }
        if (!std::isfinite(umax) || uxmax > guard_)
            throw BlowupError("stepper: |u_x| exceeded the wave-breaking guard");
        const double ximax = std::numbers::pi / grid_->x.dx();
        const double wave_speed = (form_ == Form::perturbation) ? c_ - 2.0 * kappa_ : 0.0;
        const double rho = ximax * (wave_speed + 2.0 * umax) + 3.0 * (c_ + kappa_);
        if (opts_.dt * rho > 2.8)
            throw StabilityError("stepper: dt exceeds the RK4 stability bound at the "
                                 "current amplitude");
    }

    if (form_ == Form::perturbation) {
        for (int ix = 0; ix < nx_; ++ix) {
            const double ph = phi_rot_[ix];
            const double pt = pot_rot_[ix];
            for (int iy = 0; iy < ny_; ++iy) {
                const size_t id = static_cast<size_t>(ix) * ny_ + iy;
                const double v = sa_[id].real();
                const double vx = sb_[id].real();
                p1_[id] = (ph + v) * vx;
                p2_[id] = 0.5 * vx * vx + 1.5 * v * v - pt * v;
            }
        }
    } else {
        for (size_t id = 0; id < sz; ++id) {
            const double u = sa_[id].real();
            const double ux = sb_[id].real();
            p1_[id] = u * ux;
            p2_[id] = 0.5 * ux * ux + 1.5 * u * u;
        }
    }
    fft::dft_2d(p1_.data(), nx_, ny_, -1);
    fft::dft_2d(p2_.data(), nx_, ny_, -1);
    const double inv = 1.0 / static_cast<double>(sz);
    for (size_t i = 0; i < sz; ++i) {
        const double m = opts_.dealias_products ? mask_[i] : 1.0;
        out[i] = m * inv * (smooth_[i] * p1_[i] - jsym_[i] * p2_[i]);
    }
}

void Stepper::step(SimState& s) {
    std::vector<cplx>& u = s.field.coeffs_mut();
    check_constraint(u);
    const double dt = opts_.dt;
    const size_t sz = u.size();

    nonlinear(u, n1_, true);
    for (size_t i = 0; i < sz; ++i)
        tmp_[i] = ehalf_[i] * (u[i] + 0.5 * dt * n1_[i]);
    nonlinear(tmp_, n2_, false);
    for (size_t i = 0; i < sz; ++i)
        tmp_[i] = ehalf_[i] * u[i] + 0.5 * dt * n2_[i];
    nonlinear(tmp_, n3_, false);
    for (size_t i = 0; i < sz; ++i)
        tmp_[i] = efull_[i] * u[i] + dt * ehalf_[i] * n3_[i];
    nonlinear(tmp_, n4_, false);
    for (size_t i = 0; i < sz; ++i)
        u[i] = efull_[i] * u[i] +
               dt / 6.0 * (efull_[i] * n1_[i] + 2.0 * ehalf_[i] * (n2_[i] + n3_[i]) + n4_[i]);

    // re-impose the zero x-mean on transverse modes (exact projection)
    for (int iy = 1; iy < ny_; ++iy)
        u[iy] = 0.0;

    s.t += dt;
    s.steps += 1;
}

Field2D Stepper::rhs(const Field2D& f) {
    const auto& c = f.coeffs();
    check_constraint(c);
    std::vector<cplx> out(c.size());
    nonlinear(c, out, false);
    for (size_t i = 0; i < c.size(); ++i)
        out[i] += lambda_[i] * c[i];
    return Field2D::of_coeffs(f.grid_ptr(), std::move(out));
}

Field2D rhs_moving_frame(const SolitaryWave& w, const Field2D& u, SimOptions opts) {
    Stepper st(w, u.grid_ptr(), Stepper::Form::moving_frame, opts);
    return st.rhs(u);
}

Field2D rhs_perturbation(const SolitaryWave& w, const Field2D& v, SimOptions opts) {
    Stepper st(w, v.grid_ptr(), Stepper::Form::perturbation, opts);
    return st.rhs(v);
}

std::pair<double, double> invariants(const Field2D& u, double kappa) {
    const Grid2D& g = u.grid();
    const auto& c = u.coeffs();
    // d_x^{-1} d_y u needs the KP constraint
    double scale = 1e-300;
    for (const auto& z : c)
        scale = std::max(scale, std::abs(z));
    std::vector<cplx> s(c.size());
    for (int ix = 0; ix < g.x.n; ++ix) {
        const double xi = g.x.xi[ix];
        for (int iy = 0; iy < g.ny; ++iy) {
            const size_t id = static_cast<size_t>(ix) * g.ny + iy;
            if (ix == 0) {
                if (iy != 0 && std::abs(c[id]) > 1e-10 * scale)
                    throw ConstraintError("invariants: nonzero x-mean on a transverse mode");
                s[id] = 0.0;
            } else {
                s[id] = c[id] * (g.eta[iy] / xi);
            }
        }
    }
    Field2D aux = Field2D::of_coeffs(u.grid_ptr(), std::move(s));
    Field2D ux = x_derivative(u, 1);

    const auto& uv = u.values();
    const auto& uxv = ux.values();
    const auto& sv = aux.values();
    double h = 0.0, q = 0.0;
    for (size_t i = 0; i < uv.size(); ++i) {
        const double a = uv[i], b = uxv[i];
        h += a * a * a + a * b * b + 2.0 * kappa * a * a - sv[i] * sv[i];
        q += a * a + b * b;
    }
    const double dxdy = g.x.dx() * g.dy();
    return {-0.5 * h * dxdy, 0.5 * q * dxdy};
}

ErrorField error_field(const Field2D& u, const SolitaryWave& wave, const Field2D& vap) {
    ErrorField ef;
    ef.w = u - broadcast_wave(wave, u.grid_ptr()) - vap;
    ef.norm0 = sobolev_norm(ef.w, 0.0);
    ef.norm1 = sobolev_norm(ef.w, 1.0);
    ef.norm2 = sobolev_norm(ef.w, 2.0);
    return ef;
}

Field2D broadcast_wave(const SolitaryWave& w, const Grid2Ptr& grid) {
    const Grid2D& g = *grid;
    if (g.x.n != w.grid->n)
        throw ParameterError("broadcast_wave: grid mismatch");
    const auto& c = w.q.coeffs();
    std::vector<cplx> out(static_cast<size_t>(g.x.n) * g.ny, cplx(0.0));
    for (int ix = 0; ix < g.x.n; ++ix)
        out[static_cast<size_t>(ix) * g.ny] = c[ix];
    return Field2D::of_coeffs(grid, std::move(out));
}

} // namespace chkp
