#include "chkp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "chkp/errors.hpp"
#include "chkp/linalg.hpp"

namespace chkp {

namespace {

// k-independent pieces of Z^T J L(k) Z and Z^T J L(k) J^T Z; every k
// sample then costs one axpy plus the eigensolve.
struct ReducedCache {
    SpectralBasis basis;
    Eigen::MatrixXd jl_hc, jl_p2;   // Z^T J Hc Z,      Z^T J P2 Z
    Eigen::MatrixXd lt_hc, lt_p2;   // Z^T J Hc J^T Z,  Z^T J P2 J^T Z

    Eigen::MatrixXd jl(double k) const {
        return k == 0.0 ? jl_hc : Eigen::MatrixXd(jl_hc - k * k * jl_p2);
    }
    Eigen::MatrixXd ltilde(double k) const {
        return k == 0.0 ? lt_hc : Eigen::MatrixXd(lt_hc - k * k * lt_p2);
    }
};

ReducedCache make_cache(const SolitaryWave& w) {
    const Grid1D& g = *w.grid;
    ReducedCache c;
    c.basis = SpectralBasis::make(g);
    const Eigen::MatrixXd j = j_matrix(g);
    const Eigen::MatrixXd hc = assemble_hc(w).m;
    const Eigen::MatrixXd p2 = x_antiderivative2_matrix(g);
    const Eigen::MatrixXd jhc = j * hc;
    const Eigen::MatrixXd jp2 = j * p2;
    c.jl_hc = c.basis.z.transpose() * jhc * c.basis.z;
    c.jl_p2 = c.basis.z.transpose() * jp2 * c.basis.z;
    c.lt_hc = c.basis.z.transpose() * (jhc * j.transpose()) * c.basis.z;
    c.lt_p2 = c.basis.z.transpose() * (jp2 * j.transpose()) * c.basis.z;
    return c;
}

// A couple of inverse-iteration sweeps tighten the dgeev eigenpair to
// near machine-precision residual (needed by the hierarchy residual
// scaling, which divides out delta^{M+2}).
void polish(const Eigen::MatrixXd& a, std::complex<double>& sigma, Eigen::VectorXcd& v) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
    for (int it = 0; it < 3; ++it) {
        Eigen::MatrixXcd shifted = ac;
        shifted.diagonal().array() -= sigma;
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
        Eigen::VectorXcd next = lu.solve(v);
        const double nrm = next.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            break;
        next /= nrm;
        const std::complex<double> rayleigh = next.dot(ac * next); // conj(next).A.next
        const double res_new = (ac * next - rayleigh * next).norm();
        const double res_old = (ac * v - sigma * v).norm();
        if (res_new < res_old) {
            v = next;
            sigma = rayleigh;
        } else {
            break;
        }
    }
    if (v.size() > 0 && std::abs(v[0]) > 0) {
        // deterministic phase: largest-magnitude entry real positive
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[imax]))
                imax = i;
        v *= std::abs(v[imax]) / v[imax];
    }
}

CField1D lift(const SolitaryWave& w, const SpectralBasis& basis, const Eigen::VectorXcd& vr) {
    const int n = w.grid->n;
    Eigen::VectorXcd full = basis.z.cast<std::complex<double>>() * vr;
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i)
        vals[i] = full[i];
    return CField1D::of_values(w.grid, std::move(vals));
}

} // namespace

namespace {

std::optional<EigenPair> unstable_eigen_cached(const SolitaryWave& w, const ReducedCache& cache,
                                               double k, double tol_growth) {
    if (k < 0.0)
        throw ParameterError("unstable_eigen: k must be nonnegative");
    const Eigen::MatrixXd a = cache.jl(k);
    linalg::NonsymEig eig = linalg::nonsym_eig(a);

    int best = -1;
    for (int i = 0; i < eig.values.size(); ++i)
        if (best < 0 || eig.values[i].real() > eig.values[best].real())
            best = i;
    if (best < 0 || eig.values[best].real() <= tol_growth)
        return std::nullopt;

    std::complex<double> sigma = eig.values[best];
    Eigen::VectorXcd v = eig.vectors.col(best);
    polish(a, sigma, v);

    EigenPair pair;
    pair.sigma = sigma;
    pair.residual = (a * v - sigma * v).norm() / v.norm();
    CField1D u = lift(w, cache.basis, v);
    const double nrm = sobolev_norm(u, 0.0);
    pair.u = (cplx(1.0 / nrm)) * u;
    return pair;
}

} // namespace

std::optional<EigenPair> unstable_eigen(const SolitaryWave& w, double k, double tol_growth) {
    const ReducedCache cache = make_cache(w);
    return unstable_eigen_cached(w, cache, k, tol_growth);
}

const BranchSample* EigenBranch::argmax() const {
    const BranchSample* best = nullptr;
    for (const auto& s : samples)
        if (s.unstable && (!best || s.sigma.real() > best->sigma.real()))
            best = &s;
    return best;
}

EigenBranch scan_branch(const SolitaryWave& w, double k_min, double k_max, int n_samples,
                        double tol_growth) {
    if (!(k_min >= 0.0) || !(k_max > k_min) || n_samples < 2)
        throw ParameterError("scan_branch: need 0 <= k_min < k_max and >= 2 samples");

    const ReducedCache cache = make_cache(w);
    EigenBranch branch;
    branch.samples.resize(n_samples);
    branch.modes.resize(n_samples);

    for (int i = 0; i < n_samples; ++i) {
        const double k = k_min + (k_max - k_min) * i / (n_samples - 1.0);
        BranchSample s;
        s.k = k;
        try {
            auto pair = unstable_eigen_cached(w, cache, k, tol_growth);
            if (pair) {
                s.sigma = pair->sigma;
                s.unstable = true;
                branch.modes[i] = std::move(pair->u);
            }
        } catch (const ConvergenceError&) {
            s.converged = false; // gap; scan continues
        }
        branch.samples[i] = s;
    }

    // Align eigenfunction phases along the branch: rotate each mode to
    // maximize the real inner product with its predecessor; break ties
    // toward a positive peak at x = 0.
    const int mid = w.grid->n / 2;
    const CField1D* prev = nullptr;
    for (int i = 0; i < n_samples; ++i) {
        if (!branch.samples[i].unstable)
            continue;
        CField1D& u = branch.modes[i];
        if (prev) {
            const cplx ip = inner(u, *prev);
            if (std::abs(ip) > 0)
                u *= std::conj(ip) / std::abs(ip);
        } else if (u.values()[mid].real() < 0.0) {
            u *= cplx(-1.0);
        }
        prev = &u;
    }

    // band bracket
    branch.has_band = false;
    for (const auto& s : branch.samples) {
        if (s.unstable) {
            if (!branch.has_band)
                branch.k_lo = s.k;
            branch.k_hi = s.k;
            branch.has_band = true;
        }
    }
    if (!branch.has_band) {
        branch.k_found = k_min;
        return branch;
    }

    // refine the upper edge by bisection on unstable vs. not
    double lo = branch.k_hi;
    double hi = k_max;
    for (const auto& s : branch.samples)
        if (!s.unstable && s.converged && s.k > lo) {
            hi = s.k;
            break;
        }
    for (int it = 0; it < 40 && (hi - lo) > 1e-6 * std::max(1.0, hi); ++it) {
        const double kmid = 0.5 * (lo + hi);
        auto pair = unstable_eigen_cached(w, cache, kmid, tol_growth);
        if (pair)
            lo = kmid;
        else
            hi = kmid;
    }
    branch.k_hi = lo;
    branch.k_found = hi;
    return branch;
}

ConditionReport verify_rt_conditions(const SolitaryWave& w, std::span<const double> k_samples,
                                     double k_threshold) {
    ConditionReport rep;
    rep.k_threshold = k_threshold;
    const Grid1D& g = *w.grid;
    const ReducedCache cache = make_cache(w);

    std::vector<double> ks(k_samples.begin(), k_samples.end());
    std::sort(ks.begin(), ks.end());

    std::map<double, Eigen::MatrixXd> ltilde;
    for (double k : ks)
        ltilde[k] = cache.ltilde(k);

    // (1) min eigenvalue of Ltilde(k) for sampled k >= K
    rep.cond1.note = "min eig Ltilde(k) for k >= K";
    double alpha = std::numeric_limits<double>::infinity();
    for (double k : ks) {
        if (k < k_threshold)
            continue;
        const double mn = linalg::sym_eigenvalues(ltilde[k]).minCoeff();
        rep.cond1.k_samples.push_back(k);
        rep.cond1.values.push_back(mn);
        alpha = std::min(alpha, mn);
    }
    rep.cond1.margin = alpha;
    rep.cond1.verdict = !rep.cond1.k_samples.empty() && alpha > 0.0;

    // (2) positivity of the limiting symbol over the resolved wavenumbers
    rep.cond2.note = "min over xi of c*xi^4 + (c-2kappa)*xi^2 + k^2, k != 0";
    double c_k = std::numeric_limits<double>::infinity();
    for (double k : ks) {
        if (k == 0.0)
            continue;
        double mn = std::numeric_limits<double>::infinity();
        for (int j = 0; j < g.n; ++j)
            mn = std::min(mn, n_infinity_symbol(w.c, w.kappa, g.xi[j], k));
        rep.cond2.k_samples.push_back(k);
        rep.cond2.values.push_back(mn);
        c_k = std::min(c_k, mn);
    }
    rep.cond2.margin = c_k;
    rep.cond2.verdict = !rep.cond2.k_samples.empty() && c_k > 0.0;

    // (3) Ltilde(k1) - Ltilde(k2) >= 0 for consecutive k1 >= k2, plus the
    // extreme pair
    rep.cond3.note = "min eig of Ltilde(k1) - Ltilde(k2), k1 >= k2";
    double worst = std::numeric_limits<double>::infinity();
    auto check_pair = [&](double k2, double k1) {
        const double mn = linalg::sym_eigenvalues(ltilde[k1] - ltilde[k2]).minCoeff();
        rep.cond3.k_samples.push_back(k1);
        rep.cond3.values.push_back(mn);
        worst = std::min(worst, mn);
    };
    for (size_t i = 0; i + 1 < ks.size(); ++i)
        check_pair(ks[i], ks[i + 1]);
    if (ks.size() >= 2)
        check_pair(ks.front(), ks.back());
    rep.cond3.margin = worst;
    rep.cond3.verdict = worst >= -1e-10;

    // (4) spectrum of Ltilde(0): one simple negative eigenvalue, isolated
    rep.cond4.note = "negative eigenvalues of Ltilde(0)";
    {
        auto it = ltilde.find(0.0);
        const Eigen::MatrixXd& lt0 =
            (it != ltilde.end()) ? it->second : (ltilde[0.0] = cache.ltilde(0.0));
        const Eigen::VectorXd ev = linalg::sym_eigenvalues(lt0);
        int negs = 0;
        for (int i = 0; i < ev.size(); ++i)
            if (ev[i] < -1e-6)
                ++negs;
        rep.cond4.k_samples = {0.0};
        rep.cond4.values = {ev[0], ev[1]};
        rep.cond4.margin = ev[1] - ev[0]; // isolation gap
        rep.cond4.verdict = negs == 1;
    }
    return rep;
}

AInfinityCheck a_infinity_check(double c, double kappa, double k,
                                std::span<const std::complex<double>> sigma_samples) {
    if (!(c > 2.0 * kappa))
        throw ParameterError("a_infinity_check: requires c > 2*kappa");
    if (k == 0.0)
        throw ParameterError("a_infinity_check: requires k != 0");

    AInfinityCheck out;
    out.k = k;
    out.analytic_margin = k * k; // real part left by l = i*mu at mu = 0
    out.min_abs_re_root = std::numeric_limits<double>::infinity();
    out.verdict = true;

    for (const auto& sigma : sigma_samples) {
        if (!(sigma.real() > 0.0))
            throw ParameterError("a_infinity_check: sampled sigma must have Re > 0");
        const std::vector<cplx> coeffs = {k * k, sigma, -(c - 2.0 * kappa), -sigma, c};
        const auto roots = linalg::poly_roots(coeffs);
        out.root_count = static_cast<int>(roots.size());
        double mn = std::numeric_limits<double>::infinity();
        for (const auto& r : roots)
            mn = std::min(mn, std::abs(r.real()));
        out.sigmas.push_back(sigma);
        out.min_re_per_sigma.push_back(mn);
        out.min_abs_re_root = std::min(out.min_abs_re_root, mn);
        if (!(mn > 0.0))
            out.verdict = false;
    }
    return out;
}

UnstableMode select_most_unstable(const SolitaryWave& w, const EigenBranch& branch, double k0,
                                  double tol_growth) {
    if (!(k0 > 0.0))
        throw ParameterError("select_most_unstable: k0 must be positive");
    if (!branch.has_band)
        throw NoUnstableModeError("select_most_unstable: branch has no unstable band");

    UnstableMode mode;
    mode.k0 = k0;
    bool found = false;
    std::optional<EigenPair> best;
    const ReducedCache cache = make_cache(w);
    for (int m = 1; m * k0 < branch.k_found; ++m) {
        auto pair = unstable_eigen_cached(w, cache, m * k0, tol_growth);
        if (!pair)
            continue;
        found = true;
        mode.largest_unstable_m = m;
        if (!best || pair->sigma.real() > best->sigma.real()) {
            best = pair;
            mode.m0 = m;
        }
    }
    if (!found)
        throw NoUnstableModeError("select_most_unstable: no integer multiple of k0 inside the "
                                  "unstable band; rechoose k0");

    mode.sigma0 = best->sigma;
    mode.residual = best->residual;

    // |v0(0)|_{L2(R x T_a)}^2 = 2 a |U0|_0^2 with a = 2 pi / k0
    const double a = 2.0 * std::numbers::pi / k0;
    const double target = 1.0 / std::sqrt(2.0 * a);
    const double raw = sobolev_norm(best->u, 0.0);
    mode.normalization = target / raw;
    mode.u0 = cplx(mode.normalization) * best->u;

    // deterministic sign: positive real peak at x = 0
    if (mode.u0.values()[w.grid->n / 2].real() < 0.0)
        mode.u0 *= cplx(-1.0);
    return mode;
}

Field2D seed_mode_field(const UnstableMode& mode, const Grid2Ptr& grid, double t) {
    const Grid2D& g = *grid;
    if (std::abs(g.k0 - mode.k0) > 1e-12 * std::max(1.0, mode.k0))
        throw ParameterError("seed_mode_field: grid period does not match the mode's k0");
    const int nx = g.x.n, ny = g.ny;
    const std::complex<double> amp = std::exp(mode.sigma0 * t);
    const auto& u = mode.u0.values();
    std::vector<double> vals(static_cast<size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            const double y = g.ynodes[iy];
            const cplx ph = std::exp(cplx(0.0, mode.m0 * g.k0 * y));
            vals[static_cast<size_t>(ix) * ny + iy] = 2.0 * (amp * ph * u[ix]).real();
        }
    return Field2D::of_values(grid, std::move(vals));
}

} // namespace chkp
