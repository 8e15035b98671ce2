#pragma once

#include <string>

#include "chkp/field.hpp"
#include "chkp/spectral.hpp"

namespace chkp {

/// Camassa-Holm solitary wave Q_c sampled on a periodic grid, together
/// with its spectral derivatives.  Requires c > 2*kappa > 0; the profile
/// is even, positive, peaks at Q(0) = c - 2*kappa and decays like
/// exp(-sqrt(1 - 2*kappa/c)|x|).
struct SolitaryWave {
    double c = 0.0;
    double kappa = 0.0;
    GridPtr grid;
    Field1D q;   // profile samples
    Field1D qp;  // spectral d/dx
    Field1D qpp; // spectral d^2/dx^2
    double decay_rate = 0.0; // fitted from the tail window

    double peak() const { return c - 2.0 * kappa; }
    double nu() const { return std::sqrt(1.0 - 2.0 * kappa / c); } // analytic decay rate
};

/// Pointwise profile from the integrated traveling-wave relation
///   (Q')^2 = Q^2 (c - 2*kappa - Q) / (c - Q),
/// inverted to machine precision (Newton in the unfolding variable
/// u = sqrt((c - 2k - Q)/(c - Q)), where x(u) is elementary).
double soliton_value(double c, double kappa, double x);

/// Recommended half-length so the tail falls below ~1e-14 of the peak.
double recommended_half_length(double c, double kappa);

/// Sample the wave on the grid; derivatives are computed spectrally from
/// the samples so operator assembly stays independent of the construction.
/// Throws ParameterError if c <= 2*kappa, ResolutionError if the grid
/// cannot certify the profile (tail too fat or residual check fails).
SolitaryWave compute_soliton(double c, double kappa, GridPtr grid);

/// Max-norm of the stationary moving-frame residual at u = phi (the
/// transverse term vanishes on y-independent data).
double traveling_wave_residual(const SolitaryWave& w);

/// Verdicts for the qualitative profile properties: evenness, monotone
/// decay, peak height, tail rate and the concavity transition at
/// Q = c - kappa/2 - sqrt(c*kappa + kappa^2/4).
struct PropertyReport {
    bool even = false;
    double evenness_defect = 0.0;
    bool monotone = false;
    bool peak_ok = false;
    double peak_error = 0.0;
    bool decay_ok = false;
    double decay_rate = 0.0;
    double decay_rate_expected = 0.0;
    bool convexity_ok = false;
    double concavity_threshold = 0.0;
    int convexity_violations = 0;

    bool all_ok() const { return even && monotone && peak_ok && decay_ok && convexity_ok; }
};

PropertyReport properties_report(const SolitaryWave& w);

/// Columns: x, Q, Q', Q''.
void export_profile_csv(const SolitaryWave& w, const std::string& path);

} // namespace chkp
