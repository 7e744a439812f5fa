#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fbq/diagnostics.hpp"
#include "fbq/dynamics.hpp"
#include "fbq/field.hpp"

namespace fbq {

/// Outcome of one inequality check. worst_residual is the most-violating
/// signed slack (nonnegative means the inequality held at every sample);
/// pass holds exactly when worst_residual >= -tolerance.
struct CheckReport {
    std::string name;
    double worst_residual = 0.0;
    double worst_t = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

CheckReport make_check_report(std::string name, double worst_residual, double worst_t,
                              double tolerance);

/// Decay envelope for ||theta(t)||^2: starting from ||theta0||^2 the squared
/// norm relaxes at rate kappa*lambda1^{2 beta} toward the forcing floor
/// ||f||^2 / (kappa^2 lambda1^{4 beta}).
double l2_decay_envelope(double theta0_l2, double f_l2, const PhysParams& p, double lambda1,
                         double t);

/// Decay envelope for ||u(t)||^2 driven by the theta envelope. Has two
/// analytic branches; within |nu lambda1^{2 alpha} - kappa lambda1^{2 beta}|
/// < 1e-12 the resonant (equal-rate) branch is used. The constant term of
/// the resonant branch is the equal-rate limit of the generic branch, so the
/// two agree across the threshold.
double velocity_decay_envelope(double u0_l2, double theta0_l2, double f_l2,
                               const PhysParams& p, double lambda1, double t);

/// Envelope value for ||theta(t)||_{L^p}, p >= 2: decay at rate
/// kappa*lambda1^{2 beta}/p toward p*||f||_{L^p}/(kappa*lambda1^{2 beta}).
double lp_decay_envelope(double theta0_lp, double f_lp, double p_exp, const PhysParams& p,
                         double lambda1, double t);

/// One-sided Gronwall bound for y' + lambda y <= g with unit-window integrals
/// of g bounded by a1: y(t) <= exp(-lambda (t - t0)) y0 + a1 e^{2 lambda} /
/// (e^{lambda} - 1). Throws std::domain_error for lambda <= 0.
double gronwall_envelope(double y0, double lambda, double a1, double t0, double t);

/// Uniform Gronwall bound y(t + r) <= (a3/r + a2) e^{a1}. Throws
/// std::domain_error for r <= 0.
double uniform_gronwall_envelope(double a1, double a2, double a3, double r);

using RowValue = std::function<double(const DiagnosticsRow&)>;
using Envelope = std::function<double(double)>;

/// Checks value(row) <= envelope(row.t) over the whole series.
/// worst_residual = min envelope - value. Default tolerance (passing a
/// negative tol) is 1e-6 * envelope at the first sample time.
CheckReport check_series_under_envelope(const std::vector<DiagnosticsRow>& series,
                                        const Envelope& envelope, const RowValue& value,
                                        std::string name, double tol = -1.0);

/// L^p envelope check against the series' lp_theta[p] column (l2_theta for
/// p = 2). Throws std::domain_error for p < 2.
CheckReport check_lp_envelope(const std::vector<DiagnosticsRow>& series, double p_exp,
                              const PhysParams& p, double lambda1, double f_lp);

/// Which windowed dissipation budget to check.
enum class DissipationBudget {
    Theta,     ///< d||theta||^2 + kappa Int ||L^b theta||^2 <= ||f||^2 window / (kappa lambda1^{2b})
    Velocity,  ///< d||u||^2 + nu Int ||L^a u||^2 <= Int ||theta||^2 / (nu lambda1^{2a})
    Vorticity, ///< d||omega||^2 + nu Int ||L^a omega||^2 <= Int ||L^{1-a} theta||^2 / nu
};

/// Sliding-window budget inequality with trapezoid time integrals over the
/// sampled series; residuals are normalized per window and compared against
/// a 1e-4 relative tolerance. The vorticity budget bounds its right-hand
/// side through the interpolation ||L^{1-a} theta|| <=
/// ||theta||^{1-(1-a)/b} ||L^b theta||^{(1-a)/b}, which requires
/// alpha + beta >= 1. Throws std::invalid_argument when the series does not
/// cover one window.
CheckReport check_time_avg_dissipation(const std::vector<DiagnosticsRow>& series, double window,
                                       DissipationBudget which, const PhysParams& p,
                                       double lambda1, double f_l2);

/// Windowed discrete energy balance of the theta equation:
/// |d||theta||^2 + 2 kappa Int ||L^b theta||^2 - 2 Int <f,theta>| must stay
/// below rel_tol times the window's dissipation term.
CheckReport check_energy_balance(const std::vector<DiagnosticsRow>& series, double window,
                                 double kappa, double rel_tol);

/// Pointwise-power positivity residual
///   LHS - RHS = Int |theta|^{p-2} theta L^s theta - (2/p) Int (L^{s/2} |theta|^{p/2})^2
/// computed spectrally on a grid twice as fine as theta's own; nonnegative up
/// to 1e-8 * max(|LHS|, |RHS|, 1) for band-limited theta, s in [0,2] and even
/// p >= 2. Throws std::domain_error outside that parameter range.
CheckReport check_positivity(const PhysicalField& theta, double s, int p);

/// Interpolation inequality residual for one field and exponent triple
/// s1 <= s <= s2: bound*(1 + 1e-12) - ||L^s g|| with
/// bound = ||L^{s1} g||^d ||L^{s2} g||^{1-d}, s = d s1 + (1-d) s2.
CheckReport check_interpolation(const SpectralField& g, double s1, double s, double s2);

/// Earliest sample time after which value(row) <= radius for every
/// subsequent sample; nullopt when the series never settles under radius.
std::optional<double> detect_absorbing_entry(const std::vector<DiagnosticsRow>& series,
                                             const RowValue& value, double radius);

/// Time at which the theta L^2 decay envelope crosses radius^2 (0 when it
/// starts inside; +inf when the floor is above radius^2).
double envelope_crossing_time(double theta0_l2, double f_l2, const PhysParams& p,
                              double lambda1, double radius);

} // namespace fbq
