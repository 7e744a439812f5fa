#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fbq/diagnostics.hpp"
#include "fbq/field.hpp"

namespace fbq {

/// Physical parameters of the dissipative convection system
///
///   d theta/dt + u.grad theta + kappa Lambda^{2 beta} theta = f
///   d omega/dt + u.grad omega + nu    Lambda^{2 alpha} omega = d_1 theta
///   u = perp-grad Laplacian^{-1} omega  (divergence-free)
///
/// where the vorticity source d_1 theta (buoyancy feedback) is active only
/// when coupling_on is set.
struct PhysParams {
    double nu = 0.05;      ///< viscosity
    double kappa = 0.05;   ///< diffusivity
    double alpha = 0.75;   ///< velocity dissipation exponent
    double beta = 0.75;    ///< temperature dissipation exponent
    SpectralField forcing; ///< time-independent f; empty means zero
    bool coupling_on = true;
};

/// Validates positivity of nu, kappa and the exponent range. With
/// strict_subcritical, alpha and beta must lie in (1/2, 1); otherwise (0, 1]
/// is accepted and values outside (1/2, 1) produce a warning string.
/// Throws ConfigError on hard violations.
std::vector<std::string> validate_params(const PhysParams& p, bool strict_subcritical);

/// Prognostic pair in spectral space plus the simulation clock. Both fields
/// are mean-zero, dealiased and Hermitian-symmetric.
struct State {
    SpectralField theta_hat;
    SpectralField omega_hat;
    double t = 0.0;
};

/// Non-finite values or a CFL violation during time stepping. Carries the
/// time of failure; integrate() attaches the last good state.
class BlowupError : public std::runtime_error {
public:
    BlowupError(const std::string& msg, double t)
        : std::runtime_error(msg + " at t = " + std::to_string(t)), t_(t) {}
    double t() const { return t_; }
    std::shared_ptr<const State> last_good; // set by integrate()
private:
    double t_;
};

/// Velocity from vorticity: u = perp-grad Laplacian^{-1} omega, i.e.
/// u1(k) =  i m2 w(k)/|m|^2, u2(k) = -i m1 w(k)/|m|^2, m = base_wavenumber*k.
/// Input must be mean-zero; both outputs are mean-zero and exactly
/// divergence-free mode by mode.
std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& omega_hat);

/// Pseudo-spectral advection u.grad g: differentiate spectrally, multiply
/// pointwise in physical space, transform back, dealias, project mean zero.
SpectralField advect(const SpectralField& u1_hat, const SpectralField& u2_hat,
                     const SpectralField& g_hat);

/// Right-hand sides (d theta/dt, d omega/dt) for the current state; both
/// mean-zero and dealiased.
std::pair<SpectralField, SpectralField> tendency(const State& s, const PhysParams& p);

/// One time step of size dt: the diagonal dissipation is applied exactly via
/// its exponential; advection, forcing and the vorticity source advance with
/// an explicit midpoint rule under that integrating factor (order 2). With
/// zero nonlinearity and zero forcing the step is exact to rounding.
/// Enforces dt <= cfl * dx / max(1, ||u||_inf) using the step's starting
/// velocity; violations and non-finite results throw BlowupError.
State step(const State& s, const PhysParams& p, double dt, double cfl = 0.5);

struct IntegrateOptions {
    double cfl = 0.5;
    double s1 = 0.6;                     ///< theta regularity diagnostic order
    double s2 = 1.0;                     ///< velocity regularity diagnostic order
    std::vector<double> lp = {4.0, 8.0}; ///< L^p norms recorded for theta
};

using DiagnosticsSink = std::function<void(const DiagnosticsRow&)>;

/// Norms and dissipation integrands of a state (one CSV row).
DiagnosticsRow diagnostics_row(const State& s, const PhysParams& p,
                               const IntegrateOptions& opts = {});

/// Advances s0 to t_end with fixed dt (a short final step absorbs any
/// remainder). Emits a row at the initial state, every sample_every steps,
/// and at t_end. Deterministic for fixed inputs. Blow-up errors propagate
/// with the last good state attached.
State integrate(const State& s0, const PhysParams& p, double t_end, double dt,
                int sample_every, const DiagnosticsSink& sink,
                const IntegrateOptions& opts = {});

/// Precomputed multiplier tables for repeated stepping at fixed dt; step()
/// and integrate() are thin wrappers over this.
class Stepper {
public:
    Stepper(const Grid& g, const PhysParams& p, double dt, double cfl = 0.5);
    ~Stepper();
    Stepper(const Stepper&) = delete;
    Stepper& operator=(const Stepper&) = delete;

    State advance(const State& s) const;
    double dt() const;

private:
    friend std::pair<SpectralField, SpectralField> tendency(const State&, const PhysParams&);
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace fbq
