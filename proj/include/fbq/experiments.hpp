#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fbq/analysis.hpp"
#include "fbq/dynamics.hpp"

namespace fbq {

/// Named initial-data / forcing shapes buildable from a config.
struct FieldProfile {
    enum class Kind { Zero, SingleMode, RandomBand };
    Kind kind = Kind::RandomBand;
    int kx = 1, ky = 1;      ///< single-mode wavevector
    double amp = 1.0;        ///< single-mode amplitude
    double phase = 0.0;      ///< single-mode phase
    double l2 = 1.0;         ///< target H^{norm_order} norm of a random band
    double norm_order = 0.0; ///< Sobolev order the target norm is measured in
    int kmin = 1, kmax = 6;
    double decay = 0.5;      ///< spectral slope exp(-decay |k|)
};

SpectralField build_field(const Grid& g, const FieldProfile& profile, std::uint64_t seed);

enum class ScenarioKind {
    linear_decay,
    full_decay,
    absorbing_ball,
    continuity,
    verify_inequalities,
    refinement,
};

/// Fully resolved scenario inputs (grid, physics, integration controls,
/// ensembles and ladders). Produced by the config parser; every field has a
/// documented default there.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::full_decay;
    Grid grid;
    PhysParams params;
    bool strict_subcritical = true;
    double dt = 1e-3;
    double t_end = 10.0;
    int sample_every = 10;
    double cfl = 0.5;
    double s1 = 0.6;
    double s2 = 1.0;
    std::uint64_t seed = 1;
    FieldProfile theta0;
    FieldProfile omega0;
    FieldProfile forcing_profile;       ///< params.forcing is built from this
    std::uint64_t forcing_seed = 97;    ///< independent of seed, shared by ensembles

    int ensemble_size = 20;
    double ensemble_norm_min = 0.1;
    double ensemble_norm_max = 10.0;
    double ensemble_omega_min = 0.1;
    double ensemble_omega_max = 3.0;
    double radius_floor = 1e-3;

    std::vector<double> deltas = {1e-2, 1e-3, 1e-4};
    double continuity_t_end = 2.0;

    std::vector<double> refine_dts = {4e-3, 2e-3, 1e-3};
    double refine_t_end = 1.0;

    double window = 1.0;
    int interpolation_fuzz_count = 1000;
    int positivity_fuzz_count = 100;

    std::string out_dir = ".";
    bool quiet = false;
    std::vector<std::pair<std::string, std::string>> echo; ///< effective config, for report headers
};

/// Scenario outcome: the effective config echo, one CheckReport per verified
/// property, and free-form notes.
struct ScenarioReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<CheckReport> checks;
    std::vector<std::string> notes;

    bool pass() const;
};

/// One ensemble trajectory and the initial norms it was launched from.
struct EnsembleMember {
    std::uint64_t seed = 0;
    double theta0_l2 = 0.0;
    double omega0_l2 = 0.0;
    std::vector<DiagnosticsRow> series;
    bool blew_up = false;
    std::string note;
};

/// Integrates ensemble_size trajectories from a log-spaced ladder of initial
/// norms under the shared configured forcing.
std::vector<EnsembleMember> run_ensemble(const ScenarioConfig& cfg);

/// Decay envelope / budget / balance checks along the configured trajectory;
/// with kind = linear_decay also checks the exact exponential solution.
ScenarioReport run_decay(const ScenarioConfig& cfg);

/// Ensemble entry into the explicit L^2 ball (radius^2 = twice the forcing
/// floor, or radius_floor when unforced): entries must precede each member's
/// envelope crossing time and be ordered with the initial-norm ladder.
ScenarioReport run_absorbing_ball(const ScenarioConfig& cfg);

/// Two-trajectory continuous-dependence experiment over the perturbation
/// ladder: first-order scaling of D(T) = ||L^{s2} du||^2 + ||L^{s1} dtheta||^2
/// across rungs, uniform growth exponents, and exact-zero D for delta = 0.
ScenarioReport run_continuity(const ScenarioConfig& cfg);

/// Batch verification: interpolation and positivity fuzzes, Gronwall bound
/// oracles, envelope branch continuity, and every trajectory checker on a
/// reference run.
ScenarioReport run_verify_inequalities(const ScenarioConfig& cfg);

/// Temporal self-convergence (observed order ~2 against an 8x finer
/// reference) and spatial resolution doubling for band-limited data.
ScenarioReport run_refinement(const ScenarioConfig& cfg);

/// The decay/budget/balance checker battery shared by run_decay,
/// run_verify_inequalities and the acceptance suite.
std::vector<CheckReport> trajectory_checks(const std::vector<DiagnosticsRow>& series,
                                           const PhysParams& params, const Grid& grid,
                                           double window);

} // namespace fbq
