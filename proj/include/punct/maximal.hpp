#pragma once

#include "punct/core.hpp"
#include "punct/solver.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace punct {

/// Stage k solves on (eps_seq[k], R_seq[k]) with Dirichlet height M_k at both
/// ends and zero initial data, then reads u(probe_r, t_end).
struct Schedule {
    std::vector<double> M_seq;
    std::vector<double> eps_seq;
    std::vector<double> R_seq;
    double t_end = 1.0;
    double probe_r = 1.0;
    double theta = 1e-3;
    int window = 3;
    /// When > 0, M_k = saturation * eps_k^{-2/(p-1)} and M_seq is ignored, so
    /// every stage sits well above the boundary-layer scale of its inner radius.
    double saturation = 0.0;
    /// Outer Dirichlet value 0 instead of M_k (diagnostics only).
    bool outer_zero = false;

    std::size_t stages() const noexcept { return eps_seq.size(); }
    std::vector<double> boundary_heights(const ProblemParams& params) const;
};

/// M = 10..1e4, eps = 0.1..0.003, R = 10..80, probe r = 1, t_end = 1.
Schedule default_schedule();

/// eps = 1e-2..1e-5 by decades, R = 10..80, M_k = 100 eps_k^{-2/(p-1)}.
Schedule saturated_schedule();

/// Throws ScheduleError on malformed sequences or a probe outside any annulus.
void validate(const Schedule& schedule);

struct SolverConfig {
    /// 0 selects default_dt(t_end).
    double dt = 0.0;
    double grid_ratio = 1.05;
    /// First grid gap as a fraction of the stage's inner radius.
    double first_gap_fraction = 0.05;
    ReactionTreatment reaction = ReactionTreatment::Implicit;
};

enum class Verdict { Trivial, Nontrivial, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

/// Last-w spread below which positive probe values count as stabilized.
inline constexpr double kStabilizedSpread = 0.2;
/// Extrapolated limit at or below this fraction of the last value reads as decay to zero.
inline constexpr double kVanishingFraction = 0.5;

/// Aitken delta-squared limit of the last three values; NaN unless they are
/// strictly monotone with shrinking increments.
double extrapolate_limit(std::span<const double> values);

/// Nontrivial: the last w values exceed theta and spread by less than 20%,
/// or they converge monotonically to an extrapolated limit above theta that
/// is at least half the last value.
/// Trivial: the last w values are each <= theta and decreasing, or they
/// decrease monotonically toward an extrapolated limit at most half the last value.
/// Inconclusive otherwise, and whenever fewer than w+1 values exist.
Verdict classify_dichotomy(std::span<const double> values, double theta, int window);

struct StageResult {
    double M;
    double eps;
    double R;
    double probe_value;
    std::size_t nodes;
};

struct MaximalRunReport {
    std::vector<StageResult> stages;
    std::vector<double> probe_values;
    Verdict verdict = Verdict::Inconclusive;
    /// W(probe_r) for subcritical parameters.
    std::optional<double> stationary_reference;
    /// Final probe value over W(probe_r); logged, never asserted.
    std::optional<double> reference_ratio;
    bool monotonicity_ok = true;
    double extrapolated_limit = std::numeric_limits<double>::quiet_NaN();
};

MaximalRunReport run_schedule(const ProblemParams& params, const Schedule& schedule, const SolverConfig& config = {});

/// Trajectory of a single schedule stage, for domination checks and plots.
Trajectory run_stage(const ProblemParams& params, const Schedule& schedule, std::size_t stage,
                     const SolverConfig& config = {}, std::span<const double> output_times = {});

} // namespace punct
