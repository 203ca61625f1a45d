#include "punct/maximal.hpp"

#include "punct/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace punct {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Nodewise comparison across stages on an identical grid holds to solver
// tolerance, not to the last bit.
constexpr double kComparisonSlack = 1e-9;

bool strictly_monotone(std::span<const double> v, bool decreasing)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (decreasing ? !(v[i] < v[i - 1]) : !(v[i] > v[i - 1]))
            return false;
    }
    return true;
}

} // namespace

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Trivial:
        return "Trivial";
    case Verdict::Nontrivial:
        return "Nontrivial";
    case Verdict::Inconclusive:
        return "Inconclusive";
    }
    return "Unknown";
}

std::vector<double> Schedule::boundary_heights(const ProblemParams& params) const
{
    if (saturation <= 0.0)
        return M_seq;
    std::vector<double> M;
    M.reserve(eps_seq.size());
    for (double e : eps_seq)
        M.push_back(saturation * std::pow(e, -params.alpha()));
    return M;
}

Schedule default_schedule()
{
    Schedule s;
    s.M_seq = {10.0, 1e2, 1e3, 1e4};
    s.eps_seq = {0.1, 0.03, 0.01, 0.003};
    s.R_seq = {10.0, 20.0, 40.0, 80.0};
    return s;
}

Schedule saturated_schedule()
{
    Schedule s;
    s.eps_seq = {1e-2, 1e-3, 1e-4, 1e-5};
    s.R_seq = {10.0, 20.0, 40.0, 80.0};
    s.saturation = 100.0;
    return s;
}

void validate(const Schedule& s)
{
    auto fail = [](const std::string& what) { throw ScheduleError("schedule: " + what); };
    const std::size_t k = s.eps_seq.size();
    if (k == 0)
        fail("needs at least one stage");
    if (s.R_seq.size() != k)
        fail("R_seq and eps_seq lengths differ");
    if (s.saturation <= 0.0 && s.M_seq.size() != k)
        fail("M_seq and eps_seq lengths differ");
    if (!(s.t_end > 0.0))
        fail("t_end must be positive");
    if (!(s.theta > 0.0))
        fail("theta must be positive");
    if (s.window < 1)
        fail("window must be >= 1");
    for (std::size_t i = 0; i < k; ++i) {
        if (!(s.eps_seq[i] > 0.0 && s.eps_seq[i] < 1.0))
            fail("eps values must lie in (0, 1)");
        if (!(s.R_seq[i] > 1.0) || !std::isfinite(s.R_seq[i]))
            fail("R values must be finite and > 1");
        if (s.saturation <= 0.0 && !(s.M_seq[i] > 0.0 && std::isfinite(s.M_seq[i])))
            fail("M values must be finite and positive");
        if (!(s.probe_r > s.eps_seq[i] && s.probe_r < s.R_seq[i]))
            fail("probe_r=" + std::to_string(s.probe_r) + " leaves the annulus of stage " + std::to_string(i));
        if (i > 0) {
            if (s.eps_seq[i] > s.eps_seq[i - 1])
                fail("eps_seq must be nonincreasing");
            if (s.R_seq[i] < s.R_seq[i - 1])
                fail("R_seq must be nondecreasing");
            if (s.saturation <= 0.0 && s.M_seq[i] < s.M_seq[i - 1])
                fail("M_seq must be nondecreasing");
        }
    }
}

double extrapolate_limit(std::span<const double> values)
{
    if (values.size() < 3)
        return kNaN;
    const double v1 = values[values.size() - 3], v2 = values[values.size() - 2], v3 = values.back();
    const double d1 = v2 - v1, d2 = v3 - v2;
    const bool monotone = (d1 > 0.0 && d2 > 0.0) || (d1 < 0.0 && d2 < 0.0);
    if (!monotone || !(std::abs(d2) < std::abs(d1)))
        return kNaN;
    return v3 - d2 * d2 / (d2 - d1);
}

Verdict classify_dichotomy(std::span<const double> values, double theta, int window)
{
    const auto w = static_cast<std::size_t>(std::max(window, 1));
    if (values.size() < w + 1)
        return Verdict::Inconclusive;
    const auto tail = values.last(w);

    const double hi = *std::max_element(tail.begin(), tail.end());
    const double lo = *std::min_element(tail.begin(), tail.end());
    if (lo > theta && (hi - lo) < kStabilizedSpread * hi)
        return Verdict::Nontrivial;
    if (hi <= theta && strictly_monotone(tail, true))
        return Verdict::Trivial;

    const auto trend = values.last(std::max<std::size_t>(w, 3));
    const bool down = strictly_monotone(trend, true);
    const bool up = strictly_monotone(trend, false);
    const double limit = extrapolate_limit(values);
    if ((down || up) && std::isfinite(limit)) {
        const double last = values.back();
        if (down && limit <= kVanishingFraction * last)
            return Verdict::Trivial;
        if (limit > theta && limit >= kVanishingFraction * last)
            return Verdict::Nontrivial;
    }
    return Verdict::Inconclusive;
}

Trajectory run_stage(const ProblemParams& params, const Schedule& schedule, std::size_t stage,
                     const SolverConfig& config, std::span<const double> output_times)
{
    validate(schedule);
    if (stage >= schedule.stages())
        throw ScheduleError("stage index out of range");
    const double M = schedule.boundary_heights(params)[stage];
    const double eps = schedule.eps_seq[stage];
    const double R = schedule.R_seq[stage];
    const RadialGrid grid = build_graded_grid(eps, R, config.first_gap_fraction * eps, config.grid_ratio);
    const BoundaryCondition bc{BoundarySide::dirichlet(M), BoundarySide::dirichlet(schedule.outer_zero ? 0.0 : M)};
    const std::vector<double> g(grid.size(), 0.0);
    const double dt = config.dt > 0.0 ? config.dt : default_dt(schedule.t_end);
    return solve(g, grid, bc, params, schedule.t_end, dt, output_times, {config.reaction});
}

MaximalRunReport run_schedule(const ProblemParams& params, const Schedule& schedule, const SolverConfig& config)
{
    validate(schedule);
    const std::vector<double> heights = schedule.boundary_heights(params);

    MaximalRunReport report;
    std::vector<double> previous_final;
    for (std::size_t k = 0; k < schedule.stages(); ++k) {
        const Trajectory traj = run_stage(params, schedule, k, config);
        const Field& last = traj.snapshots.back();
        const double probe = sample(traj.grid, last.values, schedule.probe_r);
        report.stages.push_back({heights[k], schedule.eps_seq[k], schedule.R_seq[k], probe, traj.grid.size()});
        report.probe_values.push_back(probe);

        // Same annulus, higher boundary data: the discrete comparison principle
        // orders the two solutions nodewise.
        if (k > 0 && schedule.eps_seq[k] == schedule.eps_seq[k - 1] && schedule.R_seq[k] == schedule.R_seq[k - 1] &&
            heights[k] >= heights[k - 1]) {
            for (std::size_t i = 0; i < last.values.size(); ++i) {
                if (last.values[i] < previous_final[i] * (1.0 - kComparisonSlack))
                    report.monotonicity_ok = false;
            }
        }
        previous_final = last.values;
    }

    report.extrapolated_limit = extrapolate_limit(report.probe_values);
    report.verdict = report.monotonicity_ok
                         ? classify_dichotomy(report.probe_values, schedule.theta, schedule.window)
                         : Verdict::Inconclusive;
    if (classify_regime(params).tag == RegimeTag::Subcritical) {
        const StationaryProfile W = stationary_amplitude(params);
        report.stationary_reference = stationary_value(W, schedule.probe_r);
        report.reference_ratio = report.probe_values.back() / *report.stationary_reference;
    }
    return report;
}

} // namespace punct
