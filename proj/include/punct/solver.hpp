#pragma once

#include "punct/barrier.hpp"
#include "punct/core.hpp"

#include <functional>
#include <span>
#include <vector>

namespace punct {

enum class Spacing { Uniform, Geometric };

/// Interior nodes of a discretized annulus (ε, R); the endpoints themselves
/// carry boundary data and are not stored.
struct RadialGrid {
    double epsilon = 0.0;
    double R = 0.0;
    std::vector<double> nodes;
    Spacing spacing = Spacing::Uniform;
    /// Ratio between consecutive gaps (1 for Uniform).
    double ratio = 1.0;

    std::size_t size() const noexcept { return nodes.size(); }
    double min_gap() const noexcept;
};

/// count interior nodes. Geometric gaps grow by `ratio` away from ε.
RadialGrid build_grid(double epsilon, double R, int count, Spacing spacing, double ratio = 1.0);

/// Geometric grid whose first gap is at most `first_gap`; the node count
/// follows from ratio and grows like log(R/first_gap).
RadialGrid build_graded_grid(double epsilon, double R, double first_gap, double ratio);

struct BoundarySide {
    enum class Kind { Dirichlet, NeumannZero };
    Kind kind = Kind::Dirichlet;
    double value = 0.0;

    static BoundarySide dirichlet(double value) { return {Kind::Dirichlet, value}; }
    static BoundarySide neumann_zero() { return {Kind::NeumannZero, 0.0}; }
};

struct BoundaryCondition {
    BoundarySide inner;
    BoundarySide outer;
};

void validate(const BoundaryCondition& bc);

struct Field {
    std::vector<double> values;
    double time = 0.0;
};

/// Implicit: backward Euler in both diffusion and absorption, solved by
/// Newton (one tridiagonal solve per iteration). SemiImplicit: absorption
/// linearized as u_old^{p-1} u_new, a single tridiagonal solve.
enum class ReactionTreatment { Implicit, SemiImplicit };

struct StepOptions {
    ReactionTreatment reaction = ReactionTreatment::Implicit;
    /// Source term evaluated at the new time level (empty = none).
    std::span<const double> forcing;
};

/// Precomputed three-point operator for u_rr + ((n-1)/r) u_r on a grid.
/// Nodes where the centered drift would make an off-diagonal negative fall
/// back to an upwind drift so the implicit matrix stays an M-matrix.
class RadialOperator {
public:
    RadialOperator(const RadialGrid& grid, double n);

    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> upper() const noexcept { return upper_; }
    std::size_t upwind_nodes() const noexcept { return upwind_; }

private:
    std::vector<double> lower_, diag_, upper_;
    std::size_t upwind_ = 0;
};

/// Advances `state` by dt. Result is nonnegative.
Field step(const Field& state, double dt, const RadialGrid& grid, const BoundaryCondition& bc,
           const ProblemParams& params, const StepOptions& options = {});

struct StepStats {
    std::size_t steps = 0;
    std::size_t newton_iterations = 0;
    double dt = 0.0;
    double max_value = 0.0;
    double min_value = 0.0;
};

struct Trajectory {
    RadialGrid grid;
    std::vector<Field> snapshots;
    StepStats stats;
};

struct SolveOptions {
    ReactionTreatment reaction = ReactionTreatment::Implicit;
};

/// Default step for an implicit solve: 1e-3 * t_end.
double default_dt(double t_end);

/// Integrates from g (sampled on grid) to t_end with fixed dt, recording the
/// state at each requested output time (rounded to the step grid). The final
/// state is always recorded.
Trajectory solve(std::span<const double> g, const RadialGrid& grid, const BoundaryCondition& bc,
                 const ProblemParams& params, double t_end, double dt,
                 std::span<const double> output_times = {}, const SolveOptions& options = {});

struct DominationReport {
    bool dominated = true;
    double max_ratio = 0.0;
    double r_at = 0.0;
    double t_at = 0.0;
};

/// Compares every snapshot node against ψ(r, t).
DominationReport check_domination(const Trajectory& traj, const BarrierParams& bp, const ProblemParams& params);

/// Smooth radial function with the derivatives needed to build its forcing.
struct ManufacturedSolution {
    std::function<double(double r, double t)> u;
    std::function<double(double r, double t)> u_t;
    std::function<double(double r, double t)> u_r;
    std::function<double(double r, double t)> u_rr;
};

struct ConvergenceCase {
    int grid_count;
    double dt;
};

struct ConvergenceResult {
    std::vector<double> errors;
    std::vector<double> h;
    /// log(e_k/e_{k+1}) / log(x_k/x_{k+1}), x = h or dt per `by_space`.
    std::vector<double> orders;
};

/// Max-norm error at t_end of the forced scheme against a manufactured solution
/// on a uniform grid over (epsilon, R) with time-dependent Dirichlet data.
double manufactured_error(const ManufacturedSolution& mms, const ProblemParams& params, double epsilon, double R,
                          int grid_count, double dt, double t_end);

ConvergenceResult convergence_study(const ManufacturedSolution& mms, const ProblemParams& params, double epsilon,
                                    double R, std::span<const ConvergenceCase> cases, double t_end, bool by_space);

/// Linear interpolation of a field at radius r (nearest boundary value is not
/// used; r must lie within the node range).
double sample(const RadialGrid& grid, std::span<const double> values, double r);

} // namespace punct
