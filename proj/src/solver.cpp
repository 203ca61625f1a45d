#include "punct/solver.hpp"

#include "punct/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace punct {

namespace {

constexpr double kMaxGridRatio = 1.1;
constexpr double kNewtonTolerance = 1e-12;
constexpr int kNewtonMaxIterations = 200;

double positive_power(double u, double p) { return u > 0.0 ? std::pow(u, p) : 0.0; }

// Thomas algorithm. Solves in place into `rhs`; `diag` is overwritten.
void solve_tridiagonal(std::span<const double> lower, std::span<double> diag, std::span<const double> upper,
                       std::span<double> rhs)
{
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1]))
            throw SolveError("singular tridiagonal system at row " + std::to_string(i - 1));
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1]))
        throw SolveError("singular tridiagonal system at last row");
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

// Implicit system pieces that do not depend on the iterate.
struct LinearPart {
    std::vector<double> lower, diag, upper; // of (I - dt L) with boundary folding
    std::vector<double> rhs;                 // u_old + dt f + Dirichlet contributions
};

LinearPart assemble(const RadialOperator& op, const Field& state, double dt, const BoundaryCondition& bc,
                    std::span<const double> forcing)
{
    const std::size_t N = state.values.size();
    LinearPart lp;
    lp.lower.resize(N);
    lp.diag.resize(N);
    lp.upper.resize(N);
    lp.rhs = state.values;
    for (std::size_t i = 0; i < N; ++i) {
        lp.lower[i] = -dt * op.lower()[i];
        lp.upper[i] = -dt * op.upper()[i];
        lp.diag[i] = 1.0 - dt * op.diag()[i];
        if (!forcing.empty())
            lp.rhs[i] += dt * forcing[i];
    }
    if (bc.inner.kind == BoundarySide::Kind::Dirichlet)
        lp.rhs[0] += dt * op.lower()[0] * bc.inner.value;
    else
        lp.diag[0] -= dt * op.lower()[0];
    if (bc.outer.kind == BoundarySide::Kind::Dirichlet)
        lp.rhs[N - 1] += dt * op.upper()[N - 1] * bc.outer.value;
    else
        lp.diag[N - 1] -= dt * op.upper()[N - 1];
    lp.lower[0] = 0.0;
    lp.upper[N - 1] = 0.0;
    return lp;
}

struct StepResult {
    Field field;
    std::size_t iterations;
};

StepResult advance(const RadialOperator& op, const Field& state, double dt, const BoundaryCondition& bc, double p,
                   const StepOptions& options)
{
    const std::size_t N = state.values.size();
    const LinearPart lp = assemble(op, state, dt, bc, options.forcing);
    std::vector<double> diag(N), work(N);

    StepResult out{{{}, state.time + dt}, 0};
    if (options.reaction == ReactionTreatment::SemiImplicit) {
        for (std::size_t i = 0; i < N; ++i)
            diag[i] = lp.diag[i] + dt * positive_power(state.values[i], p - 1.0);
        work = lp.rhs;
        solve_tridiagonal(lp.lower, diag, lp.upper, work);
        out.iterations = 1;
    } else {
        // Newton on G(w) = (I - dt L) w + dt w^p - rhs. G is convex with an
        // M-matrix Jacobian, so iterates after the first lie above the root.
        std::vector<double> w = state.values;
        bool converged = false;
        for (int it = 0; it < kNewtonMaxIterations; ++it) {
            for (std::size_t i = 0; i < N; ++i) {
                double g = lp.diag[i] * w[i] + dt * positive_power(w[i], p) - lp.rhs[i];
                if (i > 0)
                    g += lp.lower[i] * w[i - 1];
                if (i + 1 < N)
                    g += lp.upper[i] * w[i + 1];
                work[i] = g;
                diag[i] = lp.diag[i] + dt * p * positive_power(w[i], p - 1.0);
            }
            solve_tridiagonal(lp.lower, diag, lp.upper, work);
            double change = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double next = w[i] - work[i];
                const double scale = std::max(std::abs(next), std::abs(w[i]));
                if (scale > 0.0)
                    change = std::max(change, std::abs(work[i]) / scale);
                w[i] = next;
            }
            ++out.iterations;
            if (!std::isfinite(change))
                throw SolveError("Newton iteration diverged");
            if (change <= kNewtonTolerance) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw SolveError("Newton iteration did not converge in " + std::to_string(kNewtonMaxIterations) +
                             " iterations");
        work = std::move(w);
    }

    for (double& v : work)
        v = std::max(v, 0.0);
    out.field.values = std::move(work);
    return out;
}

void require_aligned(const Field& state, const RadialGrid& grid)
{
    if (state.values.size() != grid.size())
        throw DomainError("field has " + std::to_string(state.values.size()) + " values but grid has " +
                          std::to_string(grid.size()) + " nodes");
}

} // namespace

double RadialGrid::min_gap() const noexcept
{
    if (nodes.empty())
        return R - epsilon;
    double h = nodes.front() - epsilon;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        h = std::min(h, nodes[i] - nodes[i - 1]);
    return std::min(h, R - nodes.back());
}

RadialGrid build_grid(double epsilon, double R, int count, Spacing spacing, double ratio)
{
    if (!(epsilon > 0.0) || !(R > epsilon) || !std::isfinite(R))
        throw DomainError("grid needs 0 < epsilon < R");
    if (count < 3)
        throw DomainError("grid needs at least 3 interior nodes");

    RadialGrid grid;
    grid.epsilon = epsilon;
    grid.R = R;
    grid.spacing = spacing;
    grid.nodes.reserve(static_cast<std::size_t>(count));

    if (spacing == Spacing::Uniform || ratio == 1.0) {
        if (spacing == Spacing::Geometric && ratio != 1.0)
            throw DomainError("geometric ratio must be >= 1");
        grid.ratio = 1.0;
        const double h = (R - epsilon) / (count + 1);
        for (int i = 1; i <= count; ++i)
            grid.nodes.push_back(epsilon + h * i);
        return grid;
    }

    if (!(ratio > 1.0 && ratio <= kMaxGridRatio))
        throw DomainError("geometric ratio must lie in [1, " + std::to_string(kMaxGridRatio) + "]");
    grid.ratio = ratio;
    // count+1 gaps h0 q^k summing to R - ε
    const double h0 = (R - epsilon) * (ratio - 1.0) / (std::pow(ratio, count + 1) - 1.0);
    double r = epsilon, h = h0;
    for (int i = 0; i < count; ++i) {
        r += h;
        grid.nodes.push_back(r);
        h *= ratio;
    }
    if (!(grid.nodes.back() < R))
        throw DomainError("geometric grid overran R");
    return grid;
}

RadialGrid build_graded_grid(double epsilon, double R, double first_gap, double ratio)
{
    if (!(first_gap > 0.0))
        throw DomainError("first gap must be positive");
    if (!(ratio > 1.0 && ratio <= kMaxGridRatio))
        throw DomainError("graded grid ratio must lie in (1, " + std::to_string(kMaxGridRatio) + "]");
    const double gaps = std::ceil(std::log1p((R - epsilon) * (ratio - 1.0) / first_gap) / std::log(ratio));
    return build_grid(epsilon, R, std::max(3, static_cast<int>(gaps) - 1), Spacing::Geometric, ratio);
}

void validate(const BoundaryCondition& bc)
{
    for (const BoundarySide* side : {&bc.inner, &bc.outer}) {
        if (side->kind == BoundarySide::Kind::Dirichlet && !(side->value >= 0.0 && std::isfinite(side->value)))
            throw DomainError("Dirichlet values must be finite and >= 0");
    }
}

RadialOperator::RadialOperator(const RadialGrid& grid, double n)
{
    const std::size_t N = grid.size();
    lower_.resize(N);
    diag_.resize(N);
    upper_.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x = grid.nodes[i];
        const double xm = i == 0 ? grid.epsilon : grid.nodes[i - 1];
        const double xp = i + 1 == N ? grid.R : grid.nodes[i + 1];
        const double hm = x - xm, hp = xp - x;
        const double den = hm * hp * (hm + hp);
        const double d = (n - 1.0) / x;
        double lo = (2.0 * hp - d * hp * hp) / den;
        double up = (2.0 * hm + d * hm * hm) / den;
        if (lo < 0.0) {
            // forward difference for the (positive) drift keeps the stencil monotone
            lo = 2.0 * hp / den;
            up = 2.0 * hm / den + d / hp;
            ++upwind_;
        }
        lower_[i] = lo;
        upper_[i] = up;
        diag_[i] = -(lo + up);
    }
}

Field step(const Field& state, double dt, const RadialGrid& grid, const BoundaryCondition& bc,
           const ProblemParams& params, const StepOptions& options)
{
    if (!(dt > 0.0))
        throw DomainError("dt must be positive");
    require_aligned(state, grid);
    validate(bc);
    const RadialOperator op(grid, params.n());
    return advance(op, state, dt, bc, params.p(), options).field;
}

double default_dt(double t_end) { return 1e-3 * t_end; }

Trajectory solve(std::span<const double> g, const RadialGrid& grid, const BoundaryCondition& bc,
                 const ProblemParams& params, double t_end, double dt, std::span<const double> output_times,
                 const SolveOptions& options)
{
    if (!(t_end > 0.0) || !(dt > 0.0))
        throw DomainError("solve needs t_end > 0 and dt > 0");
    if (g.size() != grid.size())
        throw DomainError("initial data size does not match grid");
    for (double v : g) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("initial data must be finite and >= 0");
    }
    validate(bc);
    for (std::size_t k = 1; k < output_times.size(); ++k) {
        if (!(output_times[k] > output_times[k - 1]))
            throw DomainError("output times must be strictly increasing");
    }

    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
    const double h = t_end / static_cast<double>(steps);
    const RadialOperator op(grid, params.n());

    Trajectory traj;
    traj.grid = grid;
    traj.stats.dt = h;
    Field state{{g.begin(), g.end()}, 0.0};

    std::size_t next_out = 0;
    auto record = [&](const Field& f, std::size_t k) {
        while (next_out < output_times.size() && output_times[next_out] <= (static_cast<double>(k) + 0.5) * h) {
            if (traj.snapshots.empty() || traj.snapshots.back().time < f.time)
                traj.snapshots.push_back(f);
            ++next_out;
        }
    };
    record(state, 0);

    const StepOptions opts{options.reaction, {}};
    for (std::size_t k = 1; k <= steps; ++k) {
        StepResult res = advance(op, state, h, bc, params.p(), opts);
        res.field.time = h * static_cast<double>(k);
        traj.stats.newton_iterations += res.iterations;
        state = std::move(res.field);
        record(state, k);
    }
    if (traj.snapshots.empty() || traj.snapshots.back().time < state.time)
        traj.snapshots.push_back(state);
    traj.stats.steps = steps;

    traj.stats.max_value = 0.0;
    traj.stats.min_value = std::numeric_limits<double>::infinity();
    for (const Field& f : traj.snapshots) {
        for (double v : f.values) {
            traj.stats.max_value = std::max(traj.stats.max_value, v);
            traj.stats.min_value = std::min(traj.stats.min_value, v);
        }
    }
    return traj;
}

DominationReport check_domination(const Trajectory& traj, const BarrierParams& bp, const ProblemParams& params)
{
    validate(bp, params);
    require_matching_case(bp, params);
    if (traj.grid.nodes.empty() || !(traj.grid.nodes.front() > bp.epsilon) || !(traj.grid.nodes.back() < bp.R))
        throw DomainError("trajectory grid is not inside the barrier annulus");

    DominationReport rep;
    for (const Field& f : traj.snapshots) {
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            const double r = traj.grid.nodes[i];
            const double ratio = f.values[i] / psi(r, f.time, bp, params);
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.r_at = r;
                rep.t_at = f.time;
            }
        }
    }
    rep.dominated = rep.max_ratio <= 1.0;
    return rep;
}

double manufactured_error(const ManufacturedSolution& mms, const ProblemParams& params, double epsilon, double R,
                          int grid_count, double dt, double t_end)
{
    const RadialGrid grid = build_grid(epsilon, R, grid_count, Spacing::Uniform);
    const RadialOperator op(grid, params.n());
    const double n1 = params.n() - 1.0, p = params.p();
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t_end / dt)));
    const double h = t_end / static_cast<double>(steps);

    Field state;
    for (double r : grid.nodes)
        state.values.push_back(mms.u(r, 0.0));
    std::vector<double> forcing(grid.size());
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = h * static_cast<double>(k);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid.nodes[i];
            forcing[i] = mms.u_t(r, t) - mms.u_rr(r, t) - n1 / r * mms.u_r(r, t) + positive_power(mms.u(r, t), p);
        }
        const BoundaryCondition bc{BoundarySide::dirichlet(mms.u(epsilon, t)), BoundarySide::dirichlet(mms.u(R, t))};
        state = advance(op, state, h, bc, p, {ReactionTreatment::Implicit, forcing}).field;
        state.time = t;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::abs(state.values[i] - mms.u(grid.nodes[i], t_end)));
    return err;
}

ConvergenceResult convergence_study(const ManufacturedSolution& mms, const ProblemParams& params, double epsilon,
                                    double R, std::span<const ConvergenceCase> cases, double t_end, bool by_space)
{
    ConvergenceResult res;
    for (const ConvergenceCase& c : cases) {
        res.errors.push_back(manufactured_error(mms, params, epsilon, R, c.grid_count, c.dt, t_end));
        res.h.push_back((R - epsilon) / (c.grid_count + 1));
    }
    for (std::size_t k = 0; k + 1 < cases.size(); ++k) {
        const double x0 = by_space ? res.h[k] : cases[k].dt;
        const double x1 = by_space ? res.h[k + 1] : cases[k + 1].dt;
        const double e0 = res.errors[k], e1 = res.errors[k + 1];
        res.orders.push_back((e0 == 0.0 && e1 == 0.0) ? 0.0 : std::log(e0 / e1) / std::log(x0 / x1));
    }
    return res;
}

double sample(const RadialGrid& grid, std::span<const double> values, double r)
{
    if (grid.nodes.empty() || values.size() != grid.size())
        throw DomainError("sample needs values aligned with a nonempty grid");
    if (r < grid.nodes.front() || r > grid.nodes.back())
        throw DomainError("sample radius " + std::to_string(r) + " outside the node range");
    const auto it = std::upper_bound(grid.nodes.begin(), grid.nodes.end(), r);
    if (it == grid.nodes.end())
        return values.back();
    const auto j = static_cast<std::size_t>(it - grid.nodes.begin());
    const double x0 = grid.nodes[j - 1], x1 = grid.nodes[j];
    const double w = (r - x0) / (x1 - x0);
    return (1.0 - w) * values[j - 1] + w * values[j];
}

} // namespace punct
