// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Runtime budgets are part of each criterion.

#include "mms.hpp"
#include "oracles.hpp"
#include "punct/barrier.hpp"
#include "punct/core.hpp"
#include "punct/experiments.hpp"
#include "punct/maximal.hpp"
#include "punct/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace punct;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass)
                detail << "failed: ";
            else
                detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<void(Outcome&)> body;
};

BarrierParams verified_barrier(const ProblemParams& pp, double R, double eps)
{
    BarrierParams bp = default_barrier(pp, R, eps);
    bp.gamma = search_gamma(bp, pp);
    return bp;
}

void stationary_oracle(Outcome& out)
{
    for (auto [n, p] : {std::pair{3, 2.0}, {2, 2.0}, {3, 1.5}, {2, 3.0}}) {
        const ProblemParams pp(n, p);
        const StationaryProfile W = stationary_amplitude(pp);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double r = std::pow(10.0, -3.0 + 6.0 * i / 999.0);
            const double u = stationary_value(W, r);
            const double res =
                radial_residual(u, stationary_derivative(W, r), stationary_second_derivative(W, r), r, pp);
            worst = std::max(worst, std::abs(res) / std::pow(u, p));
        }
        out.require(worst <= 1e-10, "n=" + std::to_string(n) + " residual/W^p=" + std::to_string(worst));
        out.detail << "(" << n << "," << p << ") max rel residual " << worst << "  ";
    }
}

void defect_identity(Outcome& out)
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto [n, p] : {std::pair{5, 2.0}, {4, 2.0}}) {
        const ProblemParams pp(n, p);
        const BarrierParams bp = verified_barrier(pp, 10, 0.01);
        const oracle::Psi ref{n, p, bp.kind == BarrierCase::Borderline, bp.R, bp.epsilon, bp.gamma, bp.l, bp.c};
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double s = i % 2 == 0 ? bp.epsilon * std::pow(10.0, -4.0 * u(rng))
                                        : (bp.R - bp.epsilon) * (0.001 + 0.998 * u(rng));
            const double r = bp.epsilon + s;
            const double t = u(rng);
            const TermBreakdown tb = term_breakdown(r, t, bp, pp);
            worst = std::max(worst, oracle::relative_gap(tb.prefactor * tb.sum, oracle::fd_defect(ref, r, t)));
        }
        out.require(worst <= 1e-6, std::string(to_string(bp.kind)) + " gap " + std::to_string(worst));
        out.detail << to_string(bp.kind) << " max gap " << worst << "  ";
    }
}

void barrier_verification(Outcome& out)
{
    for (auto [n, p] : {std::pair{5, 2.0}, {4, 2.0}}) {
        const ProblemParams pp(n, p);
        for (double R : {10.0, 100.0}) {
            for (double eps : {0.01, 0.001}) {
                BarrierParams bp = verified_barrier(pp, R, eps);
                const std::string tag = "n=" + std::to_string(n) + " R=" + std::to_string(int(R)) +
                                        " eps=" + std::to_string(eps);
                out.require(std::isfinite(bp.gamma) && bp.gamma > 0, tag + " gamma*");
                out.require(verify_supersolution(bp, pp).passed, tag + " at gamma*");
                const double g = bp.gamma;
                bp.gamma = 2 * g;
                out.require(verify_supersolution(bp, pp).passed, tag + " at 2 gamma*");
                bp.gamma = 1e-6;
                out.require(!verify_supersolution(bp, pp).passed, tag + " passes at 1e-6");
                out.detail << to_string(bp.kind)[0] << "(R=" << R << ",eps=" << eps << ") g*=" << g << " ";
            }
        }
    }

    // Positive: J1 J2 J4 J5 J7 I2; the rest nonpositive. The pattern is used
    // on the inner part of the annulus, where R + ε - 2r >= 0.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t violations = 0, samples = 0;
    for (auto [n, p] : {std::pair{5, 2.0}, {4, 2.0}}) {
        const ProblemParams pp(n, p);
        const BarrierParams bp = verified_barrier(pp, 10, 0.01);
        for (int i = 0; i < 10000; ++i, ++samples) {
            const double half = 0.5 * (bp.R + bp.epsilon);
            const double r = bp.epsilon + (half - bp.epsilon) * std::max(1e-9, u(rng));
            const TermBreakdown tb = term_breakdown(r, u(rng), bp, pp);
            const bool ok = tb.J[0] >= 0 && tb.J[1] >= 0 && tb.J[2] <= 0 && tb.J[3] >= 0 && tb.J[4] >= 0 &&
                            tb.J[5] <= 0 && tb.J[6] >= 0 && tb.I[0] <= 0 && tb.I[1] >= 0 && tb.I[2] <= 0 &&
                            tb.I[3] <= 0 && tb.I[4] <= 0;
            violations += ok ? 0 : 1;
        }
    }
    out.require(violations == 0, std::to_string(violations) + " sign-pattern violations");
    out.detail << "| sign pattern " << samples - violations << "/" << samples;
}

const InequalityCheck* find(const std::vector<InequalityCheck>& checks, const std::string& name)
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

void key_inequalities(Outcome& out)
{
    {
        const ProblemParams pp(5, 2.0);
        BarrierParams bp = default_barrier(pp, 10, 0.01);
        bp.l = 0.5;
        const auto checks = check_key_inequalities(bp, pp, 1.0, 0.0, inner_band_grid(bp, 5000));
        const auto* j2 = find(checks, "J2");
        const auto* fin = find(checks, "final");
        out.require(j2 && j2->holds, "J2 with M=1");
        out.require(fin && fin->holds, "final with M=1, l(p-1)=0.5");
        if (j2 && fin)
            out.detail << "J2 needs M>=" << j2->required << ", final needs M>=" << fin->required << "  ";
    }
    const ProblemParams pp(4, 2.0);
    for (double c : {2.0, 4.0, 16.0}) {
        const double brute = oracle::brute_force_log_max(c);
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            BarrierParams bp = default_barrier(pp, 10, eps);
            bp.c = c;
            const auto checks = check_key_inequalities(bp, pp, 1.0, 0.0, inner_band_grid(bp, 5000));
            const auto* lb = find(checks, "log_bounded");
            out.require(lb && lb->holds && lb->required <= brute * (1 + 1e-9) && brute <= lb->supplied,
                        "log bound c=" + std::to_string(c) + " eps=" + std::to_string(eps));
        }
        out.detail << "c=" << c << " sup=" << brute << " ";
    }
}

void solver_validation(Outcome& out)
{
    const ProblemParams pp(3, 2.0);
    std::vector<ConvergenceCase> space;
    for (int m : {10, 20, 40, 80}) {
        const double h = 1.0 / (m + 1);
        space.push_back({m, 0.05 * h * h});
    }
    const auto s = convergence_study(mms::sine_decay(), pp, 1.0, 2.0, space, 0.1, true);
    std::vector<ConvergenceCase> time;
    for (double dt : {0.04, 0.02, 0.01, 0.005})
        time.push_back({20, dt});
    const auto t = convergence_study(mms::linear_decay(), pp, 1.0, 2.0, time, 1.0, false);
    for (double q : s.orders)
        out.require(q >= 1.8 && q <= 2.2, "spatial order " + std::to_string(q));
    for (double q : t.orders)
        out.require(q >= 0.8 && q <= 1.2, "temporal order " + std::to_string(q));
    out.detail << "orders space";
    for (double q : s.orders)
        out.detail << " " << q;
    out.detail << ", time";
    for (double q : t.orders)
        out.detail << " " << q;
    out.detail << "  ";

    const RadialGrid g = build_grid(0.5, 3, 20, Spacing::Uniform);
    const std::vector<double> one(g.size(), 1.0);
    const auto ode = solve(one, g, {BoundarySide::neumann_zero(), BoundarySide::neumann_zero()}, pp, 1.0, 1e-4);
    const double err = std::abs(ode.snapshots.back().values[10] - oracle::ode_closed_form(1.0, 2.0, 1.0));
    out.require(err <= 1e-3, "ODE error " + std::to_string(err));
    out.detail << "ODE err " << err << "  ";

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int negative = 0, boundary_order = 0, data_order = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const ProblemParams q(2 + int(6 * u(rng)), 1.1 + 3 * u(rng));
        const double eps = 0.001 + 0.2 * u(rng);
        const double R = eps + 0.5 + 5 * u(rng);
        const RadialGrid grid = u(rng) < 0.5 ? build_grid(eps, R, 30, Spacing::Uniform)
                                             : build_grid(eps, R, 30, Spacing::Geometric, 1.0 + 0.1 * u(rng));
        std::vector<double> g1(grid.size()), g2(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            g1[i] = 5 * u(rng);
            g2[i] = g1[i] + 2 * u(rng);
        }
        const double M1 = 100 * u(rng), M2 = M1 + 100 * u(rng);
        const double dt = 1e-3 + 0.05 * u(rng);
        const BoundaryCondition b1{BoundarySide::dirichlet(M1), BoundarySide::dirichlet(M1 * u(rng))};
        const BoundaryCondition b2{BoundarySide::dirichlet(M2), b1.outer};
        const auto a = solve(g1, grid, b1, q, 0.2, dt).snapshots.back().values;
        const auto b = solve(g1, grid, b2, q, 0.2, dt).snapshots.back().values;
        const auto c = solve(g2, grid, b1, q, 0.2, dt).snapshots.back().values;
        bool neg = false, bo = false, da = false;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            neg |= a[i] < 0 || b[i] < 0 || c[i] < 0;
            bo |= a[i] > b[i] * (1 + 1e-12) + 1e-12;
            da |= a[i] > c[i] * (1 + 1e-12) + 1e-12;
        }
        negative += neg;
        boundary_order += bo;
        data_order += da;
    }
    out.require(negative == 0, std::to_string(negative) + " trials went negative");
    out.require(boundary_order == 0, std::to_string(boundary_order) + " boundary-comparison failures");
    out.require(data_order == 0, std::to_string(data_order) + " initial-data-comparison failures");
    out.detail << "1000 trials: " << negative << "/" << boundary_order << "/" << data_order << " failures";
}

void dichotomy(Outcome& out)
{
    const Schedule s = default_schedule();
    const auto sub = run_schedule(ProblemParams(3, 2.0), s);
    const auto sup = run_schedule(ProblemParams(5, 2.0), s);
    const auto two = run_schedule(ProblemParams(2, 2.0), s);
    out.require(sub.verdict == Verdict::Nontrivial && sub.probe_values.back() > 1e-2, "n=3 p=2");
    out.require(sup.verdict == Verdict::Trivial && sup.probe_values.back() < 1e-3, "n=5 p=2");
    out.require(two.verdict == Verdict::Nontrivial, "n=2 p=2");
    out.detail << "n=3: " << to_string(sub.verdict) << " u=" << sub.probe_values.back() << "  n=5: "
               << to_string(sup.verdict) << " u=" << sup.probe_values.back() << "  n=2: " << to_string(two.verdict)
               << " u=" << two.probe_values.back();
}

void bracketing(Outcome& out)
{
    for (auto& [n, ps] : std::vector<std::pair<int, std::vector<double>>>{{3, {1.5, 2, 2.5, 3.5, 4, 5}},
                                                                            {4, {1.5, 1.8, 2.2, 2.5}}}) {
        SweepSpec spec;
        spec.n = n;
        spec.p_values = ps;
        spec.jobs = 4;
        const SweepResult r = sweep_p(spec);
        if (!r.estimated_pc) {
            out.require(false, "n=" + std::to_string(n) + " produced no estimate");
            continue;
        }
        const auto cmp = estimate_critical_exponent(r, n);
        out.require(cmp.bracketed, "n=" + std::to_string(n) + " bracket misses " + std::to_string(cmp.truth));
        out.detail << "n=" << n << " bracket [" << cmp.bracket_lo << ", " << cmp.bracket_hi << "] est "
                   << cmp.estimated << " true " << cmp.truth << "  ";
    }
}

void domination(Outcome& out)
{
    const ProblemParams pp(5, 2.0);
    const BarrierParams bp = verified_barrier(pp, 10, 0.01);
    out.require(verify_supersolution(bp, pp).passed, "barrier not verified");
    const RadialGrid g = build_graded_grid(0.01, 10, 5e-4, 1.05);
    const std::vector<double> zero(g.size(), 0.0);
    std::vector<double> times;
    for (int k = 1; k < 20; ++k)
        times.push_back(0.05 * k);
    const auto tr = solve(zero, g, {BoundarySide::dirichlet(1e3), BoundarySide::dirichlet(1e3)}, pp, 1.0, 1e-3, times);
    const auto rep = check_domination(tr, bp, pp);
    out.require(rep.dominated && rep.max_ratio < 1.0, "max ratio " + std::to_string(rep.max_ratio));
    out.detail << tr.snapshots.size() << " snapshots, max u/psi " << rep.max_ratio << " at r=" << rep.r_at
               << " t=" << rep.t_at;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "stationary oracle", 1, stationary_oracle},
        {"AC2", "defect identity", 5, defect_identity},
        {"AC3", "barrier verification", 60, barrier_verification},
        {"AC4", "key inequalities", 10, key_inequalities},
        {"AC5", "solver validation", 120, solver_validation},
        {"AC6", "dichotomy reproduction", 600, dichotomy},
        {"AC7", "critical-exponent bracketing", 1800, bracketing},
        {"AC8", "barrier domination", 60, domination},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.require(elapsed <= c.budget_s, "over budget");
        std::printf("%s %s %s (%.2fs / %.0fs) %s\n", c.id, out.pass ? "PASS" : "FAIL", c.title, elapsed, c.budget_s,
                    out.detail.str().c_str());
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
