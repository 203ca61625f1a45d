#include "punct/punct.h"

#include "punct/barrier.hpp"
#include "punct/core.hpp"
#include "punct/errors.hpp"
#include "punct/experiments.hpp"
#include "punct/maximal.hpp"
#include "punct/report_io.hpp"
#include "punct/solver.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

struct punct_verification {
    punct::VerificationReport report;
};

struct punct_inequalities {
    std::vector<punct::InequalityCheck> checks;
};

struct punct_trajectory {
    punct::Trajectory traj;
};

struct punct_maximal_report {
    punct::MaximalRunReport report;
    punct::ProblemParams params;
};

struct punct_sweep_result {
    punct::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

template <class F>
punct_status guarded(F&& body) noexcept
{
    try {
        body();
        g_last_error.clear();
        return PUNCT_OK;
    } catch (const punct::DomainError& e) {
        g_last_error = e.what();
        return PUNCT_ERR_DOMAIN;
    } catch (const punct::RegimeError& e) {
        g_last_error = e.what();
        return PUNCT_ERR_REGIME;
    } catch (const punct::RegimeMismatch& e) {
        g_last_error = e.what();
        return PUNCT_ERR_REGIME_MISMATCH;
    } catch (const punct::NotFound& e) {
        g_last_error = e.what();
        return PUNCT_ERR_NOT_FOUND;
    } catch (const punct::SolveError& e) {
        g_last_error = e.what();
        return PUNCT_ERR_SOLVE;
    } catch (const punct::ScheduleError& e) {
        g_last_error = e.what();
        return PUNCT_ERR_SCHEDULE;
    } catch (const punct::MissingEstimate& e) {
        g_last_error = e.what();
        return PUNCT_ERR_MISSING_ESTIMATE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return PUNCT_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PUNCT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return PUNCT_ERR_INTERNAL;
    }
}

template <class T>
const T& require(const T* ptr, const char* what)
{
    if (ptr == nullptr)
        throw std::invalid_argument(std::string(what) + " is null");
    return *ptr;
}

template <class T>
T& require_out(T* ptr, const char* what)
{
    if (ptr == nullptr)
        throw std::invalid_argument(std::string(what) + " output pointer is null");
    return *ptr;
}

char* copy_string(const std::string& s)
{
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

punct::BarrierParams to_cpp(const punct_barrier_params& b)
{
    punct::BarrierParams bp;
    bp.kind = b.kind == PUNCT_BARRIER_BORDERLINE ? punct::BarrierCase::Borderline : punct::BarrierCase::General;
    bp.R = b.R;
    bp.epsilon = b.epsilon;
    bp.gamma = b.gamma;
    bp.l = b.l;
    bp.c = b.c;
    bp.delta0 = b.delta0;
    return bp;
}

punct_barrier_params to_c(const punct::BarrierParams& bp)
{
    return {bp.kind == punct::BarrierCase::Borderline ? PUNCT_BARRIER_BORDERLINE : PUNCT_BARRIER_GENERAL,
            bp.R, bp.epsilon, bp.gamma, bp.l, bp.c, bp.delta0};
}

punct::ScanSpec to_cpp(const punct_scan_spec* s)
{
    punct::ScanSpec scan;
    if (s != nullptr) {
        scan.r_count = s->r_count;
        scan.t_max = s->t_max;
        scan.t_count = s->t_count;
    }
    return scan;
}

punct::ReactionTreatment to_cpp(punct_reaction r)
{
    return r == PUNCT_REACTION_SEMI_IMPLICIT ? punct::ReactionTreatment::SemiImplicit
                                             : punct::ReactionTreatment::Implicit;
}

punct::BoundarySide side(punct_bc_kind kind, double value)
{
    return kind == PUNCT_BC_NEUMANN_ZERO ? punct::BoundarySide::neumann_zero() : punct::BoundarySide::dirichlet(value);
}

punct::RadialGrid to_grid(const punct_grid_spec& g)
{
    if (g.first_gap > 0.0)
        return punct::build_graded_grid(g.epsilon, g.R, g.first_gap, g.ratio);
    return punct::build_grid(g.epsilon, g.R, g.count,
                             g.spacing == PUNCT_SPACING_GEOMETRIC ? punct::Spacing::Geometric : punct::Spacing::Uniform,
                             g.spacing == PUNCT_SPACING_GEOMETRIC ? g.ratio : 1.0);
}

punct::Schedule to_cpp(const punct_schedule& s)
{
    punct::Schedule out;
    if (s.stages > 0 && (s.eps == nullptr || s.R == nullptr || (s.saturation <= 0.0 && s.M == nullptr)))
        throw std::invalid_argument("schedule arrays are null");
    out.eps_seq.assign(s.eps, s.eps + s.stages);
    out.R_seq.assign(s.R, s.R + s.stages);
    if (s.saturation <= 0.0)
        out.M_seq.assign(s.M, s.M + s.stages);
    out.t_end = s.t_end;
    out.probe_r = s.probe_r;
    out.theta = s.theta;
    out.window = s.window;
    out.saturation = s.saturation;
    out.outer_zero = s.outer_zero != 0;
    return out;
}

punct::SolverConfig to_cpp(const punct_solver_config* c)
{
    punct::SolverConfig cfg;
    if (c != nullptr) {
        cfg.dt = c->dt;
        cfg.grid_ratio = c->grid_ratio;
        cfg.first_gap_fraction = c->first_gap_fraction;
        cfg.reaction = to_cpp(c->reaction);
    }
    return cfg;
}

punct_verdict to_c(punct::Verdict v)
{
    switch (v) {
    case punct::Verdict::Trivial:
        return PUNCT_VERDICT_TRIVIAL;
    case punct::Verdict::Nontrivial:
        return PUNCT_VERDICT_NONTRIVIAL;
    default:
        return PUNCT_VERDICT_INCONCLUSIVE;
    }
}

void fill_c_schedule(const punct::Schedule& s, punct_schedule* out)
{
    out->M = s.M_seq.empty() ? nullptr : s.M_seq.data();
    out->eps = s.eps_seq.data();
    out->R = s.R_seq.data();
    out->stages = s.eps_seq.size();
    out->t_end = s.t_end;
    out->probe_r = s.probe_r;
    out->theta = s.theta;
    out->window = s.window;
    out->saturation = s.saturation;
    out->outer_zero = s.outer_zero ? 1 : 0;
}

} // namespace

extern "C" {

const char* punct_status_name(punct_status status)
{
    switch (status) {
    case PUNCT_OK:
        return "ok";
    case PUNCT_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case PUNCT_ERR_DOMAIN:
        return "domain error";
    case PUNCT_ERR_REGIME:
        return "regime error";
    case PUNCT_ERR_REGIME_MISMATCH:
        return "regime mismatch";
    case PUNCT_ERR_NOT_FOUND:
        return "not found";
    case PUNCT_ERR_SOLVE:
        return "solve error";
    case PUNCT_ERR_SCHEDULE:
        return "schedule error";
    case PUNCT_ERR_MISSING_ESTIMATE:
        return "missing estimate";
    case PUNCT_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* punct_last_error(void) { return g_last_error.c_str(); }

void punct_string_free(char* s) { std::free(s); }

const char* punct_regime_name(punct_regime_tag tag)
{
    switch (tag) {
    case PUNCT_SUBCRITICAL:
        return "Subcritical";
    case PUNCT_CRITICAL:
        return "Critical";
    case PUNCT_SUPERCRITICAL:
        return "Supercritical";
    }
    return "Unknown";
}

punct_status punct_classify_regime(int n, double p, punct_regime_tag* tag, double* critical_exponent)
{
    return guarded([&] {
        const punct::Regime r = punct::classify_regime(punct::ProblemParams(n, p));
        require_out(tag, "tag") = static_cast<punct_regime_tag>(static_cast<int>(r.tag));
        if (critical_exponent != nullptr)
            *critical_exponent = r.critical_exponent;
    });
}

punct_status punct_stationary_amplitude(int n, double p, double* amplitude)
{
    return guarded([&] {
        require_out(amplitude, "amplitude") = punct::stationary_amplitude(punct::ProblemParams(n, p)).amplitude;
    });
}

punct_status punct_stationary_value(double amplitude, double p, double r, double* value)
{
    return guarded([&] {
        if (!(p > 1.0))
            throw punct::DomainError("p must exceed 1");
        require_out(value, "value") = punct::stationary_value({amplitude, 2.0 / (p - 1.0)}, r);
    });
}

punct_status punct_radial_residual(int n, double p, double u, double du, double ddu, double r, double* residual)
{
    return guarded([&] {
        require_out(residual, "residual") = punct::radial_residual(u, du, ddu, r, punct::ProblemParams(n, p));
    });
}

punct_status punct_barrier_defaults(int n, double p, double R, double epsilon, punct_barrier_params* out)
{
    return guarded([&] { require_out(out, "params") = to_c(punct::default_barrier(punct::ProblemParams(n, p), R, epsilon)); });
}

void punct_scan_defaults(punct_scan_spec* out)
{
    if (out == nullptr)
        return;
    const punct::ScanSpec s;
    *out = {s.r_count, s.t_max, s.t_count};
}

punct_status punct_phi(int n, double p, const punct_barrier_params* bp, double r, double* value)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        const punct::BarrierParams b = to_cpp(require(bp, "barrier params"));
        punct::validate(b, params);
        require_out(value, "value") = punct::phi(r, b, params);
    });
}

punct_status punct_psi(int n, double p, const punct_barrier_params* bp, double r, double t, double* value)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        const punct::BarrierParams b = to_cpp(require(bp, "barrier params"));
        punct::validate(b, params);
        require_out(value, "value") = punct::psi(r, t, b, params);
    });
}

punct_status punct_term_breakdown(int n, double p, const punct_barrier_params* bp, double r, double t, punct_terms* out)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        const punct::BarrierParams b = to_cpp(require(bp, "barrier params"));
        punct::validate(b, params);
        const punct::TermBreakdown tb = punct::term_breakdown(r, t, b, params);
        punct_terms& o = require_out(out, "terms");
        for (int i = 0; i < 7; ++i)
            o.J[i] = tb.J[static_cast<std::size_t>(i)];
        for (int i = 0; i < 5; ++i)
            o.I[i] = tb.I[static_cast<std::size_t>(i)];
        o.sum = tb.sum;
        o.prefactor = tb.prefactor;
    });
}

punct_status punct_defect(int n, double p, const punct_barrier_params* bp, double r, double t, double* value)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        const punct::BarrierParams b = to_cpp(require(bp, "barrier params"));
        punct::validate(b, params);
        require_out(value, "value") = punct::defect(r, t, b, params);
    });
}

punct_status punct_verify_supersolution(int n, double p, const punct_barrier_params* bp, const punct_scan_spec* scan,
                                        punct_verification** out)
{
    return guarded([&] {
        auto& slot = require_out(out, "verification");
        slot = nullptr;
        const punct::ProblemParams params(n, p);
        auto report = punct::verify_supersolution(to_cpp(require(bp, "barrier params")), params, to_cpp(scan));
        slot = new punct_verification{std::move(report)};
    });
}

int punct_verification_passed(const punct_verification* v) { return v != nullptr && v->report.passed ? 1 : 0; }

double punct_verification_max_sum(const punct_verification* v) { return v != nullptr ? v->report.max_sum : 0.0; }

void punct_verification_argmax(const punct_verification* v, double* r, double* t)
{
    if (v == nullptr)
        return;
    if (r != nullptr)
        *r = v->report.r_at;
    if (t != nullptr)
        *t = v->report.t_at;
}

char* punct_verification_text(const punct_verification* v)
{
    return v != nullptr ? copy_string(punct::verification_text(v->report)) : nullptr;
}

char* punct_verification_csv(const punct_verification* v)
{
    return v != nullptr ? copy_string(punct::verification_csv(v->report)) : nullptr;
}

void punct_verification_free(punct_verification* v) { delete v; }

punct_status punct_search_gamma(int n, double p, const punct_barrier_params* bp_template, const punct_scan_spec* scan,
                                double gamma_cap, double* gamma)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        require_out(gamma, "gamma") = punct::search_gamma(to_cpp(require(bp_template, "barrier params")), params,
                                                          to_cpp(scan), gamma_cap > 0.0 ? gamma_cap : 1e6);
    });
}

punct_status punct_search_c(int n, double p, const punct_barrier_params* bp_template, double* c)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        require_out(c, "c") = punct::search_c(to_cpp(require(bp_template, "barrier params")), params);
    });
}

punct_status punct_check_key_inequalities(int n, double p, const punct_barrier_params* bp, double M, double kappa,
                                          const double* r_grid, size_t count, punct_inequalities** out)
{
    return guarded([&] {
        auto& slot = require_out(out, "inequalities");
        slot = nullptr;
        const punct::ProblemParams params(n, p);
        const punct::BarrierParams b = to_cpp(require(bp, "barrier params"));
        std::vector<double> grid = r_grid != nullptr ? std::vector<double>(r_grid, r_grid + count)
                                                     : punct::inner_band_grid(b, static_cast<int>(count));
        slot = new punct_inequalities{punct::check_key_inequalities(b, params, M, kappa, grid)};
    });
}

size_t punct_inequalities_count(const punct_inequalities* q) { return q != nullptr ? q->checks.size() : 0; }

const char* punct_inequalities_name(const punct_inequalities* q, size_t i)
{
    return q != nullptr && i < q->checks.size() ? q->checks[i].name.c_str() : nullptr;
}

int punct_inequalities_holds(const punct_inequalities* q, size_t i)
{
    return q != nullptr && i < q->checks.size() && q->checks[i].holds ? 1 : 0;
}

double punct_inequalities_required(const punct_inequalities* q, size_t i)
{
    return q != nullptr && i < q->checks.size() ? q->checks[i].required : 0.0;
}

double punct_inequalities_supplied(const punct_inequalities* q, size_t i)
{
    return q != nullptr && i < q->checks.size() ? q->checks[i].supplied : 0.0;
}

void punct_inequalities_free(punct_inequalities* q) { delete q; }

punct_status punct_grid_node_count(const punct_grid_spec* grid, size_t* count)
{
    return guarded([&] { require_out(count, "count") = to_grid(require(grid, "grid spec")).size(); });
}

punct_status punct_solve(int n, double p, const punct_grid_spec* grid, const punct_boundary* bc, const double* g,
                         size_t g_count, double t_end, double dt, const double* output_times, size_t output_count,
                         punct_reaction reaction, punct_trajectory** out)
{
    return guarded([&] {
        auto& slot = require_out(out, "trajectory");
        slot = nullptr;
        const punct::ProblemParams params(n, p);
        const punct::RadialGrid rg = to_grid(require(grid, "grid spec"));
        const punct_boundary& b = require(bc, "boundary");
        const punct::BoundaryCondition cond{side(b.inner_kind, b.inner_value), side(b.outer_kind, b.outer_value)};
        std::vector<double> initial(rg.size(), 0.0);
        if (g != nullptr) {
            if (g_count != rg.size())
                throw punct::DomainError("initial data has " + std::to_string(g_count) + " values, grid has " +
                                         std::to_string(rg.size()));
            initial.assign(g, g + g_count);
        }
        std::vector<double> times;
        if (output_times != nullptr)
            times.assign(output_times, output_times + output_count);
        auto traj = punct::solve(initial, rg, cond, params, t_end, dt > 0.0 ? dt : punct::default_dt(t_end), times,
                                 {to_cpp(reaction)});
        slot = new punct_trajectory{std::move(traj)};
    });
}

size_t punct_trajectory_node_count(const punct_trajectory* tr) { return tr != nullptr ? tr->traj.grid.size() : 0; }

double punct_trajectory_node(const punct_trajectory* tr, size_t i)
{
    return tr != nullptr && i < tr->traj.grid.size() ? tr->traj.grid.nodes[i] : 0.0;
}

size_t punct_trajectory_snapshot_count(const punct_trajectory* tr) { return tr != nullptr ? tr->traj.snapshots.size() : 0; }

double punct_trajectory_time(const punct_trajectory* tr, size_t k)
{
    return tr != nullptr && k < tr->traj.snapshots.size() ? tr->traj.snapshots[k].time : 0.0;
}

double punct_trajectory_value(const punct_trajectory* tr, size_t k, size_t i)
{
    if (tr == nullptr || k >= tr->traj.snapshots.size() || i >= tr->traj.grid.size())
        return 0.0;
    return tr->traj.snapshots[k].values[i];
}

char* punct_trajectory_csv(const punct_trajectory* tr)
{
    return tr != nullptr ? copy_string(punct::trajectory_csv(tr->traj)) : nullptr;
}

void punct_trajectory_free(punct_trajectory* tr) { delete tr; }

punct_status punct_check_domination(const punct_trajectory* tr, int n, double p, const punct_barrier_params* bp,
                                    int* dominated, double* max_ratio)
{
    return guarded([&] {
        const punct::ProblemParams params(n, p);
        const auto rep = punct::check_domination(require(tr, "trajectory").traj, to_cpp(require(bp, "barrier params")),
                                                 params);
        require_out(dominated, "dominated") = rep.dominated ? 1 : 0;
        if (max_ratio != nullptr)
            *max_ratio = rep.max_ratio;
    });
}

void punct_default_schedule(punct_schedule* out)
{
    static const punct::Schedule s = punct::default_schedule();
    if (out != nullptr)
        fill_c_schedule(s, out);
}

void punct_saturated_schedule(punct_schedule* out)
{
    static const punct::Schedule s = punct::saturated_schedule();
    if (out != nullptr)
        fill_c_schedule(s, out);
}

void punct_solver_config_defaults(punct_solver_config* out)
{
    if (out == nullptr)
        return;
    const punct::SolverConfig c;
    *out = {c.dt, c.grid_ratio, c.first_gap_fraction, PUNCT_REACTION_IMPLICIT};
}

const char* punct_verdict_name(punct_verdict v)
{
    switch (v) {
    case PUNCT_VERDICT_TRIVIAL:
        return "Trivial";
    case PUNCT_VERDICT_NONTRIVIAL:
        return "Nontrivial";
    case PUNCT_VERDICT_INCONCLUSIVE:
        return "Inconclusive";
    }
    return "Unknown";
}

punct_verdict punct_classify_dichotomy(const double* values, size_t count, double theta, int window)
{
    if (values == nullptr)
        return PUNCT_VERDICT_INCONCLUSIVE;
    return to_c(punct::classify_dichotomy(std::span<const double>(values, count), theta, window));
}

punct_status punct_run_schedule(int n, double p, const punct_schedule* schedule, const punct_solver_config* config,
                                punct_maximal_report** out)
{
    return guarded([&] {
        auto& slot = require_out(out, "report");
        slot = nullptr;
        const punct::ProblemParams params(n, p);
        auto report = punct::run_schedule(params, to_cpp(require(schedule, "schedule")), to_cpp(config));
        slot = new punct_maximal_report{std::move(report), params};
    });
}

punct_verdict punct_maximal_verdict(const punct_maximal_report* m)
{
    return m != nullptr ? to_c(m->report.verdict) : PUNCT_VERDICT_INCONCLUSIVE;
}

size_t punct_maximal_stage_count(const punct_maximal_report* m) { return m != nullptr ? m->report.stages.size() : 0; }

double punct_maximal_probe_value(const punct_maximal_report* m, size_t k)
{
    return m != nullptr && k < m->report.probe_values.size() ? m->report.probe_values[k] : 0.0;
}

int punct_maximal_monotonicity_ok(const punct_maximal_report* m)
{
    return m != nullptr && m->report.monotonicity_ok ? 1 : 0;
}

char* punct_maximal_text(const punct_maximal_report* m)
{
    return m != nullptr ? copy_string(punct::maximal_text(m->report, m->params)) : nullptr;
}

char* punct_maximal_csv(const punct_maximal_report* m)
{
    return m != nullptr ? copy_string(punct::maximal_csv(m->report)) : nullptr;
}

void punct_maximal_free(punct_maximal_report* m) { delete m; }

punct_status punct_sweep(int n, const double* p_values, size_t count, const punct_schedule* schedule,
                         const punct_solver_config* config, int jobs, punct_sweep_result** out)
{
    return guarded([&] {
        auto& slot = require_out(out, "sweep");
        slot = nullptr;
        punct::SweepSpec spec;
        spec.n = n;
        if (p_values == nullptr && count > 0)
            throw std::invalid_argument("p_values is null");
        spec.p_values.assign(p_values, p_values + count);
        spec.schedule = to_cpp(require(schedule, "schedule"));
        spec.solver = to_cpp(config);
        spec.jobs = jobs;
        slot = new punct_sweep_result{punct::sweep_p(spec)};
    });
}

size_t punct_sweep_row_count(const punct_sweep_result* s) { return s != nullptr ? s->result.rows.size() : 0; }

double punct_sweep_row_p(const punct_sweep_result* s, size_t i)
{
    return s != nullptr && i < s->result.rows.size() ? s->result.rows[i].p : 0.0;
}

punct_verdict punct_sweep_row_verdict(const punct_sweep_result* s, size_t i)
{
    return s != nullptr && i < s->result.rows.size() ? to_c(s->result.rows[i].verdict) : PUNCT_VERDICT_INCONCLUSIVE;
}

int punct_sweep_has_estimate(const punct_sweep_result* s) { return s != nullptr && s->result.estimated_pc ? 1 : 0; }

double punct_sweep_estimate(const punct_sweep_result* s)
{
    return s != nullptr && s->result.estimated_pc ? *s->result.estimated_pc : 0.0;
}

char* punct_sweep_csv(const punct_sweep_result* s)
{
    return s != nullptr ? copy_string(punct::sweep_csv(s->result)) : nullptr;
}

char* punct_sweep_json(const punct_sweep_result* s)
{
    return s != nullptr ? copy_string(punct::sweep_json(s->result)) : nullptr;
}

void punct_sweep_free(punct_sweep_result* s) { delete s; }

punct_status punct_estimate_critical_exponent(const punct_sweep_result* s, int n, double* estimated, double* truth,
                                              double* relative_gap, int* bracketed)
{
    return guarded([&] {
        const auto cmp = punct::estimate_critical_exponent(require(s, "sweep").result, n);
        if (estimated != nullptr)
            *estimated = cmp.estimated;
        if (truth != nullptr)
            *truth = cmp.truth;
        if (relative_gap != nullptr)
            *relative_gap = cmp.relative_gap;
        if (bracketed != nullptr)
            *bracketed = cmp.bracketed ? 1 : 0;
    });
}

} // extern "C"
