// punct: command-line front end. Talks to the library only through punct.h.

#include "punct/punct.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kConfig = 2, kVerifyFailed = 3, kNotFound = 4, kSolver = 5 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Library failure carrying the exit code it maps to.
struct RunError : std::runtime_error {
    int code;
    RunError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

void check(punct_status st)
{
    if (st == PUNCT_OK)
        return;
    const std::string msg = std::string(punct_status_name(st)) + ": " + punct_last_error();
    switch (st) {
    case PUNCT_ERR_NOT_FOUND:
        throw RunError(kNotFound, msg);
    case PUNCT_ERR_SOLVE:
    case PUNCT_ERR_INTERNAL:
        throw RunError(kSolver, msg);
    default:
        throw RunError(kConfig, msg);
    }
}

std::string owned(char* s)
{
    std::string out = s != nullptr ? s : "";
    punct_string_free(s);
    return out;
}

struct RunConfig {
    int n = 3;
    double p = 2.0;

    // shared annulus (barrier and single solves)
    double R = 10.0;
    double eps = 0.01;

    std::optional<std::string> barrier_case; // derived from the regime when absent
    std::optional<double> gamma;             // searched when absent
    std::optional<double> l;
    double c = 2.0;
    double delta0 = 0.1;
    punct_scan_spec scan{200, 1.0, 5};
    double gamma_cap = 1e6;

    double t_end = 1.0;
    double dt = 0.0;
    int grid_count = 200;
    std::string spacing = "geometric";
    double grid_ratio = 1.03;
    double first_gap = 0.0;
    std::string inner_kind = "dirichlet";
    double inner_value = 1000.0;
    std::string outer_kind = "dirichlet";
    double outer_value = 0.0;
    double initial = 0.0;
    std::vector<double> output_times;
    std::string reaction = "implicit";
    bool check_barrier = false;

    std::string preset = "default";
    std::optional<std::vector<double>> M_seq, eps_seq, R_seq;
    std::optional<double> schedule_t_end, probe_r, theta, saturation;
    std::optional<int> window;
    bool outer_zero = false;
    double solver_dt = 0.0;
    double solver_ratio = 1.05;
    double first_gap_fraction = 0.05;

    std::vector<double> p_values;
    int jobs = std::max(1u, std::thread::hardware_concurrency());
};

// ---- JSON reading with field paths -----------------------------------------

class Section {
public:
    Section(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(where() + "expected an object");
        for (const auto& [key, _] : j_.items()) {
            if (!allowed.count(key))
                throw ConfigError(where(key) + "unknown field");
        }
    }

    template <class T>
    void read(const char* key, T& target) const
    {
        if (!j_.contains(key))
            return;
        target = convert<T>(j_.at(key), where(key));
    }

    template <class T>
    void read(const char* key, std::optional<T>& target) const
    {
        if (!j_.contains(key))
            return;
        target = convert<T>(j_.at(key), where(key));
    }

    bool has(const char* key) const { return j_.contains(key); }
    Section sub(const char* key, std::set<std::string> allowed) const
    {
        return Section(j_.at(key), path_.empty() ? key : path_ + "." + key, std::move(allowed));
    }

private:
    template <class T>
    static T convert(const json& v, const std::string& where)
    {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean())
                throw ConfigError(where + "expected true or false");
            return v.get<bool>();
        } else if constexpr (std::is_same_v<T, int>) {
            if (!v.is_number_integer())
                throw ConfigError(where + "expected an integer");
            return v.get<int>();
        } else if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number())
                throw ConfigError(where + "expected a number");
            return v.get<double>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string())
                throw ConfigError(where + "expected a string");
            return v.get<std::string>();
        } else {
            if (!v.is_array())
                throw ConfigError(where + "expected an array of numbers");
            std::vector<double> out;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number())
                    throw ConfigError(where.substr(0, where.size() - 2) + "[" + std::to_string(i) +
                                      "]: expected a number");
                out.push_back(v[i].get<double>());
            }
            return out;
        }
    }

    std::string where(const std::string& key = "") const
    {
        std::string p = path_;
        if (!key.empty())
            p = p.empty() ? key : p + "." + key;
        return (p.empty() ? "config" : p) + ": ";
    }

    const json& j_;
    std::string path_;
};

void load_config(const std::string& file, RunConfig& cfg)
{
    std::ifstream in(file);
    if (!in)
        throw ConfigError("config: cannot open " + file);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + file + ": " + e.what());
    }
    const Section top(root, "", {"problem", "annulus", "barrier", "scan", "solve", "schedule", "solver", "sweep"});
    if (top.has("problem")) {
        const Section s = top.sub("problem", {"n", "p"});
        s.read("n", cfg.n);
        s.read("p", cfg.p);
    }
    if (top.has("annulus")) {
        const Section s = top.sub("annulus", {"R", "eps"});
        s.read("R", cfg.R);
        s.read("eps", cfg.eps);
    }
    if (top.has("barrier")) {
        const Section s = top.sub("barrier", {"case", "gamma", "l", "c", "delta0", "gamma_cap"});
        s.read("case", cfg.barrier_case);
        s.read("gamma", cfg.gamma);
        s.read("l", cfg.l);
        s.read("c", cfg.c);
        s.read("delta0", cfg.delta0);
        s.read("gamma_cap", cfg.gamma_cap);
    }
    if (top.has("scan")) {
        const Section s = top.sub("scan", {"r_count", "t_max", "t_count"});
        s.read("r_count", cfg.scan.r_count);
        s.read("t_max", cfg.scan.t_max);
        s.read("t_count", cfg.scan.t_count);
    }
    if (top.has("solve")) {
        const Section s = top.sub("solve", {"t_end", "dt", "grid", "inner", "outer", "initial", "output_times",
                                            "reaction", "check_barrier"});
        s.read("t_end", cfg.t_end);
        s.read("dt", cfg.dt);
        s.read("initial", cfg.initial);
        s.read("output_times", cfg.output_times);
        s.read("reaction", cfg.reaction);
        s.read("check_barrier", cfg.check_barrier);
        if (s.has("grid")) {
            const Section g = s.sub("grid", {"count", "spacing", "ratio", "first_gap"});
            g.read("count", cfg.grid_count);
            g.read("spacing", cfg.spacing);
            g.read("ratio", cfg.grid_ratio);
            g.read("first_gap", cfg.first_gap);
        }
        if (s.has("inner")) {
            const Section b = s.sub("inner", {"kind", "value"});
            b.read("kind", cfg.inner_kind);
            b.read("value", cfg.inner_value);
        }
        if (s.has("outer")) {
            const Section b = s.sub("outer", {"kind", "value"});
            b.read("kind", cfg.outer_kind);
            b.read("value", cfg.outer_value);
        }
    }
    if (top.has("schedule")) {
        const Section s = top.sub("schedule", {"preset", "M", "eps", "R", "t_end", "probe_r", "theta", "window",
                                               "saturation", "outer_zero"});
        s.read("preset", cfg.preset);
        s.read("M", cfg.M_seq);
        s.read("eps", cfg.eps_seq);
        s.read("R", cfg.R_seq);
        s.read("t_end", cfg.schedule_t_end);
        s.read("probe_r", cfg.probe_r);
        s.read("theta", cfg.theta);
        s.read("window", cfg.window);
        s.read("saturation", cfg.saturation);
        s.read("outer_zero", cfg.outer_zero);
    }
    if (top.has("solver")) {
        const Section s = top.sub("solver", {"dt", "grid_ratio", "first_gap_fraction"});
        s.read("dt", cfg.solver_dt);
        s.read("grid_ratio", cfg.solver_ratio);
        s.read("first_gap_fraction", cfg.first_gap_fraction);
    }
    if (top.has("sweep")) {
        const Section s = top.sub("sweep", {"p_values", "jobs"});
        s.read("p_values", cfg.p_values);
        s.read("jobs", cfg.jobs);
    }
}

// ---- parse-time validation ---------------------------------------------------

void need(bool ok, const std::string& field, const std::string& rule)
{
    if (!ok)
        throw ConfigError(field + ": " + rule);
}

void validate_problem(const RunConfig& c)
{
    need(c.n >= 2, "problem.n (--n)", "must be an integer >= 2");
    need(c.p > 1.0 && std::isfinite(c.p), "problem.p (--p)", "must be finite and > 1");
}

void validate_annulus(const RunConfig& c)
{
    need(c.eps > 0.0 && c.eps < 1.0, "annulus.eps (--eps)", "must lie in (0, 1)");
    need(c.R > 1.0 && std::isfinite(c.R), "annulus.R (--R)", "must be finite and > 1");
}

void validate_barrier(const RunConfig& c)
{
    validate_annulus(c);
    if (c.barrier_case)
        need(*c.barrier_case == "General" || *c.barrier_case == "Borderline", "barrier.case",
             "must be \"General\" or \"Borderline\"");
    if (c.gamma)
        need(*c.gamma > 0.0 && std::isfinite(*c.gamma), "barrier.gamma (--gamma)", "must be finite and > 0");
    if (c.l) {
        need(*c.l > 0.0 && *c.l <= 1.0, "barrier.l (--l)", "must lie in (0, 1]");
        need(*c.l * (c.p - 1.0) <= 1.0 + 1e-12, "barrier.l (--l)", "must satisfy l(p-1) <= 1");
    }
    need(c.c >= 2.0 && std::isfinite(c.c), "barrier.c (--c)", "must be finite and >= 2");
    need(c.delta0 > c.eps && c.delta0 < 1.0, "barrier.delta0", "must lie in (eps, 1)");
    need(c.gamma_cap > 0.0, "barrier.gamma_cap", "must be positive");
    need(c.scan.r_count >= 2, "scan.r_count", "must be >= 2");
    need(c.scan.t_count >= 1, "scan.t_count", "must be >= 1");
    need(c.scan.t_max >= 0.0, "scan.t_max", "must be >= 0");
}

void validate_solve(const RunConfig& c)
{
    validate_annulus(c);
    need(c.t_end > 0.0, "solve.t_end (--t-end)", "must be positive");
    need(c.dt >= 0.0, "solve.dt (--dt)", "must be >= 0 (0 selects the default)");
    need(c.spacing == "uniform" || c.spacing == "geometric", "solve.grid.spacing", "must be uniform or geometric");
    need(c.grid_count >= 3, "solve.grid.count (--grid-count)", "must be >= 3");
    if (c.spacing == "geometric" || c.first_gap > 0.0)
        need(c.grid_ratio > 1.0 && c.grid_ratio <= 1.1, "solve.grid.ratio", "must lie in (1, 1.1]");
    need(c.first_gap >= 0.0, "solve.grid.first_gap", "must be >= 0");
    for (const auto& [kind, value, name] : {std::tuple{c.inner_kind, c.inner_value, "solve.inner"},
                                            std::tuple{c.outer_kind, c.outer_value, "solve.outer"}}) {
        need(kind == "dirichlet" || kind == "neumann_zero", std::string(name) + ".kind",
             "must be dirichlet or neumann_zero");
        need(value >= 0.0 && std::isfinite(value), std::string(name) + ".value", "must be finite and >= 0");
    }
    need(c.initial >= 0.0 && std::isfinite(c.initial), "solve.initial", "must be finite and >= 0");
    for (std::size_t i = 0; i < c.output_times.size(); ++i) {
        need(c.output_times[i] >= 0.0 && c.output_times[i] <= c.t_end,
             "solve.output_times[" + std::to_string(i) + "]", "must lie in [0, t_end]");
        if (i > 0)
            need(c.output_times[i] > c.output_times[i - 1], "solve.output_times[" + std::to_string(i) + "]",
                 "must be strictly increasing");
    }
    need(c.reaction == "implicit" || c.reaction == "semi_implicit", "solve.reaction",
         "must be implicit or semi_implicit");
    if (c.check_barrier)
        validate_barrier(c);
}

// Schedule arrays live here so the C struct can point into them.
struct ScheduleData {
    std::vector<double> M, eps, R;
    punct_schedule c{};
};

ScheduleData build_schedule(const RunConfig& cfg)
{
    need(cfg.preset == "default" || cfg.preset == "saturated", "schedule.preset (--schedule)",
         "must be default or saturated");
    ScheduleData s;
    punct_schedule base;
    if (cfg.preset == "saturated")
        punct_saturated_schedule(&base);
    else
        punct_default_schedule(&base);
    if (base.M != nullptr)
        s.M.assign(base.M, base.M + base.stages);
    s.eps.assign(base.eps, base.eps + base.stages);
    s.R.assign(base.R, base.R + base.stages);
    s.c = base;
    if (cfg.M_seq)
        s.M = *cfg.M_seq;
    if (cfg.eps_seq)
        s.eps = *cfg.eps_seq;
    if (cfg.R_seq)
        s.R = *cfg.R_seq;
    if (cfg.saturation)
        s.c.saturation = *cfg.saturation;
    if (cfg.schedule_t_end)
        s.c.t_end = *cfg.schedule_t_end;
    if (cfg.probe_r)
        s.c.probe_r = *cfg.probe_r;
    if (cfg.theta)
        s.c.theta = *cfg.theta;
    if (cfg.window)
        s.c.window = *cfg.window;
    s.c.outer_zero = cfg.outer_zero ? 1 : 0;

    const std::size_t k = s.eps.size();
    need(k >= 1, "schedule.eps", "needs at least one stage");
    need(s.R.size() == k, "schedule.R", "must have as many entries as schedule.eps");
    if (s.c.saturation <= 0.0)
        need(s.M.size() == k, "schedule.M", "must have as many entries as schedule.eps");
    for (std::size_t i = 0; i < k; ++i) {
        const std::string idx = "[" + std::to_string(i) + "]";
        need(s.eps[i] > 0.0 && s.eps[i] < 1.0, "schedule.eps" + idx, "must lie in (0, 1)");
        need(s.R[i] > 1.0 && std::isfinite(s.R[i]), "schedule.R" + idx, "must be finite and > 1");
        if (s.c.saturation <= 0.0)
            need(s.M[i] > 0.0 && std::isfinite(s.M[i]), "schedule.M" + idx, "must be finite and positive");
        need(s.c.probe_r > s.eps[i] && s.c.probe_r < s.R[i], "schedule.probe_r",
             "must lie inside every stage annulus (stage " + std::to_string(i) + ")");
        if (i > 0) {
            need(s.eps[i] <= s.eps[i - 1], "schedule.eps" + idx, "must be nonincreasing");
            need(s.R[i] >= s.R[i - 1], "schedule.R" + idx, "must be nondecreasing");
            if (s.c.saturation <= 0.0)
                need(s.M[i] >= s.M[i - 1], "schedule.M" + idx, "must be nondecreasing");
        }
    }
    need(s.c.t_end > 0.0, "schedule.t_end (--t-end)", "must be positive");
    need(s.c.theta > 0.0, "schedule.theta", "must be positive");
    need(s.c.window >= 1, "schedule.window", "must be >= 1");
    need(cfg.solver_dt >= 0.0, "solver.dt (--dt)", "must be >= 0");
    need(cfg.solver_ratio > 1.0 && cfg.solver_ratio <= 1.1, "solver.grid_ratio", "must lie in (1, 1.1]");
    need(cfg.first_gap_fraction > 0.0 && cfg.first_gap_fraction < 1.0, "solver.first_gap_fraction",
         "must lie in (0, 1)");

    s.c.M = s.M.empty() ? nullptr : s.M.data();
    s.c.eps = s.eps.data();
    s.c.R = s.R.data();
    s.c.stages = k;
    return s;
}

punct_solver_config solver_config(const RunConfig& cfg)
{
    punct_solver_config sc;
    punct_solver_config_defaults(&sc);
    sc.dt = cfg.solver_dt;
    sc.grid_ratio = cfg.solver_ratio;
    sc.first_gap_fraction = cfg.first_gap_fraction;
    return sc;
}

// ---- output helpers ----------------------------------------------------------

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw RunError(kConfig, "cannot write " + path);
    out << content;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---- commands ----------------------------------------------------------------

int cmd_regime(const RunConfig& cfg)
{
    validate_problem(cfg);
    punct_regime_tag tag;
    double pc = 0;
    check(punct_classify_regime(cfg.n, cfg.p, &tag, &pc));
    double C = 0;
    const bool has_profile = punct_stationary_amplitude(cfg.n, cfg.p, &C) == PUNCT_OK;
    if (cfg.n == 2) {
        std::printf("Subcritical (n=2: all p>1)\n");
        std::printf("W amplitude C=%.6g\n", C);
        return kOk;
    }
    char pcs[64];
    if (std::abs(pc - std::round(pc)) < 1e-12)
        std::snprintf(pcs, sizeof pcs, "p_c=%g", pc);
    else
        std::snprintf(pcs, sizeof pcs, "p_c≈%.5g", pc);
    if (has_profile)
        std::printf("%s, %s, W amplitude C=%.6g\n", punct_regime_name(tag), pcs, C);
    else
        std::printf("%s, %s, no stationary profile\n", punct_regime_name(tag), pcs);
    return kOk;
}

punct_barrier_params barrier_from(const RunConfig& cfg)
{
    validate_problem(cfg);
    validate_barrier(cfg);
    punct_barrier_params bp;
    check(punct_barrier_defaults(cfg.n, cfg.p, cfg.R, cfg.eps, &bp));
    if (cfg.barrier_case)
        bp.kind = *cfg.barrier_case == "Borderline" ? PUNCT_BARRIER_BORDERLINE : PUNCT_BARRIER_GENERAL;
    if (cfg.l)
        bp.l = *cfg.l;
    bp.c = cfg.c;
    bp.delta0 = cfg.delta0;
    if (cfg.gamma)
        bp.gamma = *cfg.gamma;
    return bp;
}

double searched_gamma(const RunConfig& cfg, const punct_barrier_params& bp)
{
    double gamma = 0;
    check(punct_search_gamma(cfg.n, cfg.p, &bp, &cfg.scan, cfg.gamma_cap, &gamma));
    return gamma;
}

int cmd_barrier_verify(const RunConfig& cfg, const std::string& out)
{
    punct_barrier_params bp = barrier_from(cfg);
    if (!cfg.gamma) {
        bp.gamma = searched_gamma(cfg, bp);
        std::printf("gamma searched: %s\n", fmt(bp.gamma).c_str());
    }
    punct_verification* v = nullptr;
    check(punct_verify_supersolution(cfg.n, cfg.p, &bp, &cfg.scan, &v));
    std::printf("%s", owned(punct_verification_text(v)).c_str());
    if (!out.empty())
        write_file(out, owned(punct_verification_csv(v)));
    const bool passed = punct_verification_passed(v) != 0;
    punct_verification_free(v);
    return passed ? kOk : kVerifyFailed;
}

int cmd_gamma_search(const RunConfig& cfg)
{
    const punct_barrier_params bp = barrier_from(cfg);
    std::printf("gamma*=%s\n", fmt(searched_gamma(cfg, bp)).c_str());
    return kOk;
}

int cmd_solve(const RunConfig& cfg, const std::string& out)
{
    validate_problem(cfg);
    validate_solve(cfg);
    const punct_grid_spec grid{cfg.eps,
                               cfg.R,
                               cfg.grid_count,
                               cfg.spacing == "uniform" ? PUNCT_SPACING_UNIFORM : PUNCT_SPACING_GEOMETRIC,
                               cfg.grid_ratio,
                               cfg.first_gap};
    const punct_boundary bc{cfg.inner_kind == "neumann_zero" ? PUNCT_BC_NEUMANN_ZERO : PUNCT_BC_DIRICHLET,
                            cfg.inner_value,
                            cfg.outer_kind == "neumann_zero" ? PUNCT_BC_NEUMANN_ZERO : PUNCT_BC_DIRICHLET,
                            cfg.outer_value};
    size_t nodes = 0;
    check(punct_grid_node_count(&grid, &nodes));
    const std::vector<double> g(nodes, cfg.initial);
    punct_trajectory* tr = nullptr;
    check(punct_solve(cfg.n, cfg.p, &grid, &bc, g.data(), g.size(), cfg.t_end, cfg.dt, cfg.output_times.data(),
                      cfg.output_times.size(),
                      cfg.reaction == "semi_implicit" ? PUNCT_REACTION_SEMI_IMPLICIT : PUNCT_REACTION_IMPLICIT, &tr));
    const std::string csv = owned(punct_trajectory_csv(tr));
    if (out.empty())
        std::printf("%s", csv.c_str());
    else
        write_file(out, csv);
    std::fprintf(stderr, "nodes=%zu snapshots=%zu\n", punct_trajectory_node_count(tr),
                 punct_trajectory_snapshot_count(tr));

    int code = kOk;
    if (cfg.check_barrier) {
        try {
            punct_barrier_params bp = barrier_from(cfg);
            if (!cfg.gamma)
                bp.gamma = searched_gamma(cfg, bp);
            int dominated = 0;
            double ratio = 0;
            check(punct_check_domination(tr, cfg.n, cfg.p, &bp, &dominated, &ratio));
            std::fprintf(stderr, "barrier gamma=%s max u/psi=%s dominated=%s\n", fmt(bp.gamma).c_str(),
                         fmt(ratio).c_str(), dominated ? "true" : "false");
            code = dominated ? kOk : kVerifyFailed;
        } catch (...) {
            punct_trajectory_free(tr);
            throw;
        }
    }
    punct_trajectory_free(tr);
    return code;
}

int cmd_maximal(const RunConfig& cfg, const std::string& out)
{
    validate_problem(cfg);
    const ScheduleData s = build_schedule(cfg);
    const punct_solver_config sc = solver_config(cfg);
    punct_maximal_report* m = nullptr;
    check(punct_run_schedule(cfg.n, cfg.p, &s.c, &sc, &m));
    std::printf("%s", owned(punct_maximal_text(m)).c_str());
    if (!out.empty())
        write_file(out, owned(punct_maximal_csv(m)));
    punct_maximal_free(m);
    return kOk;
}

int cmd_sweep(RunConfig cfg, const std::string& out, const std::string& json_out)
{
    need(cfg.n >= 2, "problem.n (--n)", "must be an integer >= 2");
    need(!cfg.p_values.empty(), "sweep.p_values (--p-values)", "must not be empty");
    for (std::size_t i = 0; i < cfg.p_values.size(); ++i) {
        const std::string field = "sweep.p_values[" + std::to_string(i) + "]";
        need(cfg.p_values[i] > 1.0, field, "must exceed 1");
        if (i > 0)
            need(cfg.p_values[i] > cfg.p_values[i - 1], field, "must be strictly increasing");
    }
    need(cfg.jobs >= 1, "sweep.jobs (--jobs)", "must be >= 1");
    const ScheduleData s = build_schedule(cfg);
    const punct_solver_config sc = solver_config(cfg);

    punct_sweep_result* r = nullptr;
    check(punct_sweep(cfg.n, cfg.p_values.data(), cfg.p_values.size(), &s.c, &sc, cfg.jobs, &r));
    const std::string csv = owned(punct_sweep_csv(r));
    const std::string summary = owned(punct_sweep_json(r));
    if (out.empty())
        std::printf("%s", csv.c_str());
    else
        write_file(out, csv);
    if (!json_out.empty())
        write_file(json_out, summary);
    else
        std::printf("%s", summary.c_str());

    if (punct_sweep_has_estimate(r)) {
        double est, truth, gap;
        int bracketed = 0;
        if (punct_estimate_critical_exponent(r, cfg.n, &est, &truth, &gap, &bracketed) == PUNCT_OK)
            std::fprintf(stderr, "estimated p_c=%s true=%s bracketed=%s\n", fmt(est).c_str(), fmt(truth).c_str(),
                         bracketed ? "true" : "false");
    } else {
        std::fprintf(stderr, "no critical-exponent estimate\n");
    }
    punct_sweep_free(r);
    return kOk;
}

// ---- option wiring -----------------------------------------------------------

struct Overrides {
    std::string config;
    std::string out;
    std::string json_out;
    std::optional<int> n, jobs, grid_count, window;
    std::optional<double> p, R, eps, gamma, l, c, t_end, dt, gamma_cap, inner, outer, probe_r, theta;
    std::optional<std::string> schedule;
    std::optional<std::vector<double>> p_values;
    bool check_barrier = false;
};

void apply(const Overrides& o, RunConfig& cfg)
{
    if (o.n)
        cfg.n = *o.n;
    if (o.p)
        cfg.p = *o.p;
    if (o.R)
        cfg.R = *o.R;
    if (o.eps)
        cfg.eps = *o.eps;
    if (o.gamma)
        cfg.gamma = *o.gamma;
    if (o.l)
        cfg.l = *o.l;
    if (o.c)
        cfg.c = *o.c;
    if (o.gamma_cap)
        cfg.gamma_cap = *o.gamma_cap;
    if (o.t_end) {
        cfg.t_end = *o.t_end;
        cfg.schedule_t_end = *o.t_end;
    }
    if (o.dt) {
        cfg.dt = *o.dt;
        cfg.solver_dt = *o.dt;
    }
    if (o.grid_count)
        cfg.grid_count = *o.grid_count;
    if (o.inner)
        cfg.inner_value = *o.inner;
    if (o.outer)
        cfg.outer_value = *o.outer;
    if (o.schedule)
        cfg.preset = *o.schedule;
    if (o.probe_r)
        cfg.probe_r = *o.probe_r;
    if (o.theta)
        cfg.theta = *o.theta;
    if (o.window)
        cfg.window = *o.window;
    if (o.p_values)
        cfg.p_values = *o.p_values;
    if (o.jobs)
        cfg.jobs = *o.jobs;
    if (o.check_barrier)
        cfg.check_barrier = true;
}

void common_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    cmd->add_option("--n", o.n, "dimension n >= 2");
    cmd->add_option("--p", o.p, "absorption exponent p > 1");
}

void barrier_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--R", o.R, "outer radius");
    cmd->add_option("--eps", o.eps, "inner radius");
    cmd->add_option("--gamma", o.gamma, "barrier time rate (searched when omitted)");
    cmd->add_option("--l", o.l, "General-case exponent l");
    cmd->add_option("--c", o.c, "Borderline-case log constant c");
    cmd->add_option("--gamma-cap", o.gamma_cap, "upper limit of the gamma search");
}

void schedule_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--schedule", o.schedule, "schedule preset: default or saturated");
    cmd->add_option("--t-end", o.t_end, "final time of every stage");
    cmd->add_option("--dt", o.dt, "time step (0 = default)");
    cmd->add_option("--probe-r", o.probe_r, "probe radius");
    cmd->add_option("--theta", o.theta, "vanishing threshold");
    cmd->add_option("--window", o.window, "stabilization window");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Uniqueness and nonuniqueness laboratory for u_t = Lap u - u^p on punctured R^n"};
    app.require_subcommand(1);
    Overrides o;

    auto* regime = app.add_subcommand("regime", "classify (n, p) and report the stationary profile");
    common_options(regime, o);

    auto* verify = app.add_subcommand("barrier-verify", "scan the barrier defect for a sign");
    common_options(verify, o);
    barrier_options(verify, o);
    verify->add_option("--out", o.out, "CSV of the scan (r,t,sum,tolerance)");

    auto* gsearch = app.add_subcommand("gamma-search", "smallest gamma passing the supersolution scan");
    common_options(gsearch, o);
    barrier_options(gsearch, o);

    auto* solve = app.add_subcommand("solve", "single radial solve on (eps, R)");
    common_options(solve, o);
    barrier_options(solve, o);
    solve->add_option("--t-end", o.t_end, "final time");
    solve->add_option("--dt", o.dt, "time step (0 = 1e-3 t_end)");
    solve->add_option("--grid-count", o.grid_count, "interior node count");
    solve->add_option("--inner", o.inner, "inner Dirichlet value");
    solve->add_option("--outer", o.outer, "outer Dirichlet value");
    solve->add_flag("--check-barrier", o.check_barrier, "compare the solution against the barrier");
    solve->add_option("--out", o.out, "trajectory CSV (t,r,u); stdout when omitted");

    auto* maximal = app.add_subcommand("maximal", "maximal-solution schedule and dichotomy verdict");
    common_options(maximal, o);
    schedule_options(maximal, o);
    maximal->add_option("--out", o.out, "stage CSV (stage,M,eps,R,probe_value)");

    auto* sweep = app.add_subcommand("sweep", "verdicts over a list of p and a critical-exponent estimate");
    sweep->add_option("--config", o.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    sweep->add_option("--n", o.n, "dimension n >= 2");
    sweep->add_option("--p-values", o.p_values, "increasing p values")->delimiter(',');
    sweep->add_option("--jobs", o.jobs, "worker threads (default: logical cores)");
    schedule_options(sweep, o);
    sweep->add_option("--out", o.out, "CSV (n,p,verdict,probe_value,M_last,eps_last,R_last); stdout when omitted");
    sweep->add_option("--json", o.json_out, "JSON summary; stdout when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        RunConfig cfg;
        if (sweep->parsed())
            cfg.preset = "saturated";
        if (!o.config.empty())
            load_config(o.config, cfg);
        apply(o, cfg);

        if (regime->parsed())
            return cmd_regime(cfg);
        if (verify->parsed())
            return cmd_barrier_verify(cfg, o.out);
        if (gsearch->parsed())
            return cmd_gamma_search(cfg);
        if (solve->parsed())
            return cmd_solve(cfg, o.out);
        if (maximal->parsed())
            return cmd_maximal(cfg, o.out);
        return cmd_sweep(cfg, o.out, o.json_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const RunError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolver;
    }
}
