/* C interface to the punctured-space semilinear heat laboratory.
 *
 * Every fallible call returns a punct_status; on failure the message is
 * available from punct_last_error() on the calling thread until the next
 * call. Handles are opaque and released with their matching *_free call.
 * Strings returned as char* are owned by the caller (punct_string_free).
 */
#ifndef PUNCT_H
#define PUNCT_H

#include <stddef.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#  ifdef PUNCT_BUILDING
#    define PUNCT_API __declspec(dllexport)
#  else
#    define PUNCT_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) || defined(__clang__)
#  define PUNCT_API __attribute__((visibility("default")))
#else
#  define PUNCT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum punct_status {
    PUNCT_OK = 0,
    PUNCT_ERR_INVALID_ARGUMENT = 1,
    PUNCT_ERR_DOMAIN = 2,
    PUNCT_ERR_REGIME = 3,
    PUNCT_ERR_REGIME_MISMATCH = 4,
    PUNCT_ERR_NOT_FOUND = 5,
    PUNCT_ERR_SOLVE = 6,
    PUNCT_ERR_SCHEDULE = 7,
    PUNCT_ERR_MISSING_ESTIMATE = 8,
    PUNCT_ERR_INTERNAL = 9
} punct_status;

PUNCT_API const char* punct_status_name(punct_status status);
PUNCT_API const char* punct_last_error(void);
PUNCT_API void punct_string_free(char* s);

/* ---- regime and stationary profile ------------------------------------ */

typedef enum punct_regime_tag {
    PUNCT_SUBCRITICAL = 0,
    PUNCT_CRITICAL = 1,
    PUNCT_SUPERCRITICAL = 2
} punct_regime_tag;

PUNCT_API const char* punct_regime_name(punct_regime_tag tag);

/* critical_exponent is +inf for n = 2. */
PUNCT_API punct_status punct_classify_regime(int n, double p, punct_regime_tag* tag, double* critical_exponent);
PUNCT_API punct_status punct_stationary_amplitude(int n, double p, double* amplitude);
PUNCT_API punct_status punct_stationary_value(double amplitude, double p, double r, double* value);
PUNCT_API punct_status punct_radial_residual(int n, double p, double u, double du, double ddu, double r,
                                             double* residual);

/* ---- barrier ----------------------------------------------------------- */

typedef enum punct_barrier_case {
    PUNCT_BARRIER_GENERAL = 0,
    PUNCT_BARRIER_BORDERLINE = 1
} punct_barrier_case;

typedef struct punct_barrier_params {
    punct_barrier_case kind;
    double R;
    double epsilon;
    double gamma;
    double l;
    double c;
    double delta0;
} punct_barrier_params;

typedef struct punct_scan_spec {
    int r_count;
    double t_max;
    int t_count;
} punct_scan_spec;

typedef struct punct_terms {
    double J[7];
    double I[5];
    double sum;
    double prefactor;
} punct_terms;

PUNCT_API punct_status punct_barrier_defaults(int n, double p, double R, double epsilon, punct_barrier_params* out);
PUNCT_API void punct_scan_defaults(punct_scan_spec* out);

PUNCT_API punct_status punct_phi(int n, double p, const punct_barrier_params* bp, double r, double* value);
PUNCT_API punct_status punct_psi(int n, double p, const punct_barrier_params* bp, double r, double t, double* value);
PUNCT_API punct_status punct_term_breakdown(int n, double p, const punct_barrier_params* bp, double r, double t,
                                            punct_terms* out);
PUNCT_API punct_status punct_defect(int n, double p, const punct_barrier_params* bp, double r, double t,
                                    double* value);

typedef struct punct_verification punct_verification;

PUNCT_API punct_status punct_verify_supersolution(int n, double p, const punct_barrier_params* bp,
                                                  const punct_scan_spec* scan, punct_verification** out);
PUNCT_API int punct_verification_passed(const punct_verification* v);
PUNCT_API double punct_verification_max_sum(const punct_verification* v);
PUNCT_API void punct_verification_argmax(const punct_verification* v, double* r, double* t);
PUNCT_API char* punct_verification_text(const punct_verification* v);
PUNCT_API char* punct_verification_csv(const punct_verification* v);
PUNCT_API void punct_verification_free(punct_verification* v);

/* gamma_cap <= 0 selects 1e6. */
PUNCT_API punct_status punct_search_gamma(int n, double p, const punct_barrier_params* bp_template,
                                          const punct_scan_spec* scan, double gamma_cap, double* gamma);
PUNCT_API punct_status punct_search_c(int n, double p, const punct_barrier_params* bp_template, double* c);

typedef struct punct_inequalities punct_inequalities;

/* r_grid == NULL evaluates on the default inner-band grid with `count` points. */
PUNCT_API punct_status punct_check_key_inequalities(int n, double p, const punct_barrier_params* bp, double M,
                                                    double kappa, const double* r_grid, size_t count,
                                                    punct_inequalities** out);
PUNCT_API size_t punct_inequalities_count(const punct_inequalities* q);
PUNCT_API const char* punct_inequalities_name(const punct_inequalities* q, size_t i);
PUNCT_API int punct_inequalities_holds(const punct_inequalities* q, size_t i);
PUNCT_API double punct_inequalities_required(const punct_inequalities* q, size_t i);
PUNCT_API double punct_inequalities_supplied(const punct_inequalities* q, size_t i);
PUNCT_API void punct_inequalities_free(punct_inequalities* q);

/* ---- radial solver ----------------------------------------------------- */

typedef enum punct_bc_kind {
    PUNCT_BC_DIRICHLET = 0,
    PUNCT_BC_NEUMANN_ZERO = 1
} punct_bc_kind;

typedef struct punct_boundary {
    punct_bc_kind inner_kind;
    double inner_value;
    punct_bc_kind outer_kind;
    double outer_value;
} punct_boundary;

typedef enum punct_spacing {
    PUNCT_SPACING_UNIFORM = 0,
    PUNCT_SPACING_GEOMETRIC = 1
} punct_spacing;

/* first_gap > 0 builds a geometric grid with at most that first gap and
 * ignores count. */
typedef struct punct_grid_spec {
    double epsilon;
    double R;
    int count;
    punct_spacing spacing;
    double ratio;
    double first_gap;
} punct_grid_spec;

typedef enum punct_reaction {
    PUNCT_REACTION_IMPLICIT = 0,
    PUNCT_REACTION_SEMI_IMPLICIT = 1
} punct_reaction;

typedef struct punct_trajectory punct_trajectory;

/* g == NULL means zero initial data; otherwise g_count must equal the node
 * count of the grid (see punct_grid_node_count). dt <= 0 selects 1e-3 t_end. */
PUNCT_API punct_status punct_grid_node_count(const punct_grid_spec* grid, size_t* count);
PUNCT_API punct_status punct_solve(int n, double p, const punct_grid_spec* grid, const punct_boundary* bc,
                                   const double* g, size_t g_count, double t_end, double dt,
                                   const double* output_times, size_t output_count, punct_reaction reaction,
                                   punct_trajectory** out);
PUNCT_API size_t punct_trajectory_node_count(const punct_trajectory* tr);
PUNCT_API double punct_trajectory_node(const punct_trajectory* tr, size_t i);
PUNCT_API size_t punct_trajectory_snapshot_count(const punct_trajectory* tr);
PUNCT_API double punct_trajectory_time(const punct_trajectory* tr, size_t k);
PUNCT_API double punct_trajectory_value(const punct_trajectory* tr, size_t k, size_t i);
PUNCT_API char* punct_trajectory_csv(const punct_trajectory* tr);
PUNCT_API void punct_trajectory_free(punct_trajectory* tr);

PUNCT_API punct_status punct_check_domination(const punct_trajectory* tr, int n, double p,
                                              const punct_barrier_params* bp, int* dominated, double* max_ratio);

/* ---- maximal solutions ------------------------------------------------- */

typedef struct punct_schedule {
    const double* M;   /* ignored when saturation > 0 */
    const double* eps;
    const double* R;
    size_t stages;
    double t_end;
    double probe_r;
    double theta;
    int window;
    double saturation;
    int outer_zero;
} punct_schedule;

typedef struct punct_solver_config {
    double dt;
    double grid_ratio;
    double first_gap_fraction;
    punct_reaction reaction;
} punct_solver_config;

/* Arrays point at library-owned static storage. */
PUNCT_API void punct_default_schedule(punct_schedule* out);
PUNCT_API void punct_saturated_schedule(punct_schedule* out);
PUNCT_API void punct_solver_config_defaults(punct_solver_config* out);

typedef enum punct_verdict {
    PUNCT_VERDICT_TRIVIAL = 0,
    PUNCT_VERDICT_NONTRIVIAL = 1,
    PUNCT_VERDICT_INCONCLUSIVE = 2
} punct_verdict;

PUNCT_API const char* punct_verdict_name(punct_verdict v);
PUNCT_API punct_verdict punct_classify_dichotomy(const double* values, size_t count, double theta, int window);

typedef struct punct_maximal_report punct_maximal_report;

PUNCT_API punct_status punct_run_schedule(int n, double p, const punct_schedule* schedule,
                                          const punct_solver_config* config, punct_maximal_report** out);
PUNCT_API punct_verdict punct_maximal_verdict(const punct_maximal_report* m);
PUNCT_API size_t punct_maximal_stage_count(const punct_maximal_report* m);
PUNCT_API double punct_maximal_probe_value(const punct_maximal_report* m, size_t k);
PUNCT_API int punct_maximal_monotonicity_ok(const punct_maximal_report* m);
PUNCT_API char* punct_maximal_text(const punct_maximal_report* m);
PUNCT_API char* punct_maximal_csv(const punct_maximal_report* m);
PUNCT_API void punct_maximal_free(punct_maximal_report* m);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct punct_sweep_result punct_sweep_result;

PUNCT_API punct_status punct_sweep(int n, const double* p_values, size_t count, const punct_schedule* schedule,
                                   const punct_solver_config* config, int jobs, punct_sweep_result** out);
PUNCT_API size_t punct_sweep_row_count(const punct_sweep_result* s);
PUNCT_API double punct_sweep_row_p(const punct_sweep_result* s, size_t i);
PUNCT_API punct_verdict punct_sweep_row_verdict(const punct_sweep_result* s, size_t i);
PUNCT_API int punct_sweep_has_estimate(const punct_sweep_result* s);
PUNCT_API double punct_sweep_estimate(const punct_sweep_result* s);
PUNCT_API char* punct_sweep_csv(const punct_sweep_result* s);
PUNCT_API char* punct_sweep_json(const punct_sweep_result* s);
PUNCT_API void punct_sweep_free(punct_sweep_result* s);

PUNCT_API punct_status punct_estimate_critical_exponent(const punct_sweep_result* s, int n, double* estimated,
                                                        double* truth, double* relative_gap, int* bracketed);

#ifdef __cplusplus
}
#endif

#endif /* PUNCT_H */
