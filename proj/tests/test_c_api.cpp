#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "punct/punct.h"

#include <cmath>
#include <string>
#include <vector>

namespace {

std::string take(char* s)
{
    std::string out = s != nullptr ? s : "";
    punct_string_free(s);
    return out;
}

} // namespace

TEST_CASE("status names and errors")
{
    CHECK(std::string(punct_status_name(PUNCT_OK)) == "ok");
    CHECK(std::string(punct_status_name(PUNCT_ERR_NOT_FOUND)) == "not found");

    punct_regime_tag tag;
    CHECK(punct_classify_regime(1, 2.0, &tag, nullptr) == PUNCT_ERR_DOMAIN);
    CHECK(std::string(punct_last_error()).find("n") != std::string::npos);
    CHECK(punct_classify_regime(3, 2.0, nullptr, nullptr) == PUNCT_ERR_INVALID_ARGUMENT);
    CHECK(punct_classify_regime(3, 2.0, &tag, nullptr) == PUNCT_OK);
    CHECK(std::string(punct_last_error()).empty());
}

TEST_CASE("regime and stationary profile")
{
    punct_regime_tag tag;
    double pc = 0;
    REQUIRE(punct_classify_regime(3, 2.0, &tag, &pc) == PUNCT_OK);
    CHECK(tag == PUNCT_SUBCRITICAL);
    CHECK(pc == doctest::Approx(3.0));
    REQUIRE(punct_classify_regime(2, 7.0, &tag, &pc) == PUNCT_OK);
    CHECK(std::isinf(pc));
    REQUIRE(punct_classify_regime(4, 2.0, &tag, &pc) == PUNCT_OK);
    CHECK(std::string(punct_regime_name(tag)) == "Critical");

    double C = 0;
    CHECK(punct_stationary_amplitude(3, 2.0, &C) == PUNCT_OK);
    CHECK(C == doctest::Approx(2.0));
    CHECK(punct_stationary_amplitude(5, 2.0, &C) == PUNCT_ERR_REGIME);

    double v = 0;
    CHECK(punct_stationary_value(4.0, 2.0, 0.5, &v) == PUNCT_OK);
    CHECK(v == doctest::Approx(16.0));
    CHECK(punct_radial_residual(3, 2.0, 2, -4, 12, 1, &v) == PUNCT_OK);
    CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("barrier evaluation and verification")
{
    punct_barrier_params bp;
    REQUIRE(punct_barrier_defaults(5, 2.0, 10, 0.01, &bp) == PUNCT_OK);
    CHECK(bp.kind == PUNCT_BARRIER_GENERAL);

    punct_scan_spec scan;
    punct_scan_defaults(&scan);
    CHECK(scan.r_count == 200);

    double gamma = 0;
    REQUIRE(punct_search_gamma(5, 2.0, &bp, &scan, 0, &gamma) == PUNCT_OK);
    CHECK(gamma == doctest::Approx(1.76));
    bp.gamma = gamma;

    punct_verification* v = nullptr;
    REQUIRE(punct_verify_supersolution(5, 2.0, &bp, nullptr, &v) == PUNCT_OK);
    CHECK(punct_verification_passed(v) == 1);
    CHECK(punct_verification_max_sum(v) <= 0);
    CHECK(take(punct_verification_text(v)).find("passed: true") != std::string::npos);
    CHECK(take(punct_verification_csv(v)).rfind("r,t,sum,tolerance", 0) == 0);
    punct_verification_free(v);

    punct_terms terms;
    REQUIRE(punct_term_breakdown(5, 2.0, &bp, 0.05, 0.0, &terms) == PUNCT_OK);
    double d = 0;
    REQUIRE(punct_defect(5, 2.0, &bp, 0.05, 0.0, &d) == PUNCT_OK);
    CHECK(d == terms.prefactor * terms.sum);
    CHECK(punct_defect(5, 2.0, &bp, 0.01, 0.0, &d) == PUNCT_ERR_DOMAIN);

    CHECK(punct_verify_supersolution(3, 2.0, &bp, nullptr, &v) == PUNCT_ERR_REGIME_MISMATCH);
    CHECK(v == nullptr);
    CHECK(punct_search_gamma(5, 2.0, &bp, nullptr, 0.5, &gamma) == PUNCT_ERR_NOT_FOUND);

    punct_inequalities* q = nullptr;
    REQUIRE(punct_check_key_inequalities(5, 2.0, &bp, 1.0, 0.0, nullptr, 500, &q) == PUNCT_OK);
    bool saw_j2 = false;
    for (size_t i = 0; i < punct_inequalities_count(q); ++i) {
        if (std::string(punct_inequalities_name(q, i)) == "J2") {
            saw_j2 = true;
            CHECK(punct_inequalities_holds(q, i) == 1);
        }
    }
    CHECK(saw_j2);
    punct_inequalities_free(q);

    punct_barrier_params border;
    REQUIRE(punct_barrier_defaults(4, 2.0, 10, 0.01, &border) == PUNCT_OK);
    double c = 0;
    CHECK(punct_search_c(4, 2.0, &border, &c) == PUNCT_OK);
    CHECK(c == 4.0);

    double phi = 0, psi = 0;
    REQUIRE(punct_phi(5, 2.0, &bp, 1.0, &phi) == PUNCT_OK);
    REQUIRE(punct_psi(5, 2.0, &bp, 1.0, 0.0, &psi) == PUNCT_OK);
    CHECK(psi == doctest::Approx(phi * std::exp(bp.gamma)));
}

TEST_CASE("solve and domination")
{
    punct_grid_spec grid{0.01, 10, 0, PUNCT_SPACING_GEOMETRIC, 1.05, 5e-4};
    size_t nodes = 0;
    REQUIRE(punct_grid_node_count(&grid, &nodes) == PUNCT_OK);
    CHECK(nodes > 10);

    punct_boundary bc{PUNCT_BC_DIRICHLET, 1e3, PUNCT_BC_DIRICHLET, 1e3};
    const double times[] = {0.25, 0.5};
    punct_trajectory* tr = nullptr;
    REQUIRE(punct_solve(5, 2.0, &grid, &bc, nullptr, 0, 1.0, 0, times, 2, PUNCT_REACTION_IMPLICIT, &tr) == PUNCT_OK);
    CHECK(punct_trajectory_node_count(tr) == nodes);
    CHECK(punct_trajectory_snapshot_count(tr) == 3);
    CHECK(punct_trajectory_time(tr, 2) == doctest::Approx(1.0));
    CHECK(punct_trajectory_value(tr, 2, 0) > 0);
    CHECK(take(punct_trajectory_csv(tr)).rfind("t,r,u\n", 0) == 0);

    punct_barrier_params bp;
    REQUIRE(punct_barrier_defaults(5, 2.0, 10, 0.01, &bp) == PUNCT_OK);
    REQUIRE(punct_search_gamma(5, 2.0, &bp, nullptr, 0, &bp.gamma) == PUNCT_OK);
    int dominated = 0;
    double ratio = 0;
    REQUIRE(punct_check_domination(tr, 5, 2.0, &bp, &dominated, &ratio) == PUNCT_OK);
    CHECK(dominated == 1);
    CHECK(ratio < 1.0);
    punct_trajectory_free(tr);

    const std::vector<double> wrong(3, 0.0);
    CHECK(punct_solve(5, 2.0, &grid, &bc, wrong.data(), wrong.size(), 1.0, 0, nullptr, 0, PUNCT_REACTION_IMPLICIT,
                      &tr) == PUNCT_ERR_DOMAIN);
    CHECK(tr == nullptr);

    punct_grid_spec uniform{1, 2, 3, PUNCT_SPACING_UNIFORM, 1, 0};
    punct_boundary flat{PUNCT_BC_NEUMANN_ZERO, 0, PUNCT_BC_NEUMANN_ZERO, 0};
    const double one[] = {1, 1, 1};
    REQUIRE(punct_solve(3, 2.0, &uniform, &flat, one, 3, 1.0, 1e-4, nullptr, 0, PUNCT_REACTION_IMPLICIT, &tr) ==
            PUNCT_OK);
    CHECK(punct_trajectory_node(tr, 1) == doctest::Approx(1.5));
    CHECK(punct_trajectory_value(tr, 0, 1) == doctest::Approx(0.5).epsilon(2e-3));
    punct_trajectory_free(tr);
}

TEST_CASE("maximal runs and sweeps")
{
    const double vals[] = {0.5, 0.51, 0.50, 0.52};
    CHECK(punct_classify_dichotomy(vals, 4, 0.01, 3) == PUNCT_VERDICT_NONTRIVIAL);
    CHECK(std::string(punct_verdict_name(PUNCT_VERDICT_TRIVIAL)) == "Trivial");

    punct_schedule s;
    punct_default_schedule(&s);
    CHECK(s.stages == 4);
    punct_solver_config cfg;
    punct_solver_config_defaults(&cfg);

    punct_maximal_report* m = nullptr;
    REQUIRE(punct_run_schedule(5, 2.0, &s, &cfg, &m) == PUNCT_OK);
    CHECK(punct_maximal_verdict(m) == PUNCT_VERDICT_TRIVIAL);
    CHECK(punct_maximal_stage_count(m) == 4);
    CHECK(punct_maximal_probe_value(m, 3) < 1e-3);
    CHECK(punct_maximal_monotonicity_ok(m) == 1);
    CHECK(take(punct_maximal_text(m)).find("verdict: Trivial") != std::string::npos);
    CHECK(take(punct_maximal_csv(m)).rfind("stage,M,eps,R,probe_value\n", 0) == 0);
    punct_maximal_free(m);

    punct_schedule bad = s;
    bad.probe_r = 50;
    CHECK(punct_run_schedule(5, 2.0, &bad, nullptr, &m) == PUNCT_ERR_SCHEDULE);

    punct_schedule sat;
    punct_saturated_schedule(&sat);
    CHECK(sat.saturation == 100.0);
    const double ps[] = {1.5, 1.8, 2.2, 2.5};
    punct_sweep_result* sw = nullptr;
    REQUIRE(punct_sweep(4, ps, 4, &sat, nullptr, 2, &sw) == PUNCT_OK);
    CHECK(punct_sweep_row_count(sw) == 4);
    CHECK(punct_sweep_row_verdict(sw, 0) == PUNCT_VERDICT_NONTRIVIAL);
    CHECK(punct_sweep_row_verdict(sw, 3) == PUNCT_VERDICT_TRIVIAL);
    REQUIRE(punct_sweep_has_estimate(sw) == 1);
    CHECK(punct_sweep_estimate(sw) == doctest::Approx(2.0));
    double est, truth, gap;
    int bracketed = 0;
    REQUIRE(punct_estimate_critical_exponent(sw, 4, &est, &truth, &gap, &bracketed) == PUNCT_OK);
    CHECK(bracketed == 1);
    CHECK(take(punct_sweep_json(sw)).find("\"estimated_pc\"") != std::string::npos);
    CHECK(take(punct_sweep_csv(sw)).rfind("n,p,verdict", 0) == 0);
    punct_sweep_free(sw);

    const double unordered[] = {2.0, 1.5};
    CHECK(punct_sweep(4, unordered, 2, &sat, nullptr, 1, &sw) == PUNCT_ERR_DOMAIN);
}

TEST_CASE("null handles are tolerated by accessors")
{
    CHECK(punct_verification_passed(nullptr) == 0);
    CHECK(punct_trajectory_node_count(nullptr) == 0);
    CHECK(punct_maximal_verdict(nullptr) == PUNCT_VERDICT_INCONCLUSIVE);
    CHECK(punct_sweep_row_count(nullptr) == 0);
    CHECK(punct_sweep_csv(nullptr) == nullptr);
    punct_verification_free(nullptr);
    punct_trajectory_free(nullptr);
    punct_maximal_free(nullptr);
    punct_sweep_free(nullptr);
    punct_string_free(nullptr);
}
