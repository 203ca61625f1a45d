#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "punct/errors.hpp"
#include "punct/maximal.hpp"

#include <cmath>
#include <vector>

using namespace punct;

namespace {
Verdict classify(std::vector<double> v, double theta, int w) { return classify_dichotomy(v, theta, w); }
} // namespace

TEST_CASE("dichotomy classifier")
{
    CHECK(classify({0.5, 0.51, 0.50, 0.52}, 0.01, 3) == Verdict::Nontrivial);
    CHECK(classify({0.1, 0.01, 0.001, 0.0001}, 0.01, 3) == Verdict::Trivial);
    CHECK(classify({0.5, 0.05, 0.5}, 0.01, 2) == Verdict::Inconclusive);
    CHECK(classify({0.5}, 0.01, 3) == Verdict::Inconclusive);
    CHECK(classify({0.5, 0.5, 0.5}, 0.01, 3) == Verdict::Inconclusive);
    CHECK(classify({}, 0.01, 1) == Verdict::Inconclusive);
    // below theta but not decreasing
    CHECK(classify({1e-4, 1e-4, 2e-4, 1e-4}, 1e-3, 3) == Verdict::Inconclusive);
    // geometric decay toward zero, still above theta
    CHECK(classify({0.8, 0.4, 0.2, 0.1}, 1e-3, 3) == Verdict::Trivial);
    // growing toward a positive limit
    CHECK(classify({0.4, 0.7, 1.1, 1.4}, 1e-3, 3) == Verdict::Nontrivial);
    CHECK(to_string(Verdict::Nontrivial) == "Nontrivial");
}

TEST_CASE("Aitken limit")
{
    const std::vector<double> geom{3.0, 2.0, 1.5, 1.25};
    CHECK(extrapolate_limit(geom) == doctest::Approx(1.0));
    const std::vector<double> rising{0.0, 0.5, 0.75};
    CHECK(extrapolate_limit(rising) == doctest::Approx(1.0));
    const std::vector<double> growing{1.0, 2.0, 4.0};
    CHECK(std::isnan(extrapolate_limit(growing)));
    const std::vector<double> wobble{1.0, 2.0, 1.5};
    CHECK(std::isnan(extrapolate_limit(wobble)));
    const std::vector<double> two{1.0, 2.0};
    CHECK(std::isnan(extrapolate_limit(two)));
}

TEST_CASE("schedule validation")
{
    Schedule s = default_schedule();
    CHECK_NOTHROW(validate(s));
    CHECK(s.stages() == 4);

    Schedule bad = s;
    bad.R_seq.pop_back();
    CHECK_THROWS_AS(validate(bad), ScheduleError);
    bad = s;
    bad.probe_r = 0.05; // inside the first inner radius 0.1
    CHECK_THROWS_AS(validate(bad), ScheduleError);
    bad = s;
    bad.probe_r = 50; // outside the first outer radius 10
    CHECK_THROWS_AS(validate(bad), ScheduleError);
    bad = s;
    bad.eps_seq[2] = 0.5;
    CHECK_THROWS_AS(validate(bad), ScheduleError);
    bad = s;
    bad.M_seq[1] = 1;
    CHECK_THROWS_AS(validate(bad), ScheduleError);
    bad = s;
    bad.M_seq.clear();
    CHECK_THROWS_AS(validate(bad), ScheduleError);
    bad.saturation = 10; // M is derived, so an empty M_seq is fine
    CHECK_NOTHROW(validate(bad));
    bad = s;
    bad.eps_seq.clear();
    bad.R_seq.clear();
    bad.M_seq.clear();
    CHECK_THROWS_AS(validate(bad), ScheduleError);
}

TEST_CASE("saturated schedule heights")
{
    const Schedule s = saturated_schedule();
    const auto M = s.boundary_heights(ProblemParams(3, 2.0));
    REQUIRE(M.size() == 4);
    CHECK(M[0] == doctest::Approx(100 * 1e4));
    CHECK(M[3] == doctest::Approx(100 * 1e10));
    CHECK(default_schedule().boundary_heights(ProblemParams(3, 2.0)) == default_schedule().M_seq);
}

TEST_CASE("single-stage schedule is inconclusive")
{
    Schedule s = default_schedule();
    s.M_seq = {100};
    s.eps_seq = {0.1};
    s.R_seq = {10};
    const auto rep = run_schedule(ProblemParams(3, 2.0), s);
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK(rep.probe_values.size() == 1);
    CHECK(rep.probe_values[0] > 0);
}

TEST_CASE("default schedule: subcritical stays away from zero")
{
    const ProblemParams pp(3, 2.0);
    const auto rep = run_schedule(pp, default_schedule());
    CHECK(rep.verdict == Verdict::Nontrivial);
    CHECK(rep.probe_values.back() > 1e-2);
    REQUIRE(rep.stationary_reference);
    CHECK(*rep.stationary_reference == doctest::Approx(2.0));
    CHECK(rep.reference_ratio);
    for (std::size_t k = 1; k < rep.probe_values.size(); ++k)
        CHECK(rep.probe_values[k] > rep.probe_values[k - 1]);
    // bounded above by the stationary profile built from the same boundary scale
    CHECK(rep.probe_values.back() < *rep.stationary_reference);
}

TEST_CASE("default schedule: supercritical decays")
{
    const auto rep = run_schedule(ProblemParams(5, 2.0), default_schedule());
    CHECK(rep.verdict == Verdict::Trivial);
    CHECK(rep.probe_values.back() < 1e-3);
    CHECK_FALSE(rep.stationary_reference);
    for (std::size_t k = 1; k < rep.probe_values.size(); ++k)
        CHECK(rep.probe_values[k] < rep.probe_values[k - 1]);
}

TEST_CASE("default schedule: two dimensions")
{
    const auto rep = run_schedule(ProblemParams(2, 2.0), default_schedule());
    CHECK(rep.verdict == Verdict::Nontrivial);
}

TEST_CASE("raising M on a fixed annulus raises the solution")
{
    Schedule s;
    s.M_seq = {10, 100, 1000};
    s.eps_seq = {0.05, 0.05, 0.05};
    s.R_seq = {10, 10, 10};
    const auto rep = run_schedule(ProblemParams(3, 2.0), s);
    CHECK(rep.monotonicity_ok);
    CHECK(rep.probe_values[0] < rep.probe_values[1]);
    CHECK(rep.probe_values[1] < rep.probe_values[2]);
}

TEST_CASE("run_stage exposes a stage trajectory")
{
    const Schedule s = default_schedule();
    const std::vector<double> times{0.5};
    const auto tr = run_stage(ProblemParams(5, 2.0), s, 0, {}, times);
    CHECK(tr.snapshots.size() == 2);
    CHECK(tr.grid.epsilon == 0.1);
    CHECK(tr.grid.R == 10);
    CHECK_THROWS_AS(run_stage(ProblemParams(5, 2.0), s, 9), ScheduleError);
}
