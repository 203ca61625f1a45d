#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "punct/report_io.hpp"

#include <algorithm>

using namespace punct;

TEST_CASE("number formatting")
{
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(3) == "3");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("trajectory csv is byte-stable")
{
    const ProblemParams pp(3, 2.0);
    const RadialGrid g = build_grid(0.5, 2, 9, Spacing::Geometric, 1.05);
    const std::vector<double> zero(g.size(), 0.0);
    const std::vector<double> times{0.5};
    const BoundaryCondition bc{BoundarySide::dirichlet(10), BoundarySide::dirichlet(0)};
    const std::string a = trajectory_csv(solve(zero, g, bc, pp, 1.0, 0.01, times));
    const std::string b = trajectory_csv(solve(zero, g, bc, pp, 1.0, 0.01, times));
    CHECK(a == b);
    CHECK(a.rfind("t,r,u\n0.5,", 0) == 0);
    // header + snapshots at t=0.5 and t=1, 9 nodes each
    CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 2 * 9);
}

TEST_CASE("maximal report")
{
    Schedule s = default_schedule();
    s.M_seq.resize(2);
    s.eps_seq.resize(2);
    s.R_seq.resize(2);
    const ProblemParams pp(3, 2.0);
    const auto rep = run_schedule(pp, s);
    const std::string csv = maximal_csv(rep);
    CHECK(csv.rfind("stage,M,eps,R,probe_value\n0,10,0.1,10,", 0) == 0);
    CHECK(csv == maximal_csv(run_schedule(pp, s)));
    const std::string text = maximal_text(rep, pp);
    CHECK(text.find("regime=Subcritical") != std::string::npos);
    CHECK(text.find("verdict: ") != std::string::npos);
}

TEST_CASE("verification report")
{
    const ProblemParams pp(5, 2.0);
    BarrierParams bp = default_barrier(pp, 10, 0.01);
    bp.gamma = 5;
    const auto rep = verify_supersolution(bp, pp, {50, 1.0, 2});
    const std::string text = verification_text(rep);
    CHECK(text.find("case: General") != std::string::npos);
    CHECK(text.find("passed: true") != std::string::npos);
    const std::string csv = verification_csv(rep);
    CHECK(csv.rfind("r,t,sum,tolerance\n", 0) == 0);
    CHECK(std::size_t(std::count(csv.begin(), csv.end(), '\n')) == 1 + rep.points.size());
}
