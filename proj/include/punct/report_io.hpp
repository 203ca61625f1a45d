#pragma once

#include "punct/barrier.hpp"
#include "punct/experiments.hpp"
#include "punct/maximal.hpp"
#include "punct/solver.hpp"

#include <optional>
#include <string>

namespace punct {

// Numbers are written with "%.12g" so output is byte-stable on a platform.

/// Columns: t,r,u (one row per snapshot node).
std::string trajectory_csv(const Trajectory& traj);

/// Columns: r,t,sum,tolerance.
std::string verification_csv(const VerificationReport& report);
std::string verification_text(const VerificationReport& report);

/// Columns: stage,M,eps,R,probe_value.
std::string maximal_csv(const MaximalRunReport& report);
std::string maximal_text(const MaximalRunReport& report, const ProblemParams& params);

/// Columns: n,p,verdict,probe_value,M_last,eps_last,R_last.
std::string sweep_csv(const SweepResult& result);

/// {"n", "estimated_pc", "true_pc", "bracket", "rows": [...]}; absent values are null.
std::string sweep_json(const SweepResult& result);

std::string format_number(double v);

} // namespace punct
