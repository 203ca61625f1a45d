#pragma once

#include "punct/maximal.hpp"

#include <optional>
#include <vector>

namespace punct {

struct SweepSpec {
    int n = 3;
    /// Strictly increasing, each > 1.
    std::vector<double> p_values;
    Schedule schedule = saturated_schedule();
    SolverConfig solver;
    /// Worker threads; rows are independent and reported in p order.
    int jobs = 1;
};

void validate(const SweepSpec& spec);

struct SweepRow {
    double p;
    Verdict verdict;
    double probe_value;
    double M_last;
    double eps_last;
    double R_last;
    double extrapolated_limit;
    /// p within 5% of n/(n-2), where the dichotomy is slow to show.
    bool slow_transition;
    /// Row breaks the Nontrivial-then-Trivial ordering.
    bool flagged;
};

struct SweepResult {
    int n = 0;
    std::vector<SweepRow> rows;
    /// Last Nontrivial p and first Trivial p, when the verdicts are ordered.
    std::optional<double> bracket_lo;
    std::optional<double> bracket_hi;
    std::optional<double> estimated_pc;
};

SweepResult sweep_p(const SweepSpec& spec);

struct CriticalExponentComparison {
    double estimated;
    double truth;
    double relative_gap;
    double bracket_lo;
    double bracket_hi;
    bool bracketed;
};

/// Throws MissingEstimate when the sweep produced no estimate.
CriticalExponentComparison estimate_critical_exponent(const SweepResult& result, int n);

} // namespace punct
