#include "punct/experiments.hpp"

#include "punct/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace punct {

namespace {

constexpr double kSlowTransitionBand = 0.05;

} // namespace

void validate(const SweepSpec& spec)
{
    if (spec.n < 2)
        throw DomainError("sweep: n must be >= 2");
    if (spec.p_values.empty())
        throw DomainError("sweep: p_values is empty");
    for (std::size_t i = 0; i < spec.p_values.size(); ++i) {
        if (!(spec.p_values[i] > 1.0))
            throw DomainError("sweep: p values must exceed 1");
        if (i > 0 && !(spec.p_values[i] > spec.p_values[i - 1]))
            throw DomainError("sweep: p_values must be strictly increasing");
    }
    if (spec.jobs < 1)
        throw DomainError("sweep: jobs must be >= 1");
    validate(spec.schedule);
}

SweepResult sweep_p(const SweepSpec& spec)
{
    validate(spec);
    const std::size_t count = spec.p_values.size();
    std::vector<MaximalRunReport> reports(count);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                reports[i] = run_schedule(ProblemParams(spec.n, spec.p_values[i]), spec.schedule, spec.solver);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), count));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    SweepResult result;
    result.n = spec.n;
    const double pc = spec.n > 2 ? static_cast<double>(spec.n) / (spec.n - 2) : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const MaximalRunReport& rep = reports[i];
        const StageResult& last = rep.stages.back();
        const double p = spec.p_values[i];
        result.rows.push_back({p, rep.verdict, rep.probe_values.back(), last.M, last.eps, last.R, rep.extrapolated_limit,
                               std::isfinite(pc) && std::abs(p - pc) <= kSlowTransitionBand * pc, false});
    }

    // Ordered means: Nontrivial rows, then Trivial rows, nothing Inconclusive.
    bool ordered = true;
    bool seen_trivial = false;
    for (SweepRow& row : result.rows) {
        if (row.verdict == Verdict::Inconclusive || (row.verdict == Verdict::Nontrivial && seen_trivial)) {
            row.flagged = true;
            ordered = false;
        }
        seen_trivial = seen_trivial || row.verdict == Verdict::Trivial;
    }
    if (!ordered)
        return result;

    const auto first_trivial = std::find_if(result.rows.begin(), result.rows.end(),
                                            [](const SweepRow& r) { return r.verdict == Verdict::Trivial; });
    if (first_trivial == result.rows.begin() || first_trivial == result.rows.end())
        return result;
    result.bracket_lo = std::prev(first_trivial)->p;
    result.bracket_hi = first_trivial->p;
    result.estimated_pc = 0.5 * (*result.bracket_lo + *result.bracket_hi);
    return result;
}

CriticalExponentComparison estimate_critical_exponent(const SweepResult& result, int n)
{
    if (!result.estimated_pc)
        throw MissingEstimate("sweep produced no critical-exponent estimate");
    if (n < 3)
        throw MissingEstimate("n = 2 has no finite critical exponent");
    const double truth = static_cast<double>(n) / (n - 2);
    CriticalExponentComparison cmp{};
    cmp.estimated = *result.estimated_pc;
    cmp.truth = truth;
    cmp.relative_gap = std::abs(cmp.estimated - truth) / truth;
    cmp.bracket_lo = *result.bracket_lo;
    cmp.bracket_hi = *result.bracket_hi;
    cmp.bracketed = cmp.bracket_lo <= truth && truth <= cmp.bracket_hi;
    return cmp;
}

} // namespace punct
