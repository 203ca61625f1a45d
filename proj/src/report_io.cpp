#include "punct/report_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace punct {

namespace {

nlohmann::json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json number_or_null(const std::optional<double>& v)
{
    return v ? number_or_null(*v) : nlohmann::json(nullptr);
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj)
{
    std::string out = "t,r,u\n";
    for (const Field& f : traj.snapshots) {
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            out += format_number(f.time) + ',' + format_number(traj.grid.nodes[i]) + ',' +
                   format_number(f.values[i]) + '\n';
        }
    }
    return out;
}

std::string verification_csv(const VerificationReport& report)
{
    std::string out = "r,t,sum,tolerance\n";
    for (const ScanPoint& pt : report.points) {
        out += format_number(pt.r) + ',' + format_number(pt.t) + ',' + format_number(pt.sum) + ',' +
               format_number(pt.tolerance) + '\n';
    }
    return out;
}

std::string verification_text(const VerificationReport& report)
{
    const BarrierParams& bp = report.params_used;
    std::ostringstream os;
    os << "case: " << to_string(bp.kind) << "\n"
       << "R=" << format_number(bp.R) << " eps=" << format_number(bp.epsilon) << " gamma=" << format_number(bp.gamma);
    if (bp.kind == BarrierCase::General)
        os << " l=" << format_number(bp.l);
    else
        os << " c=" << format_number(bp.c);
    os << " delta0=" << format_number(bp.delta0) << "\n"
       << "grid: " << report.grid_description() << "\n"
       << "max_sum: " << format_number(report.max_sum) << " at r=" << format_number(report.r_at)
       << " t=" << format_number(report.t_at) << "\n";
    for (const BandMaximum& band : report.bands) {
        os << "  band " << band.name << " (" << format_number(band.r_lo) << ", " << format_number(band.r_hi)
           << "]: max_sum=" << format_number(band.max_sum) << " at r=" << format_number(band.r_at) << "\n";
    }
    os << "passed: " << (report.passed ? "true" : "false") << "\n";
    return os.str();
}

std::string maximal_csv(const MaximalRunReport& report)
{
    std::string out = "stage,M,eps,R,probe_value\n";
    for (std::size_t k = 0; k < report.stages.size(); ++k) {
        const StageResult& s = report.stages[k];
        out += std::to_string(k) + ',' + format_number(s.M) + ',' + format_number(s.eps) + ',' + format_number(s.R) +
               ',' + format_number(s.probe_value) + '\n';
    }
    return out;
}

std::string maximal_text(const MaximalRunReport& report, const ProblemParams& params)
{
    std::ostringstream os;
    const Regime regime = classify_regime(params);
    os << "n=" << params.n() << " p=" << format_number(params.p()) << " regime=" << to_string(regime.tag) << "\n";
    for (std::size_t k = 0; k < report.stages.size(); ++k) {
        const StageResult& s = report.stages[k];
        os << "stage " << k << ": M=" << format_number(s.M) << " eps=" << format_number(s.eps)
           << " R=" << format_number(s.R) << " nodes=" << s.nodes << " probe=" << format_number(s.probe_value) << "\n";
    }
    os << "extrapolated_limit: " << format_number(report.extrapolated_limit) << "\n";
    if (report.stationary_reference) {
        os << "stationary_reference W(probe_r): " << format_number(*report.stationary_reference)
           << " ratio=" << format_number(*report.reference_ratio) << "\n";
    }
    os << "monotonicity_ok: " << (report.monotonicity_ok ? "true" : "false") << "\n"
       << "verdict: " << to_string(report.verdict) << "\n";
    return os.str();
}

std::string sweep_csv(const SweepResult& result)
{
    std::string out = "n,p,verdict,probe_value,M_last,eps_last,R_last\n";
    for (const SweepRow& row : result.rows) {
        out += std::to_string(result.n) + ',' + format_number(row.p) + ',' + std::string(to_string(row.verdict)) + ',' +
               format_number(row.probe_value) + ',' + format_number(row.M_last) + ',' + format_number(row.eps_last) +
               ',' + format_number(row.R_last) + '\n';
    }
    return out;
}

std::string sweep_json(const SweepResult& result)
{
    nlohmann::json j;
    j["n"] = result.n;
    j["estimated_pc"] = number_or_null(result.estimated_pc);
    j["true_pc"] = result.n > 2 ? nlohmann::json(static_cast<double>(result.n) / (result.n - 2)) : nlohmann::json(nullptr);
    j["bracket"] = result.bracket_lo ? nlohmann::json::array({*result.bracket_lo, *result.bracket_hi})
                                     : nlohmann::json(nullptr);
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : result.rows) {
        rows.push_back({{"p", row.p},
                        {"verdict", std::string(to_string(row.verdict))},
                        {"probe_value", number_or_null(row.probe_value)},
                        {"extrapolated_limit", number_or_null(row.extrapolated_limit)},
                        {"M_last", number_or_null(row.M_last)},
                        {"eps_last", row.eps_last},
                        {"R_last", row.R_last},
                        {"slow_transition", row.slow_transition},
                        {"flagged", row.flagged}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

} // namespace punct
