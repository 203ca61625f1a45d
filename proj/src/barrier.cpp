#include "punct/barrier.hpp"

#include "punct/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace punct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared factors of both expansions at radius r.
struct Factors {
    double a;      // 2/(p-1)
    double D;      // (r-ε)(R-r)
    double A;      // R+ε-2r
    double B;      // 1+r
    double F;      // 1 + correction
    double Ra;     // R^a
};

Factors factors(double r, const BarrierParams& bp, const ProblemParams& params)
{
    Factors f{};
    f.a = params.alpha();
    f.D = (r - bp.epsilon) * (bp.R - r);
    f.A = bp.R + bp.epsilon - 2.0 * r;
    f.B = 1.0 + r;
    f.Ra = std::pow(bp.R, f.a);
    if (bp.kind == BarrierCase::General) {
        f.F = 1.0 + std::pow(bp.epsilon / r, bp.l) * f.Ra;
    } else {
        const double L = std::log(bp.c * r / bp.epsilon);
        f.F = 1.0 + std::pow(bp.R * bp.R / L, 1.0 / (params.p() - 1.0));
    }
    return f;
}

double log_shift(double r, const BarrierParams& bp)
{
    const double L = std::log(bp.c * r / bp.epsilon);
    if (!(L > 0.0))
        throw DomainError("log(c r / eps) must be positive");
    return L;
}

void fill_general(TermBreakdown& tb, const Factors& f, double r, double t, const BarrierParams& bp,
                  const ProblemParams& params)
{
    const double a = f.a, D = f.D, A = f.A, B = f.B, F = f.F, Ra = f.Ra;
    const double l = bp.l, eps = bp.epsilon, n1 = params.n() - 1.0, p = params.p();
    const double epsl = std::pow(eps, l);
    const double Ba = std::pow(B, a);

    tb.J[0] = a * (a + 1.0) * A * A * Ba * F;
    tb.J[1] = 2.0 * a * D * Ba * F;
    tb.J[2] = -2.0 * a * a * D * A * std::pow(B, a - 1.0) * F;
    tb.J[3] = 2.0 * l * a * D * A * Ba * epsl / std::pow(r, l + 1.0) * Ra;
    tb.J[4] = a * (a - 1.0) * D * D * std::pow(B, a - 2.0) * F;
    tb.J[5] = -2.0 * l * a * D * D * std::pow(B, a - 1.0) * epsl / std::pow(r, l + 1.0) * Ra;
    tb.J[6] = l * (l + 1.0) * D * D * Ba * epsl / std::pow(r, l + 2.0) * Ra;

    tb.I[0] = -a * (n1 / r) * D * A * Ba * F;
    tb.I[1] = a * (n1 / r) * D * D * std::pow(B, a - 1.0) * F;
    tb.I[2] = -l * (n1 / r) * D * D * Ba * epsl / std::pow(r, l + 1.0) * Ra;
    tb.I[3] = -bp.gamma * D * D * Ba * F;
    tb.I[4] = -std::pow(B, 2.0 * p / (p - 1.0)) * std::pow(F, p) * std::exp((p - 1.0) * bp.gamma * (t + 1.0));
}

void fill_borderline(TermBreakdown& tb, const Factors& f, double r, double t, const BarrierParams& bp,
                     const ProblemParams& params)
{
    const double a = f.a, D = f.D, A = f.A, B = f.B, F = f.F, Ra = f.Ra;
    const double n1 = params.n() - 1.0, p = params.p();
    const double L = log_shift(r, bp);
    const double Ba = std::pow(B, a);
    // 1 / (r log^{p/(p-1)}) and its companions from differentiating the log correction
    const double log_p = std::pow(L, p / (p - 1.0));
    const double log_2p1 = std::pow(L, (2.0 * p - 1.0) / (p - 1.0));
    const double inv_r_log = 1.0 / (r * log_p);

    tb.J[0] = a * (a + 1.0) * A * A * Ba * F;
    tb.J[1] = 2.0 * a * D * Ba * F;
    tb.J[2] = -2.0 * a * a * D * A * std::pow(B, a - 1.0) * F;
    tb.J[3] = a * a * D * A * Ba * inv_r_log * Ra;
    tb.J[4] = a * (a - 1.0) * D * D * std::pow(B, a - 2.0) * F;
    tb.J[5] = -a * a * D * D * std::pow(B, a - 1.0) * inv_r_log * Ra;
    tb.J[6] = (1.0 / (p - 1.0)) * D * D * Ba *
              (1.0 / (r * r * log_p) + p / ((p - 1.0) * r * r * log_2p1)) * Ra;

    tb.I[0] = -a * (n1 / r) * D * A * Ba * F;
    tb.I[1] = a * (n1 / r) * D * D * std::pow(B, a - 1.0) * F;
    tb.I[2] = -(1.0 / (p - 1.0)) * (n1 / r) * D * D * Ba * inv_r_log * Ra;
    tb.I[3] = -bp.gamma * D * D * Ba * F;
    tb.I[4] = -std::pow(B, 2.0 * p / (p - 1.0)) * std::pow(F, p) * std::exp((p - 1.0) * bp.gamma * (t + 1.0));
}

void require_interior(double r, const BarrierParams& bp)
{
    if (!(r > bp.epsilon && r < bp.R))
        throw DomainError("r=" + std::to_string(r) + " outside the open annulus (" +
                          std::to_string(bp.epsilon) + ", " + std::to_string(bp.R) + ")");
}

std::vector<double> geometric(double lo, double hi, int count)
{
    std::vector<double> out;
    if (count <= 0)
        return out;
    if (count == 1)
        return {hi};
    out.reserve(static_cast<std::size_t>(count));
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i)
        out.push_back(lo * std::exp(step * i));
    out.back() = hi;
    return out;
}

} // namespace

std::string_view to_string(BarrierCase kind) noexcept
{
    return kind == BarrierCase::General ? "General" : "Borderline";
}

double TermBreakdown::max_abs_term() const noexcept
{
    double m = 0.0;
    for (double v : J)
        m = std::max(m, std::abs(v));
    for (double v : I)
        m = std::max(m, std::abs(v));
    return m;
}

BarrierParams default_barrier(const ProblemParams& params, double R, double epsilon)
{
    BarrierParams bp;
    bp.R = R;
    bp.epsilon = epsilon;
    bp.kind = classify_regime(params).tag == RegimeTag::Critical ? BarrierCase::Borderline
                                                                 : BarrierCase::General;
    bp.l = std::min(0.5, 1.0 / (params.p() - 1.0));
    return bp;
}

void validate(const BarrierParams& bp, const ProblemParams& params)
{
    auto fail = [](const std::string& what) { throw DomainError("barrier: " + what); };
    if (!(bp.epsilon > 0.0 && bp.epsilon < 1.0))
        fail("epsilon must lie in (0, 1)");
    if (!(bp.R > 1.0) || !std::isfinite(bp.R))
        fail("R must be finite and > 1");
    if (!(bp.gamma > 0.0) || !std::isfinite(bp.gamma))
        fail("gamma must be finite and > 0");
    if (!(bp.delta0 > 0.0 && bp.delta0 < 1.0))
        fail("delta0 must lie in (0, 1)");
    if (!(bp.delta0 > bp.epsilon))
        fail("delta0 must exceed epsilon");
    if (bp.kind == BarrierCase::General) {
        if (!(bp.l > 0.0 && bp.l <= 1.0))
            fail("l must lie in (0, 1]");
        if (bp.l * (params.p() - 1.0) > 1.0 + 1e-12)
            fail("l must satisfy l(p-1) <= 1");
    } else if (!(bp.c >= 2.0) || !std::isfinite(bp.c)) {
        fail("c must be finite and >= 2");
    }
}

void require_matching_case(const BarrierParams& bp, const ProblemParams& params)
{
    const RegimeTag tag = classify_regime(params).tag;
    if (bp.kind == BarrierCase::General && tag != RegimeTag::Supercritical)
        throw RegimeMismatch("General barrier requires n > 2p/(p-1); regime is " +
                             std::string(to_string(tag)));
    if (bp.kind == BarrierCase::Borderline && tag != RegimeTag::Critical)
        throw RegimeMismatch("Borderline barrier requires n = 2p/(p-1); regime is " +
                             std::string(to_string(tag)));
}

double phi(double r, const BarrierParams& bp, const ProblemParams& params)
{
    require_interior(r, bp);
    if (bp.kind == BarrierCase::Borderline)
        log_shift(r, bp);
    const Factors f = factors(r, bp, params);
    return std::pow(f.D, -f.a) * std::pow(f.B, f.a) * f.F;
}

double psi(double r, double t, const BarrierParams& bp, const ProblemParams& params)
{
    if (t < 0.0)
        throw DomainError("barrier needs t >= 0");
    return phi(r, bp, params) * std::exp(bp.gamma * (t + 1.0));
}

namespace detail {

TermBreakdown terms_closed(double r, double t, const BarrierParams& bp, const ProblemParams& params)
{
    if (!(r >= bp.epsilon && r <= bp.R))
        throw DomainError("r=" + std::to_string(r) + " outside [eps, R]");
    if (t < 0.0)
        throw DomainError("barrier needs t >= 0");
    const Factors f = factors(r, bp, params);
    TermBreakdown tb;
    if (bp.kind == BarrierCase::General)
        fill_general(tb, f, r, t, bp, params);
    else
        fill_borderline(tb, f, r, t, bp, params);

    double s = 0.0;
    for (double v : tb.J)
        s += v;
    for (double v : tb.I)
        s += v;
    tb.sum = s;
    tb.prefactor = (f.D > 0.0) ? std::exp(bp.gamma * (t + 1.0)) * std::pow(f.D, -(f.a + 2.0)) : kInf;
    return tb;
}

} // namespace detail

TermBreakdown term_breakdown(double r, double t, const BarrierParams& bp, const ProblemParams& params)
{
    require_interior(r, bp);
    return detail::terms_closed(r, t, bp, params);
}

double defect(double r, double t, const BarrierParams& bp, const ProblemParams& params)
{
    const TermBreakdown tb = term_breakdown(r, t, bp, params);
    return tb.prefactor * tb.sum;
}

std::vector<double> scan_radii(const BarrierParams& bp, int r_count)
{
    if (r_count < 2)
        throw DomainError("scan needs r_count >= 2");
    const double eps = bp.epsilon, R = bp.R, d0 = bp.delta0;
    std::vector<double> radii;

    // inner band, clustered at ε
    const double width = d0 - eps;
    for (double s : geometric(eps * 1e-4 / width, 1.0, 8 * r_count))
        radii.push_back(eps + width * s);

    const double mid = 0.5 * (d0 + R);
    const int half = std::max(1, r_count / 2);
    for (double r : geometric(d0, mid, half + 1))
        radii.push_back(r);
    for (double off : geometric(R * 1e-4, R - mid, r_count - half + 1))
        radii.push_back(R - off);

    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

std::string VerificationReport::grid_description() const
{
    std::ostringstream os;
    os << "r: " << 8 * grid_spec.r_count << " geometric offsets on [eps(1+1e-4), delta0] + "
       << grid_spec.r_count << " points on [delta0, R(1-1e-4)]; t: " << grid_spec.t_count
       << " uniform on [0, " << grid_spec.t_max << "]";
    return os.str();
}

VerificationReport verify_supersolution(const BarrierParams& bp, const ProblemParams& params,
                                        const ScanSpec& scan)
{
    validate(bp, params);
    require_matching_case(bp, params);
    if (scan.t_count < 1 || !(scan.t_max >= 0.0))
        throw DomainError("scan needs t_count >= 1 and t_max >= 0");

    VerificationReport report;
    report.grid_spec = scan;
    report.params_used = bp;
    report.passed = true;
    report.max_sum = -kInf;
    report.bands = {
        {"inner", bp.epsilon, bp.delta0, -kInf, 0.0},
        {"transition", bp.delta0, std::max(bp.delta0, bp.R / 4.0), -kInf, 0.0},
        {"outer", std::max(bp.delta0, bp.R / 4.0), bp.R, -kInf, 0.0},
    };

    const std::vector<double> radii = scan_radii(bp, scan.r_count);
    report.points.reserve(radii.size() * static_cast<std::size_t>(scan.t_count));
    for (int k = 0; k < scan.t_count; ++k) {
        const double t = scan.t_count == 1 ? 0.0 : scan.t_max * k / (scan.t_count - 1);
        for (double r : radii) {
            const TermBreakdown tb = term_breakdown(r, t, bp, params);
            const double tol = kSignTolerance * std::max(1.0, tb.max_abs_term());
            report.points.push_back({r, t, tb.sum, tol});
            if (std::isnan(tb.sum) || tb.sum > tol)
                report.passed = false;
            if (tb.sum > report.max_sum || std::isnan(tb.sum)) {
                report.max_sum = tb.sum;
                report.r_at = r;
                report.t_at = t;
            }
            auto& band = r <= bp.delta0 ? report.bands[0] : (r <= report.bands[1].r_hi ? report.bands[1] : report.bands[2]);
            if (tb.sum > band.max_sum) {
                band.max_sum = tb.sum;
                band.r_at = r;
            }
        }
    }
    return report;
}

double search_gamma(const BarrierParams& bp_template, const ProblemParams& params, const ScanSpec& scan,
                    double gamma_cap)
{
    BarrierParams bp = bp_template;
    bp.gamma = 1.0;
    validate(bp, params);
    require_matching_case(bp, params);

    auto passes = [&](double gamma) {
        bp.gamma = gamma;
        return verify_supersolution(bp, params, scan).passed;
    };

    double lo = 0.0;
    double hi = 1e-3;
    while (!passes(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > gamma_cap)
            throw NotFound("no gamma <= " + std::to_string(gamma_cap) + " passes the supersolution scan");
    }
    while (hi - lo > 1e-2 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<double> inner_band_grid(const BarrierParams& bp, int count)
{
    if (count < 2)
        throw DomainError("inner band grid needs count >= 2");
    std::vector<double> grid{bp.epsilon};
    const double width = bp.delta0 - bp.epsilon;
    for (double s : geometric(1e-8, 1.0, count - 1))
        grid.push_back(bp.epsilon + width * s);
    grid.back() = bp.delta0;
    return grid;
}

double search_c(const BarrierParams& bp_template, const ProblemParams& params, int r_count)
{
    if (bp_template.kind != BarrierCase::Borderline)
        throw DomainError("search_c applies to the Borderline case only");
    BarrierParams bp = bp_template;
    bp.c = 2.0;
    validate(bp, params);
    require_matching_case(bp, params);

    for (; bp.c <= 1e12; bp.c *= 2.0) {
        bool ok = true;
        for (double r : inner_band_grid(bp, r_count)) {
            if (r <= bp.epsilon)
                continue;
            const TermBreakdown tb = detail::terms_closed(r, 0.0, bp, params);
            if (tb.J[6] > std::abs(tb.I[2])) {
                ok = false;
                break;
            }
        }
        if (ok)
            return bp.c;
    }
    throw NotFound("no c <= 1e12 gives J7 <= |I3| on the inner band");
}

std::vector<InequalityCheck> check_key_inequalities(const BarrierParams& bp, const ProblemParams& params,
                                                    double M, double kappa,
                                                    std::span<const double> r_grid)
{
    validate(bp, params);
    require_matching_case(bp, params);
    for (double r : r_grid) {
        if (!(r >= bp.epsilon && r <= bp.delta0))
            throw DomainError("key-inequality grid point r=" + std::to_string(r) + " leaves [eps, delta0]");
    }

    const double eps = bp.epsilon, R = bp.R, p = params.p(), n1 = params.n() - 1.0;
    const bool general = bp.kind == BarrierCase::General;

    // ratio a/b with 0/0 treated as 0 (every D-carrying term vanishes at r = ε)
    auto ratio = [](double num, double den) {
        if (num == 0.0)
            return 0.0;
        return den == 0.0 ? kInf : num / den;
    };

    double j2_M = 0.0, final_M = 0.0;
    double j5_i4 = 0.0, j7_i3 = 0.0, j2_i45 = 0.0, j4_i5 = 0.0, i2_j3 = 0.0;
    double j7_identity = 0.0, kappa_req = 0.0, identity_err = 0.0;
    double C_req = -kInf, combined = -kInf, log_max = 0.0;
    std::vector<TermBreakdown> terms;
    std::vector<Factors> facs;
    terms.reserve(r_grid.size());

    for (double r : r_grid) {
        const TermBreakdown tb = detail::terms_closed(r, 0.0, bp, params);
        const Factors f = factors(r, bp, params);
        terms.push_back(tb);
        facs.push_back(f);
        const auto& J = tb.J;
        const auto& I = tb.I;
        const double Fp1 = std::pow(f.F, p - 1.0);

        j2_M = std::max(j2_M, (r - eps) * R / ((r - eps) * (r - eps) * R * R + Fp1));
        final_M = std::max(final_M, (eps / r) * R * R / Fp1);
        j5_i4 = std::max(j5_i4, ratio(J[4], std::abs(I[3])));
        j7_i3 = std::max(j7_i3, ratio(J[6], std::abs(I[2])));
        j2_i45 = std::max(j2_i45, ratio(J[1], std::abs(I[3]) + std::abs(I[4])));
        j4_i5 = std::max(j4_i5, ratio(J[3], std::abs(I[4])));
        i2_j3 = std::max(i2_j3, ratio(I[1], std::abs(J[2])));

        if (general) {
            const double expected = (bp.l + 1.0) / n1 * std::abs(I[2]);
            if (expected > 0.0)
                j7_identity = std::max(j7_identity, std::abs(J[6] - expected) / expected);
            if (I[0] != 0.0)
                kappa_req = std::max(kappa_req, (J[3] + I[1]) / std::abs(I[0]));
        } else {
            log_max = std::max(log_max, (eps / r) * std::log(bp.c * r / eps));
        }
    }

    // With κ fixed, the bracket of the factored J1 + (1-κ)I1 is compared against
    // (ε/r)R. In the Borderline case κ = 0 (J4 and I2 are handled elsewhere).
    const double k_used = general ? std::max(kappa, kappa_req) : 0.0;
    const double k1 = 2.0 * (p + 1.0) / ((p - 1.0) * (p - 1.0));
    const double k2 = 2.0 * n1 / (p - 1.0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double r = r_grid[i];
        const Factors& f = facs[i];
        const double bracket = k1 * f.A - (1.0 - k_used) * k2 * ((r - eps) / r) * (R - r);
        const double outer = std::pow(f.B, f.a) * f.A * f.F;
        const double product = outer * bracket;
        const auto& J = terms[i].J;
        const auto& I = terms[i].I;
        const double direct = J[0] + (1.0 - k_used) * I[0];
        const double scale = std::abs(J[0]) + std::abs(I[0]);
        if (scale > 0.0)
            identity_err = std::max(identity_err, std::abs(direct - product) / scale);
        C_req = std::max(C_req, bracket / ((eps / r) * R));
        const double lhs = general ? J[0] + J[3] + I[1] + I[0] + I[4] : J[0] + I[0] + I[4];
        combined = std::max(combined, lhs / terms[i].max_abs_term());
    }

    std::vector<InequalityCheck> out;
    out.push_back({"J2", M >= j2_M, j2_M, M});
    out.push_back({"J5<=|I4|", j5_i4 <= 1.0, j5_i4, 1.0});
    out.push_back({"J2<=|I4|+|I5|", j2_i45 <= 1.0, j2_i45, 1.0});
    out.push_back({"J7<=|I3|", j7_i3 <= 1.0, j7_i3, 1.0});
    if (general) {
        out.push_back({"J7=(l+1)/(n-1)|I3|", j7_identity <= 1e-12, j7_identity, 1e-12});
        out.push_back({"kappa", kappa >= kappa_req, kappa_req, kappa});
        out.push_back({"J1I1", identity_err <= 1e-12, identity_err, 1e-12});
        out.push_back({"factor", std::isfinite(C_req), C_req, k_used});
        out.push_back({"J1I1I5", combined <= kSignTolerance, combined, 0.0});
        out.push_back({"final", M >= final_M, final_M, M});
        out.push_back({"final_bound", final_M <= 1.0 + 1e-12, final_M, 1.0});
    } else {
        out.push_back({"J4<=|I5|", j4_i5 <= 1.0, j4_i5, 1.0});
        out.push_back({"I2<=|J3|", i2_j3 <= 1.0, i2_j3, 1.0});
        out.push_back({"JI", std::isfinite(C_req), C_req, 0.0});
        out.push_back({"J1I1I5", combined <= kSignTolerance, combined, 0.0});
        out.push_back({"thatsit", M >= final_M, final_M, M});
        const double bound = std::max(std::log(bp.c), bp.c / std::exp(1.0));
        out.push_back({"log_bounded", log_max <= bound * (1.0 + 1e-12), log_max, bound});
    }
    return out;
}

} // namespace punct
