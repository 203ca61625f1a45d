#pragma once

#include "punct/core.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace punct {

/// General: n > 2p/(p-1), algebraic correction (ε/r)^l.
/// Borderline: n = 2p/(p-1), logarithmic correction 1/log(cr/ε).
enum class BarrierCase { General, Borderline };

std::string_view to_string(BarrierCase kind) noexcept;

/// Knobs of the barrier ψ(r,t) = φ(r) exp(γ(t+1)) on the annulus ε < r < R.
/// `l` is read only in the General case and `c` only in the Borderline case.
struct BarrierParams {
    BarrierCase kind = BarrierCase::General;
    double R = 10.0;
    double epsilon = 0.01;
    double gamma = 1.0;
    double l = 0.5;
    double c = 2.0;
    /// Radius splitting the "delicate" inner band [ε, δ0] from the rest.
    double delta0 = 0.1;
};

/// Case picked from the regime; l = min(0.5, 1/(p-1)), c = 2, δ0 = 0.1, γ = 1.
BarrierParams default_barrier(const ProblemParams& params, double R, double epsilon);

/// Throws DomainError on violated invariants (0<ε<1<R, γ>0, 0<l<=1 with
/// l(p-1)<=1, c>=2, 0<δ0<1).
void validate(const BarrierParams& bp, const ProblemParams& params);

/// Throws RegimeMismatch unless General meets n > 2p/(p-1) or Borderline meets
/// n = 2p/(p-1).
void require_matching_case(const BarrierParams& bp, const ProblemParams& params);

/// The seven terms of the scaled ψ_rr expansion (J) and the five terms of the
/// scaled drift/absorption/time expansion (I), numbered as J1..J7, I1..I5.
///
/// ψ_rr + ((n-1)/r)ψ_r - ψ^p - ψ_t = prefactor * sum, with
/// prefactor = exp(γ(t+1)) ((r-ε)(R-r))^{-(2/(p-1)+2)}.
struct TermBreakdown {
    std::array<double, 7> J{};
    std::array<double, 5> I{};
    double sum = 0.0;
    double prefactor = 0.0;

    double max_abs_term() const noexcept;
};

double phi(double r, const BarrierParams& bp, const ProblemParams& params);
double psi(double r, double t, const BarrierParams& bp, const ProblemParams& params);
TermBreakdown term_breakdown(double r, double t, const BarrierParams& bp, const ProblemParams& params);
double defect(double r, double t, const BarrierParams& bp, const ProblemParams& params);

namespace detail {
/// Term evaluation on the closed interval [ε, R]; the J/I terms stay finite
/// at the endpoints even though ψ does not.
TermBreakdown terms_closed(double r, double t, const BarrierParams& bp, const ProblemParams& params);
} // namespace detail

struct ScanSpec {
    /// Points on [δ0, R); the inner band [ε, δ0] gets eight times as many.
    int r_count = 200;
    double t_max = 1.0;
    int t_count = 5;
};

/// Relative slack on the sign test, scaled by the largest term at the point.
inline constexpr double kSignTolerance = 1e-9;

struct ScanPoint {
    double r;
    double t;
    double sum;
    double tolerance;
};

struct BandMaximum {
    std::string name;
    double r_lo;
    double r_hi;
    double max_sum;
    double r_at;
};

struct VerificationReport {
    double max_sum = 0.0;
    double r_at = 0.0;
    double t_at = 0.0;
    bool passed = false;
    ScanSpec grid_spec;
    BarrierParams params_used;
    /// inner (ε, δ0], transition (δ0, R/4], outer (R/4, R)
    std::vector<BandMaximum> bands;
    std::vector<ScanPoint> points;

    std::string grid_description() const;
};

/// Radii scanned by verify_supersolution: offsets from ε geometric on
/// [ε(1+1e-4), δ0], geometric in r on [δ0, (δ0+R)/2] and geometric offsets
/// from R on [(δ0+R)/2, R(1-1e-4)].
std::vector<double> scan_radii(const BarrierParams& bp, int r_count);

VerificationReport verify_supersolution(const BarrierParams& bp, const ProblemParams& params,
                                        const ScanSpec& scan = {});

/// Smallest γ (to 1% relative) for which verify_supersolution passes, by
/// doubling from 1e-3 and then bisecting. Throws NotFound past gamma_cap.
double search_gamma(const BarrierParams& bp_template, const ProblemParams& params,
                    const ScanSpec& scan = {}, double gamma_cap = 1e6);

/// Borderline case only: doubles c from 2 until J7 <= |I3| holds on the
/// inner band grid.
double search_c(const BarrierParams& bp_template, const ProblemParams& params, int r_count = 400);

/// Grid on [ε, δ0]: the endpoint ε plus geometric offsets ε + (δ0-ε)s,
/// s in [1e-8, 1].
std::vector<double> inner_band_grid(const BarrierParams& bp, int count);

struct InequalityCheck {
    std::string name;
    bool holds = false;
    /// Smallest constant making the inequality hold on the grid (or the
    /// largest observed ratio, for domination checks).
    double required = 0.0;
    /// Constant the caller supplied, or the bound the check compares against.
    double supplied = 0.0;
};

/// Evaluates the auxiliary inequalities used on the inner band [ε, δ0].
/// Throws DomainError if r_grid leaves [ε, δ0].
std::vector<InequalityCheck> check_key_inequalities(const BarrierParams& bp, const ProblemParams& params,
                                                    double M, double kappa,
                                                    std::span<const double> r_grid);

} // namespace punct
