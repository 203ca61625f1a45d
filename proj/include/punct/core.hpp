#pragma once

#include <limits>
#include <string_view>

namespace punct {

/// Dimension and absorption exponent of u_t = Δu - u^p on R^n minus the origin.
/// Construction enforces n >= 2 and p > 1.
class ProblemParams {
public:
    ProblemParams(int n, double p);

    int n() const noexcept { return n_; }
    double p() const noexcept { return p_; }

    /// 2/(p-1), the scaling exponent of the singular stationary profile.
    double alpha() const noexcept { return 2.0 / (p_ - 1.0); }

    /// 2p/(p-1). Uniqueness holds iff n >= this value.
    double threshold_dimension() const noexcept { return 2.0 * p_ / (p_ - 1.0); }

private:
    int n_;
    double p_;
};

enum class RegimeTag { Subcritical, Critical, Supercritical };

std::string_view to_string(RegimeTag tag) noexcept;

struct Regime {
    RegimeTag tag;
    /// n/(n-2); +infinity for n = 2.
    double critical_exponent;
};

/// Relative tolerance under which p is treated as equal to n/(n-2).
inline constexpr double kCriticalTolerance = 1e-12;

Regime classify_regime(const ProblemParams& params) noexcept;

/// W(r) = amplitude * r^{-exponent}, a positive stationary solution.
struct StationaryProfile {
    double amplitude;
    double exponent;
};

/// Throws RegimeError when n >= 2p/(p-1).
StationaryProfile stationary_amplitude(const ProblemParams& params);

double stationary_value(const StationaryProfile& profile, double r);
double stationary_derivative(const StationaryProfile& profile, double r);
double stationary_second_derivative(const StationaryProfile& profile, double r);

/// u'' + ((n-1)/r) u' - u^p for supplied derivative values.
double radial_residual(double u, double du, double ddu, double r, const ProblemParams& params);

/// Same operator with a real dimension, used internally by sweeps and tests.
double radial_residual(double u, double du, double ddu, double r, double n, double p);

} // namespace punct
