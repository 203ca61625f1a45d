#include "punct/core.hpp"

#include "punct/errors.hpp"

#include <cmath>
#include <string>

namespace punct {

ProblemParams::ProblemParams(int n, double p) : n_(n), p_(p)
{
    if (n < 2)
        throw DomainError("dimension n must be >= 2, got " + std::to_string(n));
    if (!(p > 1.0) || !std::isfinite(p))
        throw DomainError("exponent p must be a finite value > 1, got " + std::to_string(p));
}

std::string_view to_string(RegimeTag tag) noexcept
{
    switch (tag) {
    case RegimeTag::Subcritical:
        return "Subcritical";
    case RegimeTag::Critical:
        return "Critical";
    case RegimeTag::Supercritical:
        return "Supercritical";
    }
    return "Unknown";
}

Regime classify_regime(const ProblemParams& params) noexcept
{
    if (params.n() == 2)
        return {RegimeTag::Subcritical, std::numeric_limits<double>::infinity()};

    const double pc = static_cast<double>(params.n()) / (params.n() - 2);
    if (std::abs(params.p() - pc) <= kCriticalTolerance * pc)
        return {RegimeTag::Critical, pc};
    return {params.p() < pc ? RegimeTag::Subcritical : RegimeTag::Supercritical, pc};
}

StationaryProfile stationary_amplitude(const ProblemParams& params)
{
    const Regime regime = classify_regime(params);
    const double base = params.alpha() * (params.threshold_dimension() - params.n());
    if (regime.tag != RegimeTag::Subcritical || !(base > 0.0)) {
        throw RegimeError("no positive stationary profile: n=" + std::to_string(params.n()) +
                          " >= 2p/(p-1)=" + std::to_string(params.threshold_dimension()));
    }
    return {std::pow(base, 1.0 / (params.p() - 1.0)), params.alpha()};
}

double stationary_value(const StationaryProfile& profile, double r)
{
    if (!(r > 0.0))
        throw DomainError("stationary profile needs r > 0");
    return profile.amplitude * std::pow(r, -profile.exponent);
}

double stationary_derivative(const StationaryProfile& profile, double r)
{
    return -profile.exponent * stationary_value(profile, r) / r;
}

double stationary_second_derivative(const StationaryProfile& profile, double r)
{
    return profile.exponent * (profile.exponent + 1.0) * stationary_value(profile, r) / (r * r);
}

double radial_residual(double u, double du, double ddu, double r, double n, double p)
{
    if (!(r > 0.0))
        throw DomainError("radial operator needs r > 0");
    if (u < 0.0)
        throw DomainError("radial operator needs u >= 0");
    return ddu + (n - 1.0) / r * du - std::pow(u, p);
}

double radial_residual(double u, double du, double ddu, double r, const ProblemParams& params)
{
    return radial_residual(u, du, ddu, r, static_cast<double>(params.n()), params.p());
}

} // namespace punct
