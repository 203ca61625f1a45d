#pragma once

#include "punct/solver.hpp"

#include <cmath>
#include <numbers>

namespace mms {

// e^{-t} r: linear in r, so the stencil is exact and only time error remains.
inline punct::ManufacturedSolution linear_decay()
{
    return {[](double r, double t) { return std::exp(-t) * r; },
            [](double r, double t) { return -std::exp(-t) * r; },
            [](double, double t) { return std::exp(-t); },
            [](double, double) { return 0.0; }};
}

// e^{-t}(2 + sin πr): exercises the spatial stencil.
inline punct::ManufacturedSolution sine_decay()
{
    constexpr double pi = std::numbers::pi;
    return {[](double r, double t) { return std::exp(-t) * (2 + std::sin(pi * r)); },
            [](double r, double t) { return -std::exp(-t) * (2 + std::sin(pi * r)); },
            [](double r, double t) { return std::exp(-t) * pi * std::cos(pi * r); },
            [](double r, double t) { return -std::exp(-t) * pi * pi * std::sin(pi * r); }};
}

inline punct::ManufacturedSolution zero()
{
    auto z = [](double, double) { return 0.0; };
    return {z, z, z, z};
}

} // namespace mms
