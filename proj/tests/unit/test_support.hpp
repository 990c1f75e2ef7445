#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "edyn/complex_math.hpp"

namespace edyn::test {

inline std::vector<cplx> uniform_box(std::size_t count, double half_width, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-half_width, half_width);
    std::vector<cplx> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double re = u(rng);
        out.emplace_back(re, u(rng));
    }
    return out;
}

inline std::vector<cplx> uniform_disc(std::size_t count, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = radius * std::sqrt(u(rng));
        out.push_back(std::polar(r, kTwoPi * u(rng)));
    }
    return out;
}

} // namespace edyn::test
