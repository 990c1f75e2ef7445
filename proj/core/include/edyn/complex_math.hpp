#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace edyn {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kTwoPiI{0.0, kTwoPi};

/// exp(z) - 1 without cancellation near the lattice 2*pi*i*Z.
template <class T>
std::complex<T> expm1c(const std::complex<T>& z) {
    using std::cos;
    using std::exp;
    using std::expm1;
    using std::sin;
    const T x = z.real();
    const T y = z.imag();
    const T half_sin = sin(y / 2);
    const T re = expm1(x) * cos(y) - 2 * half_sin * half_sin;
    const T im = exp(x) * sin(y);
    return {re, im};
}

inline double principal_arg_diff(cplx a, cplx b) {
    // arg(b / a) in (-pi, pi]
    return std::arg(b / a);
}

/// Nearest multiple of 2*pi*i to z, as the integer index n.
inline long long lattice_index(cplx z) {
    return std::llround(z.imag() / kTwoPi);
}

inline cplx lattice_point(long long n) {
    return {0.0, kTwoPi * static_cast<double>(n)};
}

struct Disc {
    cplx center{};
    double radius = 0.0;

    [[nodiscard]] bool contains(cplx z) const { return std::abs(z - center) < radius; }
};

} // namespace edyn
