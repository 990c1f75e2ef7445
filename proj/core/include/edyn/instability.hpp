#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "edyn/dynamics.hpp"
#include "edyn/winding.hpp"

namespace edyn {

struct FixedPointSample {
    cplx lambda{};
    cplx phi{};
    cplx multiplier{};
};

/// Continuation of a fixed point of lambda * f_p along a parameter path.
struct FixedPointPath {
    int p = 1;
    std::vector<FixedPointSample> samples;
};

/// Predictor-corrector continuation from a fixed point of f_p (lambda = 1)
/// along `path`, which must start at lambda = 1. Throws ContinuationBreakdown
/// when the corrector stalls or jumps, or the multiplier nears 1.
FixedPointPath continue_fixed_point(int p, cplx start_fp, const std::vector<cplx>& path);

struct InstabilityConfig {
    int min_steps = 256;
    /// Side of the square cells at which root localisation stops.
    double cell_size = 1e-6;
    int max_shrinks = 5;
    unsigned workers = 0;
};

struct InstabilityResult {
    int p = 1;
    long long n = 0;
    double delta = 0.0;
    /// Radius actually used for the contour (delta after any overflow shrinks).
    double contour_radius = 0.0;
    cplx lambda0{};
    double residual = 0.0;
    int winding = 0;
    cplx fixed_point{};
    cplx multiplier{};
    FixedPointClass fixed_point_class = FixedPointClass::Indifferent;

    /// {p, n, delta, lambda0_re, lambda0_im, residual, winding}
    [[nodiscard]] std::string to_json() const;
};

/// The repelling fixed point phi(lambda) continued from i pi (p = 1).
cplx instability_fixed_point(cplx lambda);

/// g(lambda) = f_lambda^2(2 pi i n) - phi(lambda), evaluated in extended
/// precision; nullopt when an exponential overflows.
std::optional<std::complex<long double>> instability_function(long long n, cplx lambda);

/// Root of g in B(1, delta) nearest to lambda = 1, localised by winding
/// numbers on square cells and polished by finite-difference Newton.
InstabilityResult find_instability_parameter(int p, long long n, double delta, const InstabilityConfig& config = {});

struct ZerosResult {
    std::vector<cplx> roots;
    std::vector<cplx> failed_seeds;
};

/// Zeros of f1 with imaginary part in (im_lo, im_hi), from seeds -log y + i y,
/// `per_strip` seeds per period 2 pi.
ZerosResult zeros_of_f1(double im_lo, double im_hi, int per_strip = 4);

} // namespace edyn
