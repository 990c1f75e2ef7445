#pragma once

#include <functional>
#include <optional>

#include "edyn/complex_math.hpp"

namespace edyn {

/// A holomorphic function handle; nullopt marks an overflowing evaluation.
using ComplexFn = std::function<std::optional<cplx>(cplx)>;
/// A closed contour parametrised over t in [0, 1].
using ContourFn = std::function<cplx(double)>;

struct WindingResult {
    cplx center{};
    double radius = 0.0;
    int winding_number = 0;
    double min_boundary_modulus = 0.0;
    /// Argument-principle centroid sum(lambda * dlog g) / (2 pi i): the sum
    /// of the enclosed zeros (with multiplicity), up to quadrature error.
    cplx zero_sum{};
    long long evaluations = 0;
};

struct WindingOptions {
    int min_steps = 64;
    long long max_steps = 1LL << 22;
    double zero_threshold = 1e-12;
    /// Workers for the initial uniform samples; 0 selects the hardware concurrency.
    unsigned workers = 1;
};

/// Winding of g around 0 along the circle |lambda - center| = radius, with
/// every accumulated argument increment below pi/2.
/// Throws ZeroOnContour, StepLimitExceeded, or OverflowInChain.
WindingResult winding_number(const ComplexFn& g, cplx center, double radius, const WindingOptions& options = {});

/// Same along an arbitrary closed contour (center and radius are left zero).
WindingResult winding_along(const ComplexFn& g, const ContourFn& contour, const WindingOptions& options = {});

} // namespace edyn
