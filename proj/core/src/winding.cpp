#include "edyn/winding.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "edyn/error.hpp"
#include "edyn/parallel.hpp"

namespace edyn {
namespace {

struct Sample {
    double t;
    cplx point;
    cplx value;
};

cplx evaluate_checked(const ComplexFn& g, cplx point, double zero_threshold) {
    const auto v = g(point);
    if (!v || !std::isfinite(v->real()) || !std::isfinite(v->imag())) {
        fail(ErrorCode::OverflowInChain, "function overflows on the contour");
    }
    if (std::abs(*v) < zero_threshold) {
        fail(ErrorCode::ZeroOnContour, "function vanishes on the contour");
    }
    return *v;
}

} // namespace

WindingResult winding_along(const ComplexFn& g, const ContourFn& contour, const WindingOptions& options) {
    require(options.min_steps >= 4, ErrorCode::PreconditionViolation, "winding needs at least 4 steps");
    const int n = options.min_steps;
    std::vector<Sample> initial(n + 1);
    parallel_for(static_cast<std::size_t>(n), options.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double t = static_cast<double>(i) / n;
            const cplx p = contour(t);
            initial[i] = {t, p, evaluate_checked(g, p, options.zero_threshold)};
        }
    });
    initial[n] = {1.0, initial[0].point, initial[0].value};

    WindingResult result;
    result.evaluations = n;
    result.min_boundary_modulus = std::abs(initial[0].value);
    double total = 0.0;
    cplx zero_sum{};
    // depth-first refinement in contour order keeps the accumulation sequential
    for (int i = 0; i < n; ++i) {
        std::vector<Sample> stack{initial[i + 1]};
        Sample left = initial[i];
        while (!stack.empty()) {
            const Sample right = stack.back();
            const double step = std::arg(right.value / left.value);
            if (std::abs(step) < 0.5 * std::numbers::pi) {
                total += step;
                const cplx dlog{std::log(std::abs(right.value) / std::abs(left.value)), step};
                zero_sum += 0.5 * (left.point + right.point) * dlog;
                result.min_boundary_modulus = std::min(result.min_boundary_modulus, std::abs(right.value));
                left = right;
                stack.pop_back();
                continue;
            }
            if (++result.evaluations > options.max_steps) {
                fail(ErrorCode::StepLimitExceeded, "argument tracking exceeded its step limit");
            }
            const double t = 0.5 * (left.t + right.t);
            if (t <= left.t || t >= right.t) {
                fail(ErrorCode::StepLimitExceeded, "argument tracking cannot refine further");
            }
            const cplx p = contour(t);
            stack.push_back({t, p, evaluate_checked(g, p, options.zero_threshold)});
        }
    }
    result.winding_number = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    result.zero_sum = zero_sum / cplx{0.0, 2.0 * std::numbers::pi};
    return result;
}

WindingResult winding_number(const ComplexFn& g, cplx center, double radius, const WindingOptions& options) {
    require(radius > 0.0, ErrorCode::PreconditionViolation, "contour radius must be positive");
    const ContourFn circle = [center, radius](double t) { return center + std::polar(radius, kTwoPi * t); };
    auto result = winding_along(g, circle, options);
    result.center = center;
    result.radius = radius;
    return result;
}

} // namespace edyn
