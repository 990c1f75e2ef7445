#include "edyn/raster.hpp"

#include <cmath>

#include "edyn/dynamics.hpp"
#include "edyn/error.hpp"
#include "edyn/parallel.hpp"

namespace edyn {

std::string classifier_name(Classifier c) {
    switch (c) {
    case Classifier::EscapeRight: return "escape-right";
    case Classifier::FixedPointBasins: return "fixed-point-basins";
    case Classifier::DriftCompensatedBasins: return "drift-compensated-basins";
    }
    return "escape-right";
}

Classifier parse_classifier(const std::string& name) {
    for (const auto c : {Classifier::EscapeRight, Classifier::FixedPointBasins, Classifier::DriftCompensatedBasins}) {
        if (classifier_name(c) == name) {
            return c;
        }
    }
    fail(ErrorCode::UsageError, "unknown classifier '" + name + "'");
}

void RasterConfig::validate() const {
    require(width >= 1 && height >= 1, ErrorCode::PreconditionViolation, "raster needs positive dimensions");
    require(static_cast<double>(width) * height <= 1e8, ErrorCode::PreconditionViolation,
            "raster exceeds 1e8 pixels");
    require(viewport.re_max > viewport.re_min && viewport.im_max > viewport.im_min, ErrorCode::PreconditionViolation,
            "degenerate viewport");
    require(budget >= 1, ErrorCode::PreconditionViolation, "budget must be at least 1");
}

cplx RasterConfig::pixel_center(int x, int y) const {
    const double re = viewport.re_min + (x + 0.5) * (viewport.re_max - viewport.re_min) / width;
    const double im = viewport.im_max - (y + 0.5) * (viewport.im_max - viewport.im_min) / height;
    return {re, im};
}

std::uint32_t basin_class(long long n) {
    return n >= 0 ? static_cast<std::uint32_t>(2 * n + 1) : static_cast<std::uint32_t>(-2 * n);
}

std::uint32_t classify_pixel(const RasterConfig& config, cplx z) {
    EscapePolicy policy;
    policy.escape_re = config.escape_re;
    policy.tolerance = config.tolerance;
    policy.drift_compensated = config.classifier == Classifier::DriftCompensatedBasins;
    const auto orbit = iterate(config.map, z, config.budget, policy);
    if (config.classifier == Classifier::EscapeRight) {
        const bool escaped = orbit.status == OrbitStatus::EscapedRight ||
                             (orbit.status == OrbitStatus::ExpOverflow &&
                              orbit.overflow_direction == OverflowDirection::PositiveRealDominant);
        return escaped ? 1U : 0U;
    }
    if (orbit.status != OrbitStatus::ConvergedToPoint) {
        return 0U;
    }
    const cplx limit = *orbit.limit;
    const long long n = lattice_index(limit);
    if (std::abs(limit - lattice_point(n)) > 1e-3) {
        return 0U;
    }
    return basin_class(n);
}

Image render_raster(const RasterConfig& config) {
    config.validate();
    Image image;
    image.width = config.width;
    image.height = config.height;
    image.pixels.assign(static_cast<std::size_t>(config.width) * config.height, 0U);
    parallel_for(static_cast<std::size_t>(config.height), config.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t y = begin; y < end; ++y) {
            std::uint32_t* row = image.pixels.data() + y * static_cast<std::size_t>(config.width);
            for (int x = 0; x < config.width; ++x) {
                row[x] = classify_pixel(config, config.pixel_center(x, static_cast<int>(y)));
            }
        }
    });
    return image;
}

} // namespace edyn
