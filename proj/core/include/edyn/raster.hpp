#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edyn/catalog.hpp"

namespace edyn {

enum class Classifier { EscapeRight, FixedPointBasins, DriftCompensatedBasins };

std::string classifier_name(Classifier c);
/// Parses "escape-right", "fixed-point-basins", "drift-compensated-basins".
Classifier parse_classifier(const std::string& name);

struct Viewport {
    double re_min = -3.0;
    double re_max = 9.0;
    double im_min = -13.0;
    double im_max = 13.0;
};

struct RasterConfig {
    EntireMap map = EntireMap::f2();
    Viewport viewport;
    int width = 800;
    int height = 800;
    int budget = 500;
    Classifier classifier = Classifier::FixedPointBasins;
    double tolerance = 1e-6;
    double escape_re = 50.0;
    /// 0 selects the hardware concurrency; never affects the output.
    unsigned workers = 0;

    /// Throws PreconditionViolation for empty or oversized rasters.
    void validate() const;
    /// Center of pixel (x, y); row 0 is the top edge (largest imaginary part).
    [[nodiscard]] cplx pixel_center(int x, int y) const;
};

/// Row-major class indices: 0 is unresolved (Julia-set approximation), k > 0 a Fatou class.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> pixels;

    [[nodiscard]] std::uint32_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Class of the basin of 2 pi i n: 2n + 1 for n >= 0 and -2n for n < 0.
std::uint32_t basin_class(long long n);

std::uint32_t classify_pixel(const RasterConfig& config, cplx z);

Image render_raster(const RasterConfig& config);

} // namespace edyn
