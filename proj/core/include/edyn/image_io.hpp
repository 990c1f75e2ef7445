#pragma once

#include <cstdint>
#include <string>

#include "edyn/raster.hpp"

namespace edyn {

enum class ImageFormat { PGM, PNG };

/// Palette index of a class: 0 (black) for class 0, a gray level in [64, 255] otherwise.
std::uint8_t palette_index(std::uint32_t cls);

/// Binary P5 grayscale or 8-bit palette PNG. Throws IOError.
void write_image(const Image& image, const std::string& path, ImageFormat format);

/// {map, viewport, size, budget, classifier, tolerance, escapeRe}
std::string sidecar_json(const RasterConfig& config);

/// Writes `contents` to `path`, throwing IOError on failure.
void write_text_file(const std::string& path, const std::string& contents);

} // namespace edyn
