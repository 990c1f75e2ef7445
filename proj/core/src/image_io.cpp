#include "edyn/image_io.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include <json.hpp>
#include <png.h>

#include "edyn/error.hpp"

namespace edyn {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

std::vector<std::uint8_t> indexed(const Image& image) {
    std::vector<std::uint8_t> out(image.pixels.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = palette_index(image.pixels[i]);
    }
    return out;
}

void write_pgm(const Image& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::IOError, "cannot open " + path);
    }
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    const auto bytes = indexed(image);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        fail(ErrorCode::IOError, "cannot write " + path);
    }
}

void write_png(const Image& image, const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "wb"));
    if (!file) {
        fail(ErrorCode::IOError, "cannot open " + path);
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, nullptr);
        fail(ErrorCode::IOError, "libpng initialisation failed");
    }
    const auto bytes = indexed(image);
    std::vector<png_color> palette(256);
    for (int i = 0; i < 256; ++i) {
        palette[i] = {static_cast<png_byte>(i), static_cast<png_byte>(i), static_cast<png_byte>(i)};
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(ErrorCode::IOError, "cannot write " + path);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
                 PNG_COLOR_TYPE_PALETTE, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_PLTE(png, info, palette.data(), 256);
    png_write_info(png, info);
    for (int y = 0; y < image.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * image.width));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

std::uint8_t palette_index(std::uint32_t cls) {
    if (cls == 0) {
        return 0;
    }
    return static_cast<std::uint8_t>(64 + (cls * 37U) % 192U);
}

void write_image(const Image& image, const std::string& path, ImageFormat format) {
    require(image.width >= 1 && image.height >= 1 &&
                image.pixels.size() == static_cast<std::size_t>(image.width) * image.height,
            ErrorCode::PreconditionViolation, "malformed image");
    if (format == ImageFormat::PGM) {
        write_pgm(image, path);
    } else {
        write_png(image, path);
    }
}

std::string sidecar_json(const RasterConfig& config) {
    nlohmann::ordered_json j;
    j["map"] = config.map.id();
    j["viewport"] = {config.viewport.re_min, config.viewport.re_max, config.viewport.im_min, config.viewport.im_max};
    j["size"] = {config.width, config.height};
    j["budget"] = config.budget;
    j["classifier"] = classifier_name(config.classifier);
    j["tolerance"] = config.tolerance;
    j["escapeRe"] = config.escape_re;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::IOError, "cannot open " + path);
    }
    out << contents;
    if (!out) {
        fail(ErrorCode::IOError, "cannot write " + path);
    }
}

} // namespace edyn
