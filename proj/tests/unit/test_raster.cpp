#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "edyn/dynamics.hpp"
#include "edyn/error.hpp"
#include "edyn/image_io.hpp"
#include "edyn/instability.hpp"
#include "edyn/raster.hpp"

using namespace edyn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "edyn_raster_tests";
    fs::create_directories(dir);
    return dir / name;
}

RasterConfig small(const EntireMap& map, Classifier c) {
    RasterConfig config;
    config.map = map;
    config.classifier = c;
    config.width = 120;
    config.height = 160;
    return config;
}

double mask_agreement(const Image& a, const Image& b) {
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        same += (a.pixels[i] == 0) == (b.pixels[i] == 0) ? 1 : 0;
    }
    return static_cast<double>(same) / static_cast<double>(a.pixels.size());
}

} // namespace

TEST_SUITE("raster-render") {

TEST_CASE("basin classes") {
    CHECK(basin_class(0) == 1);
    CHECK(basin_class(1) == 3);
    CHECK(basin_class(-1) == 2);
    CHECK(basin_class(-4) == 8);
}

TEST_CASE("pixel classification") {
    const auto f2 = small(EntireMap::f2(), Classifier::FixedPointBasins);
    CHECK(classify_pixel(f2, lattice_point(1)) == basin_class(1));
    const auto f1 = small(EntireMap::f1(), Classifier::EscapeRight);
    CHECK(classify_pixel(f1, 5.0) == 1);
    const auto f3 = small(EntireMap::f3(), Classifier::DriftCompensatedBasins);
    CHECK(classify_pixel(f3, 0.05) == basin_class(0));
    CHECK(classify_pixel(f2, -800.0) == 0);
}

TEST_CASE("basin pixels satisfy the tolerance") {
    for (const auto& [map, cls] : std::vector<std::pair<EntireMap, Classifier>>{
             {EntireMap::f2(), Classifier::FixedPointBasins}, {EntireMap::f3(), Classifier::DriftCompensatedBasins}}) {
        const auto config = small(map, cls);
        const auto image = render_raster(config);
        EscapePolicy policy;
        policy.tolerance = config.tolerance;
        policy.escape_re = config.escape_re;
        policy.drift_compensated = cls == Classifier::DriftCompensatedBasins;
        for (int y = 0; y < config.height; y += 7) {
            for (int x = 0; x < config.width; x += 7) {
                if (image.at(x, y) == 0) {
                    continue;
                }
                const auto orbit = iterate(map, config.pixel_center(x, y), config.budget, policy);
                REQUIRE(orbit.status == OrbitStatus::ConvergedToPoint);
                CHECK(orbit.residual < config.tolerance);
            }
        }
    }
}

TEST_CASE("f2 and f3 share their Julia set") {
    const auto a = render_raster(small(EntireMap::f2(), Classifier::FixedPointBasins));
    const auto b = render_raster(small(EntireMap::f3(), Classifier::DriftCompensatedBasins));
    CHECK(mask_agreement(a, b) >= 0.99);
}

TEST_CASE("translation by 2 pi i keeps the mask") {
    auto config = small(EntireMap::f2(), Classifier::FixedPointBasins);
    const auto a = render_raster(config);
    config.viewport.im_min += kTwoPi;
    config.viewport.im_max += kTwoPi;
    const auto b = render_raster(config);
    CHECK(mask_agreement(a, b) >= 0.99);
}

TEST_CASE("rendering is deterministic across workers") {
    auto config = small(EntireMap::f3(), Classifier::DriftCompensatedBasins);
    config.workers = 1;
    const auto a = render_raster(config);
    config.workers = 8;
    const auto b = render_raster(config);
    CHECK(a.pixels == b.pixels);
    write_image(a, scratch("w1.png").string(), ImageFormat::PNG);
    write_image(b, scratch("w8.png").string(), ImageFormat::PNG);
    CHECK(slurp(scratch("w1.png")) == slurp(scratch("w8.png")));
}

TEST_CASE("the instability parameter changes the picture") {
    const auto lambda0 = find_instability_parameter(1, 1000, 0.01).lambda0;
    RasterConfig config;
    config.classifier = Classifier::EscapeRight;
    config.width = 200;
    config.height = 200;
    config.viewport = {-8.0, 4.0, kTwoPi * 1000 - 6.0, kTwoPi * 1000 + 6.0};
    config.map = EntireMap::f1();
    const auto before = render_raster(config);
    config.map = EntireMap::scaled(1, lambda0);
    const auto after = render_raster(config);
    const auto zeros = [](const Image& im) { return std::count(im.pixels.begin(), im.pixels.end(), 0u); };
    const double diff = std::abs(static_cast<double>(zeros(before) - zeros(after)));
    CHECK(diff > 0.001 * static_cast<double>(before.pixels.size()));
}

TEST_CASE("config validation") {
    RasterConfig config;
    config.width = 0;
    CHECK_THROWS_AS(config.validate(), Error);
    config.width = 10;
    config.viewport.re_max = config.viewport.re_min;
    CHECK_THROWS_AS(config.validate(), Error);
    CHECK(parse_classifier("escape-right") == Classifier::EscapeRight);
    CHECK(classifier_name(Classifier::DriftCompensatedBasins) == "drift-compensated-basins");
    try {
        (void)parse_classifier("nope");
        FAIL("accepted");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::UsageError);
    }
}

TEST_CASE("pixel centers") {
    RasterConfig config;
    config.width = 4;
    config.height = 2;
    config.viewport = {0.0, 4.0, 0.0, 2.0};
    CHECK(config.pixel_center(0, 0) == cplx{0.5, 1.5});
    CHECK(config.pixel_center(3, 1) == cplx{3.5, 0.5});
}

TEST_CASE("image files") {
    Image one{1, 1, {0}};
    write_image(one, scratch("one.pgm").string(), ImageFormat::PGM);
    CHECK(slurp(scratch("one.pgm")) == std::string("P5\n1 1\n255\n") + std::string(1, '\0'));
    CHECK(palette_index(0) == 0);
    for (std::uint32_t k = 1; k < 500; ++k) {
        CHECK(palette_index(k) >= 64);
    }
    Image im{3, 2, {0, 1, 2, 3, 4, 5}};
    write_image(im, scratch("six.pgm").string(), ImageFormat::PGM);
    const auto bytes = slurp(scratch("six.pgm"));
    CHECK(bytes.size() == std::string("P5\n3 2\n255\n").size() + 6);
    CHECK(static_cast<unsigned char>(bytes.back()) == palette_index(5));
    write_image(im, scratch("six.png").string(), ImageFormat::PNG);
    CHECK(slurp(scratch("six.png")).substr(1, 3) == "PNG");
    try {
        write_image(im, "/nonexistent-dir/x.pgm", ImageFormat::PGM);
        FAIL("wrote to an unwritable path");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::IOError);
    }
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.json", "{}"), Error);
}

TEST_CASE("sidecar metadata") {
    RasterConfig config;
    const auto j = nlohmann::json::parse(sidecar_json(config));
    CHECK(j["map"] == "f2");
    CHECK(j["viewport"].size() == 4);
    CHECK(j["size"][0] == 800);
    CHECK(j["budget"] == 500);
    CHECK(j["classifier"] == "fixed-point-basins");
}

}
