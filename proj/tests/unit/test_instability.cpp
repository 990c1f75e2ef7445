#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "edyn/error.hpp"
#include "edyn/instability.hpp"
#include "edyn/winding.hpp"

using namespace edyn;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

ErrorCode code_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& err) {
        return err.code();
    }
    FAIL("no error raised");
    return ErrorCode::UsageError;
}

std::vector<cplx> segment(cplx a, cplx b, int steps) {
    std::vector<cplx> out;
    for (int k = 0; k <= steps; ++k) {
        out.push_back(a + (b - a) * (static_cast<double>(k) / steps));
    }
    return out;
}

ComplexFn poly(std::vector<cplx> roots) {
    return [roots](cplx z) -> std::optional<cplx> {
        cplx v{1.0, 0.0};
        for (const cplx r : roots) {
            v *= z - r;
        }
        return v;
    };
}

} // namespace

TEST_SUITE("param-instability") {

TEST_CASE("winding numbers") {
    CHECK(winding_number(poly({1.0}), 1.0, 0.01).winding_number == 1);
    CHECK(winding_number(poly({1.0, 1.0}), 1.0, 0.01).winding_number == 2);
    CHECK(winding_number(poly({2.0}), 1.0, 0.01).winding_number == 0);
    const auto r = winding_number(poly({{1.001, 0.002}, {0.998, -0.001}}), 1.0, 0.01);
    CHECK(std::abs(r.zero_sum - cplx{1.999, 0.001}) < 1e-4);
    CHECK(code_of([] { (void)winding_number(poly({1.01}), 1.0, 0.01); }) == ErrorCode::ZeroOnContour);
    const ComplexFn overflowing = [](cplx z) -> std::optional<cplx> {
        if (z.real() > 1.005) {
            return std::nullopt;
        }
        return z - 1.0;
    };
    CHECK(code_of([&] { (void)winding_number(overflowing, 1.0, 0.01); }) == ErrorCode::OverflowInChain);
}

TEST_CASE("winding numbers add over products") {
    const std::vector<cplx> g_roots{{0.3, 0.1}, {-0.2, 0.4}};
    const std::vector<cplx> h_roots{{0.1, -0.5}, {2.0, 0.0}, {-0.6, -0.1}};
    std::vector<cplx> both = g_roots;
    both.insert(both.end(), h_roots.begin(), h_roots.end());
    for (const double radius : {0.35, 0.55, 0.8, 3.0}) {
        const int g = winding_number(poly(g_roots), 0.0, radius).winding_number;
        const int h = winding_number(poly(h_roots), 0.0, radius).winding_number;
        CHECK(winding_number(poly(both), 0.0, radius).winding_number == g + h);
    }
}

TEST_CASE("argument principle counts Newton roots") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cplx> roots;
        const int degree = 2 + trial % 5;
        for (int k = 0; k < degree; ++k) {
            const double re = u(rng);
            roots.emplace_back(re, u(rng));
        }
        const auto g = poly(roots);
        const cplx center{0.1 * u(rng), 0.1 * u(rng)};
        const double radius = 0.6;
        bool near_contour = false;
        for (const cplx r : roots) {
            near_contour = near_contour || std::abs(std::abs(r - center) - radius) < 1e-3;
        }
        if (near_contour) {
            continue;
        }
        const int count = winding_number(g, center, radius).winding_number;
        // Newton from a grid of seeds inside the contour
        std::vector<cplx> found;
        for (int a = -4; a <= 4; ++a) {
            for (int b = -4; b <= 4; ++b) {
                cplx z = center + cplx{static_cast<double>(a), static_cast<double>(b)} * (radius / 5.0);
                for (int it = 0; it < 100; ++it) {
                    cplx d{0.0, 0.0};
                    for (std::size_t k = 0; k < roots.size(); ++k) {
                        d += 1.0 / (z - roots[k]);
                    }
                    z -= 1.0 / d;
                }
                if (std::abs(z - center) < radius && std::abs(*g(z)) < 1e-12 &&
                    std::none_of(found.begin(), found.end(), [&](cplx f) { return std::abs(f - z) < 1e-8; })) {
                    found.push_back(z);
                }
            }
        }
        CHECK(count >= static_cast<int>(found.size()));
    }
}

TEST_CASE("fixed point continuation") {
    const auto at1 = continue_fixed_point(1, I * pi, {1.0});
    REQUIRE(at1.samples.size() == 1);
    CHECK(std::abs(at1.samples[0].phi - I * pi) < 1e-14);

    const auto path = continue_fixed_point(1, I * pi, segment(1.0, {1.0001, 0.0}, 10));
    const auto& last = path.samples.back();
    const cplx residual = last.lambda * (last.phi + 1.0 + std::exp(-last.phi)) - last.phi;
    CHECK(std::abs(residual) < 1e-11);
    CHECK(std::abs(last.multiplier - 2.0) < 1e-3);

    // halving the step leaves the path unchanged
    const cplx target{1.0003, 0.002};
    const auto coarse = continue_fixed_point(1, I * pi, segment(1.0, target, 8));
    const auto fine = continue_fixed_point(1, I * pi, segment(1.0, target, 16));
    for (std::size_t k = 0; k < coarse.samples.size(); ++k) {
        CHECK(std::abs(coarse.samples[k].phi - fine.samples[2 * k].phi) < 1e-9);
    }
    CHECK(std::abs(instability_fixed_point(target) - coarse.samples.back().phi) < 1e-9);

    CHECK(code_of([] { (void)continue_fixed_point(1, I * pi, {1.0, {40.0, 40.0}}); }) ==
          ErrorCode::ContinuationBreakdown);
    CHECK(code_of([] { (void)continue_fixed_point(1, I * pi, {{1.1, 0.0}}); }) == ErrorCode::PreconditionViolation);
    CHECK(code_of([] { (void)continue_fixed_point(1, 0.5, {1.0}); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("instability parameter") {
    InstabilityConfig config;
    config.workers = 2;
    const auto r = find_instability_parameter(1, 1000, 0.01, config);
    CHECK(std::abs(r.lambda0 - cplx{1.00025, 0.00171}) < 5e-6);
    CHECK(r.residual < 1e-8);
    CHECK(r.winding >= 1);
    CHECK(r.fixed_point_class == FixedPointClass::Repelling);

    // the critical point z_1000 lands on the repelling fixed point after two steps
    using ld = long double;
    const std::complex<ld> lam(r.lambda0);
    const std::complex<ld> zn(0.0L, 2.0L * std::numbers::pi_v<ld> * 1000.0L);
    auto f = [&](std::complex<ld> z) { return lam * (z + 1.0L + std::exp(-z)); };
    const std::complex<ld> image = f(f(zn));
    const cplx phi = instability_fixed_point(r.lambda0);
    CHECK(std::abs(cplx(image) - phi) < 1e-7);
    CHECK(std::abs(r.lambda0 * (1.0 - std::exp(-phi))) > 1.0);

    const auto j = nlohmann::json::parse(r.to_json());
    for (const char* key : {"p", "n", "delta", "lambda0_re", "lambda0_im", "residual", "winding"}) {
        CHECK(j.contains(key));
    }
    const auto again = find_instability_parameter(1, 1000, 0.01, InstabilityConfig{});
    CHECK(again.to_json() == r.to_json());
}

TEST_CASE("instability failures") {
    CHECK(code_of([] { (void)find_instability_parameter(1, 1000, 1e-6); }) == ErrorCode::NoRootInDisc);
    CHECK(code_of([] { (void)find_instability_parameter(2, 1000, 0.01); }) == ErrorCode::PreconditionViolation);
    CHECK(code_of([] { (void)find_instability_parameter(1, 1000, 0.5); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("zeros of f1") {
    const auto low = zeros_of_f1(kTwoPi, 2.0 * kTwoPi);
    REQUIRE_FALSE(low.roots.empty());
    const auto f1 = EntireMap::f1();
    for (const cplx x : low.roots) {
        CHECK(std::abs(f1.evaluate(x).value) < 1e-10);
        CHECK(x.imag() > kTwoPi);
        CHECK(x.imag() < 2.0 * kTwoPi);
    }
    const auto high = zeros_of_f1(995.0, 1005.0);
    REQUIRE_FALSE(high.roots.empty());
    for (const cplx x : high.roots) {
        CHECK(std::abs(x.real() + std::log(x.imag())) / std::log(x.imag()) < 0.1);
    }
    CHECK(code_of([] { (void)zeros_of_f1(0.0, 1.0); }) == ErrorCode::PreconditionViolation);
}

}
