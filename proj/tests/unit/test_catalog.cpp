#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edyn/catalog.hpp"
#include "edyn/error.hpp"
#include "test_support.hpp"

using namespace edyn;
using std::numbers::e;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

std::vector<EntireMap> all_maps() {
    return {EntireMap::f1(),          EntireMap::f2(),
            EntireMap::f3(),          EntireMap::scaled(1, {1.0002, 0.0017}),
            EntireMap::scaled(2, {0.9, 0.1}), EntireMap::lambda_exp(0.25),
            EntireMap::lambda_exp({1.0, 0.5}), EntireMap::model_f1(),
            EntireMap::model_f2()};
}

// independent formulas for the catalog
cplx reference(const EntireMap& m, cplx z) {
    switch (m.kind()) {
    case MapKind::F1Fatou: return z + 1.0 + std::exp(-z);
    case MapKind::F2Newton: return z - 1.0 + std::exp(-z);
    case MapKind::F3Herman: return z - 1.0 + kTwoPiI + std::exp(-z);
    case MapKind::ScaledF: {
        const cplx shift = m.base_index() == 1 ? cplx{1.0} : m.base_index() == 2 ? cplx{-1.0} : cplx{-1.0} + kTwoPiI;
        return m.lambda() * (z + shift + std::exp(-z));
    }
    case MapKind::LambdaExp: return m.lambda() * std::exp(z);
    case MapKind::ModelF1: return z * std::exp(z - 1.0);
    case MapKind::ModelF2: return z * std::exp(z + 1.0);
    }
    return {};
}

} // namespace

TEST_SUITE("catalog") {

TEST_CASE("fixed points and multipliers") {
    const auto f1 = EntireMap::f1();
    const auto v = f1.evaluate(I * pi);
    REQUIRE(v.finite());
    CHECK(std::abs(v.value - I * pi) < 1e-14);
    CHECK(std::abs(f1.derivative(I * pi).value - 2.0) < 1e-14);

    const auto f2 = EntireMap::f2();
    for (int n = -5; n <= 5; ++n) {
        const cplx zn = lattice_point(n);
        CHECK(std::abs(f2.evaluate(zn).value - zn) <= 1e-10);
        CHECK(std::abs(f2.derivative(zn).value) <= 1e-10);
    }
    CHECK(std::abs(EntireMap::model_f2().derivative(0.0).value - e) < 1e-14);
}

TEST_CASE("derivative matches a central difference") {
    const auto f1 = EntireMap::f1();
    const double h = 1e-6;
    const cplx fd = (f1.evaluate(I * pi + h).value - f1.evaluate(I * pi - h).value) / (2.0 * h);
    CHECK(std::abs(fd - 2.0) < 1e-8);

    for (const auto& m : all_maps()) {
        CAPTURE(m.id());
        int checked = 0;
        for (const cplx z : test::uniform_disc(1000, 20.0, 7)) {
            const auto d = m.derivative(z);
            const auto a = m.evaluate(z + h);
            const auto b = m.evaluate(z - h);
            if (!d.finite() || !a.finite() || !b.finite()) {
                continue;
            }
            const cplx central = (a.value - b.value) / (2.0 * h);
            CHECK(std::abs(d.value - central) / std::max(1.0, std::abs(d.value)) < 1e-6);
            ++checked;
        }
        CHECK(checked > 900);
    }
}

TEST_CASE("evaluation agrees with direct formulas") {
    for (const auto& m : all_maps()) {
        CAPTURE(m.id());
        for (const cplx z : test::uniform_disc(500, 100.0, 11)) {
            const auto v = m.evaluate(z);
            if (!v.finite()) {
                continue;
            }
            const cplx ref = reference(m, z);
            if (std::isfinite(std::abs(ref))) {
                CHECK(std::abs(v.value - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("extended kernels agree with double evaluation") {
    for (const auto& m : all_maps()) {
        for (const cplx z : test::uniform_disc(200, 10.0, 3)) {
            const auto v = m.evaluate(z);
            const auto x = m.evaluate_extended(std::complex<long double>(z));
            CHECK(std::abs(v.value - cplx(x)) <= 1e-12 * std::max(1.0, std::abs(v.value)));
            const auto d = m.derivative(z);
            const auto dx = m.derivative_extended(std::complex<long double>(z));
            CHECK(std::abs(d.value - cplx(dx)) <= 1e-12 * std::max(1.0, std::abs(d.value)));
        }
    }
}

TEST_CASE("overflow is a status") {
    const auto f1 = EntireMap::f1();
    const auto v = f1.evaluate(-800.0);
    CHECK(v.status == EvalStatus::ExpOverflow);
    CHECK_FALSE(f1.derivative(-800.0).finite());
    CHECK(f1.evaluate(-699.0).finite());
    CHECK_FALSE(f1.evaluate({-701.0, 3.0}).finite());
    CHECK(EntireMap::lambda_exp(1.0).evaluate(800.0).status == EvalStatus::ExpOverflow);
    CHECK(EntireMap::lambda_exp(1.0).evaluate(800.0).direction == OverflowDirection::PositiveRealDominant);
    CHECK(EntireMap::lambda_exp(1.0).evaluate(-800.0).finite());
    // threshold is on the real exponent
    for (const auto& m : all_maps()) {
        for (const double x : {-750.0, -650.0, 650.0, 750.0}) {
            const cplx z{x, 1.0};
            CHECK(m.evaluate(z).finite() == (m.exponent(z) <= kExpOverflowThreshold));
        }
    }
}

TEST_CASE("semiconjugacy residual") {
    CHECK(semiconjugacy_residual(EntireMap::f1(), EntireMap::model_f1(), {0.3, 0.7}) < 1e-10);
    CHECK(semiconjugacy_residual(EntireMap::f2(), EntireMap::model_f2(), I * pi) < 1e-10);
    CHECK(semiconjugacy_residual(EntireMap::f3(), EntireMap::model_f2(), {0.2, -1.1}) < 1e-10);
    try {
        (void)semiconjugacy_residual(EntireMap::f1(), EntireMap::model_f1(), -800.0);
        FAIL("expected OverflowInChain");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::OverflowInChain);
    }
    CHECK_THROWS_AS((void)semiconjugacy_residual(EntireMap::f1(), EntireMap::model_f2(), 0.0), Error);
}

TEST_CASE("singular data") {
    const auto m1 = EntireMap::model_f1().singular_values();
    CHECK(m1.bounded_singular_set);
    REQUIRE(m1.known_singular_values.size() == 2);
    CHECK(std::abs(m1.known_singular_values[1] + std::exp(-2.0)) < 1e-15);
    CHECK(EntireMap::model_f1().is_asymptotic_value(0.0));
    CHECK(EntireMap::model_f1().is_critical_value(-std::exp(-2.0)));

    const auto f2 = EntireMap::f2().singular_values();
    CHECK_FALSE(f2.bounded_singular_set);
    REQUIRE(f2.critical_family.has_value());
    for (long long n = -3; n <= 3; ++n) {
        const cplx zn = f2.critical_family->point(n);
        CHECK(std::abs(zn - lattice_point(n)) < 1e-15);
        CHECK(std::abs(EntireMap::f2().evaluate(zn).value - zn) < 1e-12);
    }

    const auto le = EntireMap::lambda_exp(0.25).singular_values();
    CHECK(le.bounded_singular_set);
    REQUIRE(le.known_singular_values.size() == 1);
    CHECK(le.known_singular_values[0] == cplx{});

    for (const auto& m : all_maps()) {
        const bool bounded = m.kind() == MapKind::LambdaExp || m.kind() == MapKind::ModelF1 ||
                             m.kind() == MapKind::ModelF2;
        CHECK(m.singular_values().bounded_singular_set == bounded);
    }
    CHECK(EntireMap::f1().is_critical_value({2.0, kTwoPi * 7}));
}

TEST_CASE("sup modulus on discs is sound") {
    CHECK(EntireMap::model_f1().sup_modulus_on_disc(0.0, 0.5) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-9));
    CHECK(EntireMap::lambda_exp(0.25).sup_modulus_on_disc(0.0, 1.0) == doctest::Approx(0.25 * e).epsilon(1e-9));
    for (const auto& m : all_maps()) {
        for (const auto& [c, r] : std::vector<std::pair<cplx, double>>{{0.0, 0.5}, {{1.0, 2.0}, 3.0}, {{-2.0, 0.0}, 1.5}}) {
            const double bound = m.sup_modulus_on_disc(c, r);
            double observed = 0.0;
            for (int k = 0; k < 10000; ++k) {
                const auto v = m.evaluate(c + std::polar(r, kTwoPi * k / 10000.0));
                observed = std::max(observed, std::abs(v.value));
            }
            CAPTURE(m.id());
            CHECK(bound >= observed);
        }
    }
}

TEST_CASE("translation symmetry of f2") {
    const auto f2 = EntireMap::f2();
    const auto f3 = EntireMap::f3();
    for (const cplx z : test::uniform_box(1000, 20.0, 5)) {
        const auto a = f2.evaluate(z + kTwoPiI);
        const auto b = f2.evaluate(z);
        CHECK(std::abs(a.value - (b.value + kTwoPiI)) <= 1e-12 * std::max(1.0, std::abs(b.value)));
        CHECK(std::abs(f3.evaluate(z).value - (b.value + kTwoPiI)) <= 1e-12 * std::max(1.0, std::abs(b.value)));
    }
}

TEST_CASE("scaled maps compose exactly") {
    const cplx lambda{1.0002, 0.0017};
    const auto s = EntireMap::scaled(1, lambda);
    const auto f1 = EntireMap::f1();
    for (const cplx z : test::uniform_disc(200, 20.0, 9)) {
        CHECK(s.evaluate(z).value == lambda * f1.evaluate(z).value);
    }
}

TEST_CASE("map identifiers") {
    for (const auto& m : all_maps()) {
        CHECK(EntireMap::parse(m.id()).id() == m.id());
    }
    CHECK(EntireMap::parse("lambda-exp:0.25,0").kind() == MapKind::LambdaExp);
    CHECK(EntireMap::parse("scaled-f1:1,0").kind() == MapKind::ScaledF);
    for (const char* bad : {"bogus", "", "f4", "lambda-exp", "lambda-exp:1", "scaled-f9:1,0", "model-f1"}) {
        CAPTURE(bad);
        try {
            (void)EntireMap::parse(bad);
            FAIL("accepted");
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::UsageError);
        }
    }
}

TEST_CASE("drift metadata") {
    CHECK(EntireMap::f3().drift() == kTwoPiI);
    CHECK(EntireMap::f2().drift() == cplx{});
}

}
