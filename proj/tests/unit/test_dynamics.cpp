#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "edyn/dynamics.hpp"
#include "edyn/error.hpp"
#include "test_support.hpp"

using namespace edyn;
using std::numbers::e;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

SamplerConfig quick() {
    SamplerConfig s;
    s.workers = 2;
    return s;
}

} // namespace

TEST_SUITE("dynamics-classify") {

TEST_CASE("orbits") {
    const auto f1 = iterate(EntireMap::f1(), 1.0, 200);
    CHECK(f1.status == OrbitStatus::EscapedRight);

    const auto f2 = iterate(EntireMap::f2(), kTwoPiI + 0.1, 200);
    REQUIRE(f2.status == OrbitStatus::ConvergedToPoint);
    CHECK(std::abs(*f2.limit - kTwoPiI) < 1e-9);
    // direct iteration oracle
    cplx z = kTwoPiI + 0.1;
    for (int k = 0; k < 40; ++k) {
        z = z - 1.0 + std::exp(-z);
    }
    CHECK(std::abs(*f2.limit - z) < 1e-9);

    EscapePolicy drift;
    drift.drift_compensated = true;
    const auto f3 = iterate(EntireMap::f3(), 0.1, 200, drift);
    REQUIRE(f3.status == OrbitStatus::ConvergedToPoint);
    CHECK(std::abs(*f3.limit) < 1e-9);
    CHECK(f3.drift_compensated);

    const auto plain = iterate(EntireMap::f3(), 0.1, 200);
    CHECK(plain.status != OrbitStatus::ConvergedToPoint);

    const auto over = iterate(EntireMap::f1(), -800.0, 10);
    CHECK(over.status == OrbitStatus::ExpOverflow);
    CHECK(iterate(EntireMap::f1(), {0.0, 0.5}, 1).status == OrbitStatus::BudgetExhausted);
    CHECK_THROWS_AS(iterate(EntireMap::f1(), 0.0, 0), Error);
}

TEST_CASE("drift identity") {
    const auto f2 = EntireMap::f2();
    const auto f3 = EntireMap::f3();
    for (const cplx z0 : test::uniform_box(100, 3.0, 31)) {
        cplx a = z0;
        cplx b = z0;
        for (int n = 1; n <= 20; ++n) {
            const auto fa = f3.evaluate(a);
            const auto fb = f2.evaluate(b);
            if (!fa.finite() || !fb.finite()) {
                break;
            }
            a = fa.value;
            b = fb.value;
            CHECK(std::abs(a - kTwoPiI * static_cast<double>(n) - b) <= 1e-9 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("multiplier classification") {
    CHECK(classify_multiplier(0.0) == FixedPointClass::Superattracting);
    CHECK(classify_multiplier(0.5) == FixedPointClass::Attracting);
    CHECK(classify_multiplier(2.0) == FixedPointClass::Repelling);
    CHECK(classify_multiplier(std::polar(1.0, 0.3)) == FixedPointClass::Indifferent);
    CHECK(fixed_point_class_name(FixedPointClass::Repelling) == "Repelling");
}

TEST_CASE("fixed points") {
    const auto f1 = find_fixed_points(EntireMap::f1(), {I * pi + 0.01, I * pi - cplx{0.0, 0.02}});
    REQUIRE(f1.records.size() == 1);
    CHECK(std::abs(f1.records[0].location - I * pi) < 1e-12);
    CHECK(std::abs(f1.records[0].multiplier - 2.0) < 1e-10);
    CHECK(f1.records[0].fixed_class == FixedPointClass::Repelling);

    std::vector<cplx> seeds;
    for (int n = -5; n <= 5; ++n) {
        seeds.push_back(lattice_point(n) + cplx{0.05, -0.03});
    }
    const auto f2 = find_fixed_points(EntireMap::f2(), seeds);
    REQUIRE(f2.records.size() == 11);
    for (const auto& r : f2.records) {
        CHECK(r.fixed_class == FixedPointClass::Superattracting);
        CHECK(std::abs(r.location - lattice_point(lattice_index(r.location))) < 1e-10);
    }

    const auto m2 = find_fixed_points(EntireMap::model_f2(), {0.1, -0.9});
    REQUIRE(m2.records.size() == 2);
    CHECK(std::abs(m2.records[0].location) < 1e-12);
    CHECK(std::abs(m2.records[0].multiplier - e) < 1e-10);
    CHECK(m2.records[0].fixed_class == FixedPointClass::Repelling);
    CHECK(std::abs(m2.records[1].location + 1.0) < 1e-10);
    CHECK(m2.records[1].fixed_class == FixedPointClass::Superattracting);
}

TEST_CASE("classification is stable under seed perturbation") {
    const auto base = refine_fixed_point(EntireMap::f1(), I * pi);
    REQUIRE(base.has_value());
    for (const cplx d : test::uniform_disc(50, 1e-3, 12)) {
        const auto r = refine_fixed_point(EntireMap::f1(), base->location + d);
        REQUIRE(r.has_value());
        CHECK(std::abs(r->location - base->location) < 1e-8);
        CHECK(r->fixed_class == base->fixed_class);
    }
}

TEST_CASE("postsingular orbits") {
    const auto m1 = postsingular_orbit(EntireMap::model_f1(), 50);
    CHECK(m1.status == PostsingularStatus::Bounded);
    for (const cplx z : m1.points) {
        CHECK(std::abs(z) < 0.14);
    }
    CHECK(postsingular_orbit(EntireMap::f1(), 5).status == PostsingularStatus::FailedUnboundedS);
    const auto le = postsingular_orbit(EntireMap::lambda_exp(0.25), 50);
    // oracle: fixed point iteration for 0.25 e^x = x
    double x = 0.0;
    for (int k = 0; k < 400; ++k) {
        x = 0.25 * std::exp(x);
    }
    CHECK(x == doctest::Approx(0.3574).epsilon(1e-3));
    CHECK(std::abs(le.points.back() - x) < 1e-6);
}

TEST_CASE("hyperbolicity certificates") {
    const auto m1 = certify_hyperbolic(EntireMap::model_f1(), {0.5});
    CHECK(m1.status == CertificateStatus::Certified);
    CHECK(m1.sup_bound == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-9));
    CHECK(m1.sup_bound < 0.5);
    const auto le = certify_hyperbolic(EntireMap::lambda_exp(0.25), {1.0});
    CHECK(le.status == CertificateStatus::Certified);
    CHECK(le.sup_bound == doctest::Approx(0.25 * e).epsilon(1e-9));
    CHECK(certify_hyperbolic(EntireMap::f1(), {0.5, 1.0, 10.0}).status == CertificateStatus::FailedUnboundedS);
    CHECK(certify_hyperbolic(EntireMap::model_f2(), {0.5, 1.0, 2.0}).status ==
          CertificateStatus::FailedNoAbsorbingSet);

    const std::vector<std::pair<EntireMap, HyperbolicityCertificate>> certified{{EntireMap::model_f1(), m1},
                                                                             {EntireMap::lambda_exp(0.25), le}};
    for (const auto& [map, cert] : certified) {
        double observed = 0.0;
        for (int k = 0; k < 10000; ++k) {
            observed = std::max(observed, std::abs(map.evaluate(std::polar(cert.radius, kTwoPi * k / 1e4)).value));
        }
        CHECK(observed <= cert.sup_bound + 1e-9);
    }

    const auto j = nlohmann::json::parse(m1.to_json());
    CHECK(j["status"] == "Certified");
    CHECK(j["radius"] == 0.5);
    CHECK(j["singularValues"].size() == 2);
    CHECK(j.contains("supBound"));
}

TEST_CASE("Baker domain") {
    const auto f1 = EntireMap::f1();
    const auto one = baker_domain_check(f1, std::vector<cplx>{1.0, {0.01, 100.0}, -1.0}, 100);
    CHECK(one.samples[0].re_increase >= 1.0 - 1.0 / e - 1e-12);
    CHECK(one.samples[1].escaped);
    CHECK(one.samples[1].steps <= 100);
    CHECK_FALSE(one.samples[2].in_domain);
    CHECK(one.out_of_domain == 1);
    CHECK(one.bound_holds);

    const auto many = baker_domain_check(f1, 5000);
    CHECK(many.samples.size() == 10000);
    CHECK(many.bound_holds);
    for (const auto& s : many.samples) {
        CHECK(s.re_increase > 0.0);
    }
    CHECK_THROWS_AS(baker_domain_check(EntireMap::f2(), 3), Error);
}

TEST_CASE("wandering orbit") {
    const auto f3 = EntireMap::f3();
    for (const auto& [n0, count] : std::vector<std::pair<long long, long long>>{{0, 5}, {-3, 6}}) {
        const auto r = wandering_orbit_check(f3, n0, count);
        CHECK(r.all_hold);
        CHECK(r.rows.size() == static_cast<std::size_t>(count + 1));
        for (const auto& row : r.rows) {
            CHECK(row.shift_error <= 1e-12);
            CHECK(row.fixed_error <= 1e-12);
            CHECK(row.basin_return);
        }
    }
    CHECK_THROWS_AS(wandering_orbit_check(EntireMap::f2(), 0, 1), Error);
}

TEST_CASE("expansion reports") {
    const Region w1 = Region::complement_of_discs({{0.0, 0.5}});
    const auto m1 = expansion_report(EntireMap::model_f1(), w1, ConformalMetric::hyperbolic_lower_estimate(w1), quick());
    CHECK(m1.sampled_inf > 1.0);

    const Region w2 = Region::exterior_of_radius(1.0);
    const auto le = expansion_report(EntireMap::lambda_exp(0.25), w2, ConformalMetric::cylindrical(w2), quick());
    CHECK(le.sampled_inf > 1.0);

    const Region w3 = Region::exterior_of_radius(10.0);
    const auto f1 = expansion_report(EntireMap::f1(), w3, ConformalMetric::cylindrical(w3), quick());
    CHECK(f1.sampled_inf < 1e-6);

    CHECK_THROWS_AS(expansion_report(EntireMap::f1(), w3, ConformalMetric::cylindrical(w2), quick()), Error);
}

}
