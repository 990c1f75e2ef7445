#include "edyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "edyn/error.hpp"

namespace edyn {
namespace {

struct Step {
    bool finite = true;
    cplx value{};
    OverflowDirection direction = OverflowDirection::None;
};

Step orbit_step(const EntireMap& map, cplx u, long long k, bool compensated) {
    const cplx d = compensated ? map.drift() : cplx{};
    const auto f = map.evaluate(u + static_cast<double>(k) * d);
    if (!f.finite()) {
        return {false, {}, f.direction};
    }
    return {true, f.value - static_cast<double>(k + 1) * d, OverflowDirection::None};
}

} // namespace

OrbitResult iterate(const EntireMap& map, cplx z0, int budget, const EscapePolicy& policy) {
    require(budget >= 1, ErrorCode::PreconditionViolation, "orbit budget must be at least 1");
    OrbitResult out;
    out.drift_compensated = policy.drift_compensated;
    out.points.push_back(z0);
    cplx current = z0;
    for (int k = 0; k < budget; ++k) {
        const auto next = orbit_step(map, current, k, policy.drift_compensated);
        if (!next.finite) {
            out.status = OrbitStatus::ExpOverflow;
            out.overflow_direction = next.direction;
            return out;
        }
        out.points.push_back(next.value);
        if (next.value.real() > policy.escape_re) {
            out.status = OrbitStatus::EscapedRight;
            return out;
        }
        if (std::abs(next.value - current) < policy.tolerance) {
            const auto after = orbit_step(map, next.value, k + 1, policy.drift_compensated);
            if (after.finite && std::abs(after.value - next.value) < policy.tolerance) {
                out.status = OrbitStatus::ConvergedToPoint;
                out.limit = next.value;
                out.residual = std::abs(after.value - next.value);
                return out;
            }
        }
        current = next.value;
    }
    out.status = OrbitStatus::BudgetExhausted;
    return out;
}

FixedPointClass classify_multiplier(cplx multiplier) {
    const double m = std::abs(multiplier);
    if (m < 1e-8) {
        return FixedPointClass::Superattracting;
    }
    if (m < 1.0 - 1e-8) {
        return FixedPointClass::Attracting;
    }
    if (m > 1.0 + 1e-8) {
        return FixedPointClass::Repelling;
    }
    return FixedPointClass::Indifferent;
}

std::string fixed_point_class_name(FixedPointClass c) {
    switch (c) {
    case FixedPointClass::Superattracting: return "Superattracting";
    case FixedPointClass::Attracting: return "Attracting";
    case FixedPointClass::Repelling: return "Repelling";
    case FixedPointClass::Indifferent: return "Indifferent";
    }
    return "Indifferent";
}

std::optional<FixedPointRecord> refine_fixed_point(const EntireMap& map, cplx seed) {
    cplx z = seed;
    const auto residual = [&map](cplx w) -> std::optional<cplx> {
        const auto f = map.evaluate(w);
        if (!f.finite()) {
            return std::nullopt;
        }
        return f.value - w;
    };
    auto g = residual(z);
    if (!g) {
        return std::nullopt;
    }
    for (int it = 0; it < 100; ++it) {
        const auto d = map.derivative(z);
        if (!d.finite() || d.value == cplx{1.0, 0.0}) {
            return std::nullopt;
        }
        cplx step = *g / (d.value - 1.0);
        // halve the step while it overshoots
        std::optional<cplx> g_next;
        for (int damp = 0; damp < 40; ++damp) {
            g_next = residual(z - step);
            if (g_next && std::abs(*g_next) <= std::abs(*g)) {
                break;
            }
            step *= 0.5;
        }
        if (!g_next) {
            return std::nullopt;
        }
        z -= step;
        g = g_next;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z)) || std::abs(*g) == 0.0) {
            break;
        }
    }
    if (std::abs(*g) >= 1e-10) {
        return std::nullopt;
    }
    const auto m = map.derivative(z);
    if (!m.finite()) {
        return std::nullopt;
    }
    return FixedPointRecord{z, m.value, classify_multiplier(m.value)};
}

FixedPointSearch find_fixed_points(const EntireMap& map, const std::vector<cplx>& seeds) {
    FixedPointSearch out;
    for (const cplx seed : seeds) {
        const auto rec = refine_fixed_point(map, seed);
        if (!rec) {
            out.failed_seeds.push_back(seed);
            continue;
        }
        const bool duplicate = std::any_of(out.records.begin(), out.records.end(), [&](const FixedPointRecord& r) {
            return std::abs(r.location - rec->location) < 1e-6;
        });
        if (!duplicate) {
            out.records.push_back(*rec);
        }
    }
    return out;
}

PostsingularReport postsingular_orbit(const EntireMap& map, int depth) {
    require(depth >= 0, ErrorCode::PreconditionViolation, "depth must be nonnegative");
    PostsingularReport out;
    const auto data = map.singular_values();
    if (!data.bounded_singular_set) {
        out.status = PostsingularStatus::FailedUnboundedS;
        return out;
    }
    for (const cplx s : data.known_singular_values) {
        cplx z = s;
        out.points.push_back(z);
        out.max_modulus = std::max(out.max_modulus, std::abs(z));
        for (int k = 0; k < depth; ++k) {
            const auto f = map.evaluate(z);
            if (!f.finite()) {
                out.status = PostsingularStatus::Unbounded;
                break;
            }
            z = f.value;
            out.points.push_back(z);
            out.max_modulus = std::max(out.max_modulus, std::abs(z));
        }
    }
    return out;
}

std::string certificate_status_name(CertificateStatus s) {
    switch (s) {
    case CertificateStatus::Certified: return "Certified";
    case CertificateStatus::FailedUnboundedS: return "FailedUnboundedS";
    case CertificateStatus::FailedNoAbsorbingSet: return "FailedNoAbsorbingSet";
    }
    return "FailedNoAbsorbingSet";
}

std::string HyperbolicityCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["radius"] = radius;
    j["supBound"] = sup_bound;
    auto values = nlohmann::ordered_json::array();
    for (const cplx s : singular_values) {
        values.push_back({s.real(), s.imag()});
    }
    j["singularValues"] = values;
    j["status"] = certificate_status_name(status);
    return j.dump(2) + "\n";
}

HyperbolicityCertificate certify_hyperbolic(const EntireMap& map, const std::vector<double>& candidate_radii) {
    HyperbolicityCertificate cert;
    const auto data = map.singular_values();
    cert.singular_values = data.known_singular_values;
    if (!data.bounded_singular_set) {
        cert.status = CertificateStatus::FailedUnboundedS;
        return cert;
    }
    constexpr double kSlack = 1e-9;
    for (const double r : candidate_radii) {
        if (!(r > 0.0)) {
            continue;
        }
        const double sup = map.sup_modulus_on_disc({}, r);
        double s_max = 0.0;
        for (const cplx s : data.known_singular_values) {
            s_max = std::max(s_max, std::abs(s));
        }
        cert.radius = r;
        cert.sup_bound = sup;
        cert.margin = std::min(r - sup, r - s_max);
        if (sup < r - kSlack && s_max < r - kSlack) {
            cert.status = CertificateStatus::Certified;
            cert.K = {Disc{{}, r}};
            return cert;
        }
    }
    cert.status = CertificateStatus::FailedNoAbsorbingSet;
    return cert;
}

BakerReport baker_domain_check(const EntireMap& map, const std::vector<cplx>& points, int budget) {
    require(map.kind() == MapKind::F1Fatou, ErrorCode::PreconditionViolation, "Baker check is defined for f1");
    BakerReport report;
    for (const cplx z : points) {
        BakerSample sample;
        sample.z = z;
        sample.in_domain = z.real() > 0.0;
        if (!sample.in_domain) {
            ++report.out_of_domain;
            report.samples.push_back(sample);
            continue;
        }
        const auto f = map.evaluate(z);
        sample.re_increase = f.value.real() - z.real();
        sample.guaranteed = -std::expm1(-z.real());
        // Re e^{-z} >= -e^{-Re z}; allow for rounding in the evaluation
        if (sample.re_increase < sample.guaranteed - 1e-12 * (1.0 + std::abs(z)) || sample.re_increase <= 0.0) {
            report.bound_holds = false;
        }
        const auto orbit = iterate(map, z, budget);
        sample.escaped = orbit.status == OrbitStatus::EscapedRight;
        sample.steps = static_cast<int>(orbit.points.size()) - 1;
        report.all_escaped = report.all_escaped && sample.escaped;
        report.samples.push_back(sample);
    }
    return report;
}

BakerReport baker_domain_check(const EntireMap& map, int samples, int budget) {
    require(samples >= 1, ErrorCode::PreconditionViolation, "need at least one sample");
    std::vector<cplx> points;
    // the imaginary axis (just inside H) and a rectangle of interior points
    for (int j = 0; j < samples; ++j) {
        const double y = -100.0 + 200.0 * (j + 0.5) / samples;
        points.emplace_back(1e-9, y);
        points.emplace_back(0.01 + 20.0 * (j + 0.5) / samples, y);
    }
    return baker_domain_check(map, points, budget);
}

WanderingReport wandering_orbit_check(const EntireMap& map, long long n0, long long count, double perturbation) {
    require(map.kind() == MapKind::F3Herman, ErrorCode::PreconditionViolation, "wandering check is defined for f3");
    require(count >= 0, ErrorCode::PreconditionViolation, "count must be nonnegative");
    const auto f2 = EntireMap::f2();
    WanderingReport report;
    EscapePolicy policy;
    policy.drift_compensated = true;
    for (long long n = n0; n <= n0 + count; ++n) {
        WanderingRow row;
        row.n = n;
        row.z = lattice_point(n);
        row.shift_error = std::abs(map.evaluate(row.z).value - lattice_point(n + 1));
        row.fixed_error = std::abs(f2.evaluate(row.z).value - row.z);
        row.f2_multiplier = f2.derivative(row.z).value;
        row.superattracting = classify_multiplier(row.f2_multiplier) == FixedPointClass::Superattracting;
        const auto orbit = iterate(map, row.z + perturbation, 500, policy);
        row.basin_return = orbit.status == OrbitStatus::ConvergedToPoint && std::abs(*orbit.limit - row.z) < 1e-6;
        report.all_hold = report.all_hold && row.shift_error <= 1e-12 && row.fixed_error <= 1e-12 &&
                          row.superattracting && row.basin_return;
        report.rows.push_back(row);
    }
    return report;
}

ExpansionReport expansion_report(const EntireMap& map, const Region& W, const ConformalMetric& metric,
                                 const SamplerConfig& sampler) {
    require(metric.region().describe() == W.describe(), ErrorCode::PreconditionViolation,
            "metric must live on W");
    const Objective objective = [&](cplx z) -> std::optional<double> {
        if (!W.contains(z)) {
            return std::nullopt;
        }
        const auto f = map.evaluate(z);
        if (!f.finite() || !W.contains(f.value) || !metric.defined_at(z) || !metric.defined_at(f.value)) {
            return std::nullopt;
        }
        try {
            return deriv_norm(map, z, metric, metric);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto pool = annular_grid(sampler);
    const auto admissible = [&](cplx c) { return objective(c).has_value(); };
    for (const cplx c : critical_probes(map, admissible, sampler)) {
        pool.push_back(c);
    }
    auto best = minimize(pool, objective, sampler.workers);
    if (!best) {
        fail(ErrorCode::NoSampleSatisfiesConstraint, "no sample with z and f(z) in W");
    }
    if (sampler.refine) {
        best = refine_witness(objective, *best, sampler.refine_iterations);
        pool.push_back(best->point);
    }
    return {best->value, best->point, static_cast<long long>(pool.size())};
}

} // namespace edyn
