#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edyn/catalog.hpp"
#include "edyn/metrics.hpp"
#include "edyn/regions.hpp"
#include "edyn/sampler.hpp"

namespace edyn {

enum class OrbitStatus { ConvergedToPoint, EscapedRight, ExpOverflow, BudgetExhausted };

struct EscapePolicy {
    double escape_re = 50.0;
    double tolerance = 1e-9;
    /// Subtract k * drift after the k-th iterate (u_{k+1} = f(u_k + k d) - (k+1) d).
    bool drift_compensated = false;
};

struct OrbitResult {
    std::vector<cplx> points;
    OrbitStatus status = OrbitStatus::BudgetExhausted;
    std::optional<cplx> limit;
    double residual = 0.0;
    bool drift_compensated = false;
    OverflowDirection overflow_direction = OverflowDirection::None;
};

OrbitResult iterate(const EntireMap& map, cplx z0, int budget, const EscapePolicy& policy = {});

enum class FixedPointClass { Superattracting, Attracting, Repelling, Indifferent };

struct FixedPointRecord {
    cplx location{};
    cplx multiplier{};
    FixedPointClass fixed_class = FixedPointClass::Indifferent;
};

FixedPointClass classify_multiplier(cplx multiplier);
std::string fixed_point_class_name(FixedPointClass c);

struct FixedPointSearch {
    std::vector<FixedPointRecord> records;
    /// Seeds from which Newton did not converge.
    std::vector<cplx> failed_seeds;
};

/// Damped Newton on f(z) - z from each seed, deduplicated within 1e-6.
FixedPointSearch find_fixed_points(const EntireMap& map, const std::vector<cplx>& seeds);

/// Newton on f(z) - z from one seed; nullopt on non-convergence.
std::optional<FixedPointRecord> refine_fixed_point(const EntireMap& map, cplx seed);

enum class PostsingularStatus { Bounded, Unbounded, FailedUnboundedS };

struct PostsingularReport {
    PostsingularStatus status = PostsingularStatus::Bounded;
    std::vector<cplx> points;
    double max_modulus = 0.0;
};

PostsingularReport postsingular_orbit(const EntireMap& map, int depth);

enum class CertificateStatus { Certified, FailedUnboundedS, FailedNoAbsorbingSet };

struct HyperbolicityCertificate {
    CertificateStatus status = CertificateStatus::FailedNoAbsorbingSet;
    std::vector<Disc> K;  // origin-centred discs; one when certified
    double radius = 0.0;
    double sup_bound = 0.0;
    double margin = 0.0;
    std::vector<cplx> singular_values;

    /// {radius, supBound, singularValues, status}
    [[nodiscard]] std::string to_json() const;
};

std::string certificate_status_name(CertificateStatus s);

HyperbolicityCertificate certify_hyperbolic(const EntireMap& map, const std::vector<double>& candidate_radii);

struct BakerSample {
    cplx z{};
    bool in_domain = false;
    double re_increase = 0.0;     // Re f(z) - Re z
    double guaranteed = 0.0;      // 1 - e^{-Re z}
    bool escaped = false;
    int steps = 0;
};

struct BakerReport {
    std::vector<BakerSample> samples;
    bool bound_holds = true;      // Re f >= Re z + 1 - e^{-Re z} on in-domain samples
    bool all_escaped = true;
    int out_of_domain = 0;
};

/// Checks the right half-plane H = {Re z > 0} against f1's Baker-domain
/// estimate at the given points; orbits are followed for `budget` steps.
BakerReport baker_domain_check(const EntireMap& map, const std::vector<cplx>& points, int budget = 200);
/// Deterministic boundary and interior samples of H.
BakerReport baker_domain_check(const EntireMap& map, int samples, int budget = 200);

struct WanderingRow {
    long long n = 0;
    cplx z{};
    double shift_error = 0.0;     // |f3(z_n) - z_{n+1}|
    double fixed_error = 0.0;     // |f2(z_n) - z_n|
    cplx f2_multiplier{};
    bool superattracting = false;
    bool basin_return = false;    // drift-compensated orbit of z_n + perturbation returns to z_n
};

struct WanderingReport {
    std::vector<WanderingRow> rows;
    bool all_hold = true;
};

WanderingReport wandering_orbit_check(const EntireMap& map, long long n0, long long count,
                                      double perturbation = 0.05);

struct ExpansionReport {
    double sampled_inf = 0.0;
    cplx witness{};
    long long sample_count = 0;
};

/// Minimum of the derivative norm over samples z in W with f(z) in W.
ExpansionReport expansion_report(const EntireMap& map, const Region& W, const ConformalMetric& metric,
                                 const SamplerConfig& sampler = {});

} // namespace edyn
