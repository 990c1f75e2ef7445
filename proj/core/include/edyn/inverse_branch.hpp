#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edyn/catalog.hpp"

namespace edyn {

enum class ObstructionKind { CriticalObstruction, AsymptoticObstruction };

struct Obstruction {
    cplx s{};
    ObstructionKind kind = ObstructionKind::AsymptoticObstruction;
    /// Limit point of the branch at s (critical obstructions only).
    std::optional<cplx> critical_point;
};

struct ContinuationConfig {
    double growth = 1.05;
    int rays = 64;
    double resolution = 1e-6;
    /// First trial radius as a fraction of max_radius.
    double initial_fraction = 1e-3;
    long long step_budget = 50'000'000;
    double min_derivative = 1e-10;
    /// Consecutive radial halvings over which |phi| must grow to call an
    /// obstruction asymptotic.
    int divergence_window = 10;
};

/// A branch phi of f^{-1} on the disc B(center, radius) with phi(center) = basepoint.
struct BranchState {
    EntireMap map = EntireMap::f1();
    cplx basepoint{};
    cplx center{};
    double radius = 0.0;
    std::optional<Obstruction> obstruction;
    long long steps = 0;

    /// phi(w) by continuation along the segment [center, w].
    /// Throws PreconditionViolation outside the open disc.
    [[nodiscard]] cplx evaluate(cplx w) const;
};

/// Grows the disc around f(z0) on which the inverse branch through z0
/// continues, up to max_radius, and classifies the obstruction.
BranchState continue_branch(const EntireMap& map, cplx z0, double max_radius,
                            const ContinuationConfig& config = {});

struct AsymptoticCurve {
    std::vector<cplx> samples;   // z(t), |z| increasing
    std::vector<cplx> images;    // f(z(t)), on the segment towards target_value
    cplx segment_start{};        // image of the first sample
    cplx target_value{};         // the asymptotic value a
};

/// Follows phi along the radius of the branch disc that ends at the
/// asymptotic value until |z| >= target_modulus.
AsymptoticCurve trace_asymptotic_curve(const BranchState& state, double target_modulus,
                                       long long budget = 200'000);

struct Tract {
    EntireMap map = EntireMap::f1();
    Disc disc;               // disc of univalence, tangent to s
    cplx tangency{};         // the asymptotic value s
    long long sheet = 0;     // index of the log-chart sheet
    cplx branch_seed{};      // phi(disc.center)
    double base_radius = 1;  // R_0: angular measures are taken for x >= R_0
    std::vector<cplx> boundary;

    [[nodiscard]] bool contains(cplx z) const;
    /// Branch over the disc of univalence with its asymptotic obstruction at s.
    [[nodiscard]] BranchState branch() const;
};

struct TractConfig {
    /// Boundary polylines are traced out to this modulus.
    double boundary_modulus = 1100.0;
    /// Largest sheet index tried when collecting tracts.
    long long max_sheet = 64;
};

/// K pairwise disjoint tracts over one disc of univalence tangent to s inside U.
std::vector<Tract> discs_of_univalence(const EntireMap& map, cplx s, const Disc& U, int count,
                                       const TractConfig& config = {});

/// Angular measure of {theta : x e^{i theta} in tract}: sampled at
/// 2 pi / resolution, with each membership transition bisected.
double tract_angular_measure(const Tract& tract, double x, int resolution = 4096);

struct DecayRow {
    double modulus = 0.0;
    double value = 0.0;
};

/// (|z|, (1 + |z|^tau) |f'(z)|) along the curve.
std::vector<DecayRow> decay_along_curve(const EntireMap& map, const AsymptoticCurve& curve, double tau);

/// Smallest segment-to-segment distance between two polylines.
double min_polyline_distance(std::span<const cplx> a, std::span<const cplx> b);

/// CSV polyline with header `t,re,im` (t is the sample index).
std::string polyline_csv(std::span<const cplx> points);

} // namespace edyn
