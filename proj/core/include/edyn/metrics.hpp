#pragma once

#include <memory>
#include <span>
#include <string>

#include "edyn/catalog.hpp"
#include "edyn/regions.hpp"

namespace edyn {

enum class MetricKind {
    Euclidean,
    Cylindrical,              // 1/|z|
    Spherical,                // 1/(1+|z|^2)
    PolyDecay,                // 1/(1+|z|^tau)
    HyperbolicExact,          // curvature -1 density of disc, half-plane or exterior
    HyperbolicLowerEstimate,  // 1/(2 dist(z, boundary))
    Pullback,                 // sigma(f(z)) |f'(z)|
};

/// A conformal metric rho(z)|dz| on a region.
class ConformalMetric {
public:
    static ConformalMetric euclidean(Region region = Region::whole_plane());
    static ConformalMetric cylindrical(Region region = Region::whole_plane());
    static ConformalMetric spherical(Region region = Region::whole_plane());
    static ConformalMetric poly_decay(double tau, Region region = Region::whole_plane());
    /// region.kind() must be UnitDisc, RightHalfPlane or ExteriorOfRadius.
    static ConformalMetric hyperbolic_exact(Region region);
    static ConformalMetric hyperbolic_lower_estimate(Region region);
    static ConformalMetric pullback(const ConformalMetric& base, const EntireMap& map,
                                    Region region = Region::whole_plane());

    [[nodiscard]] MetricKind kind() const { return kind_; }
    [[nodiscard]] const Region& region() const { return region_; }
    [[nodiscard]] double tau() const { return tau_; }

    /// True when z lies in the region (and, for pullbacks, f(z) lies in the base region).
    [[nodiscard]] bool defined_at(cplx z) const;
    /// Throws OutsideRegion when !defined_at(z), OverflowAtPoint for pullbacks that overflow.
    [[nodiscard]] double density(cplx z) const;

    /// Whether dist_rho(z, infinity) = infinity, asserted analytically per variant.
    [[nodiscard]] bool complete_at_infinity() const;
    [[nodiscard]] std::string describe() const;

private:
    MetricKind kind_ = MetricKind::Euclidean;
    Region region_;
    double tau_ = 0.0;
    std::shared_ptr<const ConformalMetric> base_;
    std::shared_ptr<const EntireMap> map_;
};

/// |f'(z)| sigma(f(z)) / rho(z).
double deriv_norm(const EntireMap& map, cplx z, const ConformalMetric& domain,
                  const ConformalMetric& range);

/// Derivative norm of the composition chain[n-1] o ... o chain[0], evaluated
/// by sequential evaluation and the chain rule for |f'|.
double deriv_norm(std::span<const EntireMap> chain, cplx z, const ConformalMetric& domain,
                  const ConformalMetric& range);

} // namespace edyn
