#include "edyn/metrics.hpp"

#include <cmath>
#include <sstream>

#include "edyn/error.hpp"

namespace edyn {

ConformalMetric ConformalMetric::euclidean(Region region) {
    ConformalMetric m;
    m.kind_ = MetricKind::Euclidean;
    m.region_ = std::move(region);
    return m;
}

ConformalMetric ConformalMetric::cylindrical(Region region) {
    ConformalMetric m;
    m.kind_ = MetricKind::Cylindrical;
    m.region_ = std::move(region);
    return m;
}

ConformalMetric ConformalMetric::spherical(Region region) {
    ConformalMetric m;
    m.kind_ = MetricKind::Spherical;
    m.region_ = std::move(region);
    return m;
}

ConformalMetric ConformalMetric::poly_decay(double tau, Region region) {
    require(tau > 0.0, ErrorCode::PreconditionViolation, "poly-decay metric needs tau > 0");
    ConformalMetric m;
    m.kind_ = MetricKind::PolyDecay;
    m.tau_ = tau;
    m.region_ = std::move(region);
    return m;
}

ConformalMetric ConformalMetric::hyperbolic_exact(Region region) {
    const auto k = region.kind();
    require(k == RegionKind::UnitDisc || k == RegionKind::RightHalfPlane || k == RegionKind::ExteriorOfRadius,
            ErrorCode::PreconditionViolation,
            "no closed-form hyperbolic metric on " + region.describe());
    ConformalMetric m;
    m.kind_ = MetricKind::HyperbolicExact;
    m.region_ = std::move(region);
    return m;
}

ConformalMetric ConformalMetric::hyperbolic_lower_estimate(Region region) {
    require(region.kind() != RegionKind::WholePlane, ErrorCode::PreconditionViolation,
            "the plane carries no hyperbolic metric");
    ConformalMetric m;
    m.kind_ = MetricKind::HyperbolicLowerEstimate;
    m.region_ = std::move(region);
    return m;
}

ConformalMetric ConformalMetric::pullback(const ConformalMetric& base, const EntireMap& map, Region region) {
    ConformalMetric m;
    m.kind_ = MetricKind::Pullback;
    m.region_ = std::move(region);
    m.base_ = std::make_shared<const ConformalMetric>(base);
    m.map_ = std::make_shared<const EntireMap>(map);
    return m;
}

bool ConformalMetric::defined_at(cplx z) const {
    if (!region_.contains(z)) {
        return false;
    }
    if (kind_ == MetricKind::Cylindrical && z == cplx{}) {
        return false;
    }
    if (kind_ == MetricKind::Pullback) {
        const auto fz = map_->evaluate(z);
        return fz.finite() && base_->defined_at(fz.value);
    }
    return true;
}

double ConformalMetric::density(cplx z) const {
    if (!defined_at(z)) {
        fail(ErrorCode::OutsideRegion, "point outside " + region_.describe());
    }
    const double r = std::abs(z);
    switch (kind_) {
    case MetricKind::Euclidean: return 1.0;
    case MetricKind::Cylindrical: return 1.0 / r;
    case MetricKind::Spherical: return 1.0 / (1.0 + r * r);
    case MetricKind::PolyDecay: return 1.0 / (1.0 + std::pow(r, tau_));
    case MetricKind::HyperbolicExact:
        switch (region_.kind()) {
        case RegionKind::UnitDisc: return 2.0 / (1.0 - r * r);
        case RegionKind::RightHalfPlane: return 1.0 / (z.real() - region_.offset());
        case RegionKind::ExteriorOfRadius: return 1.0 / (r * (std::log(r) - std::log(region_.radius())));
        default: break;
        }
        break;
    case MetricKind::HyperbolicLowerEstimate: return 1.0 / (2.0 * region_.boundary_distance(z));
    case MetricKind::Pullback: {
        const auto fz = map_->evaluate(z);
        const auto dz = map_->derivative(z);
        if (!fz.finite() || !dz.finite()) {
            fail(ErrorCode::OverflowAtPoint, "pullback overflows");
        }
        return base_->density(fz.value) * std::abs(dz.value);
    }
    }
    fail(ErrorCode::PreconditionViolation, "unsupported metric");
}

bool ConformalMetric::complete_at_infinity() const {
    switch (kind_) {
    case MetricKind::Euclidean:
    case MetricKind::Cylindrical: return true;
    case MetricKind::Spherical: return false;
    case MetricKind::PolyDecay: return tau_ <= 1.0;
    case MetricKind::HyperbolicExact:
        // integral of dr / (r log r) diverges; infinity is a boundary point of
        // the half-plane, where the hyperbolic metric is complete.
        return region_.kind() != RegionKind::UnitDisc;
    case MetricKind::HyperbolicLowerEstimate: return region_.kind() != RegionKind::UnitDisc;
    case MetricKind::Pullback: return false;
    }
    return false;
}

std::string ConformalMetric::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case MetricKind::Euclidean: os << "euclidean"; break;
    case MetricKind::Cylindrical: os << "cylindrical"; break;
    case MetricKind::Spherical: os << "spherical"; break;
    case MetricKind::PolyDecay: os << "poly-decay:" << tau_; break;
    case MetricKind::HyperbolicExact: os << "hyperbolic"; break;
    case MetricKind::HyperbolicLowerEstimate: os << "hyperbolic-lower"; break;
    case MetricKind::Pullback: os << "pullback(" << base_->describe() << "," << map_->id() << ")"; break;
    }
    os << "@" << region_.describe();
    return os.str();
}

double deriv_norm(const EntireMap& map, cplx z, const ConformalMetric& domain, const ConformalMetric& range) {
    const EntireMap chain[] = {map};
    return deriv_norm(std::span<const EntireMap>(chain), z, domain, range);
}

double deriv_norm(std::span<const EntireMap> chain, cplx z, const ConformalMetric& domain,
                  const ConformalMetric& range) {
    require(!chain.empty(), ErrorCode::PreconditionViolation, "empty map chain");
    const double rho = domain.density(z);
    double modulus = 1.0;
    cplx point = z;
    for (const auto& map : chain) {
        const auto d = map.derivative(point);
        const auto v = map.evaluate(point);
        if (!d.finite() || !v.finite()) {
            fail(ErrorCode::OverflowAtPoint, "evaluation overflows along the chain");
        }
        modulus *= std::abs(d.value);
        point = v.value;
    }
    return modulus * range.density(point) / rho;
}

} // namespace edyn
