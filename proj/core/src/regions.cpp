#include "edyn/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edyn/error.hpp"

namespace edyn {

Region Region::whole_plane() { return {}; }

Region Region::exterior_of_radius(double radius) {
    require(radius > 0.0, ErrorCode::PreconditionViolation, "exterior region needs R > 0");
    Region r;
    r.kind_ = RegionKind::ExteriorOfRadius;
    r.radius_ = radius;
    return r;
}

Region Region::right_half_plane(double offset) {
    Region r;
    r.kind_ = RegionKind::RightHalfPlane;
    r.offset_ = offset;
    return r;
}

Region Region::unit_disc() {
    Region r;
    r.kind_ = RegionKind::UnitDisc;
    r.radius_ = 1.0;
    return r;
}

Region Region::complement_of_discs(std::vector<Disc> discs) {
    for (const auto& d : discs) {
        require(d.radius >= 0.0, ErrorCode::PreconditionViolation, "negative disc radius");
    }
    Region r;
    r.kind_ = RegionKind::ComplementOfDiscUnion;
    r.discs_ = std::move(discs);
    return r;
}

bool Region::contains(cplx z) const {
    switch (kind_) {
    case RegionKind::WholePlane: return true;
    case RegionKind::ExteriorOfRadius: return std::abs(z) > radius_;
    case RegionKind::RightHalfPlane: return z.real() > offset_;
    case RegionKind::UnitDisc: return std::abs(z) < 1.0;
    case RegionKind::ComplementOfDiscUnion:
        return std::none_of(discs_.begin(), discs_.end(),
                            [z](const Disc& d) { return std::abs(z - d.center) <= d.radius; });
    }
    return false;
}

double Region::boundary_distance(cplx z) const {
    switch (kind_) {
    case RegionKind::WholePlane: return std::numeric_limits<double>::infinity();
    case RegionKind::ExteriorOfRadius: return std::abs(std::abs(z) - radius_);
    case RegionKind::RightHalfPlane: return std::abs(z.real() - offset_);
    case RegionKind::UnitDisc: return std::abs(1.0 - std::abs(z));
    case RegionKind::ComplementOfDiscUnion: {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& d : discs_) {
            best = std::min(best, std::abs(std::abs(z - d.center) - d.radius));
        }
        return best;
    }
    }
    return 0.0;
}

std::optional<cplx> Region::inward_probe(cplx z, double eps) const {
    if (contains(z)) {
        return z;
    }
    if (boundary_distance(z) > eps) {
        return std::nullopt;
    }
    cplx candidate = z;
    switch (kind_) {
    case RegionKind::WholePlane: return z;
    case RegionKind::RightHalfPlane: candidate = {offset_ + eps, z.imag()}; break;
    case RegionKind::ExteriorOfRadius:
        candidate = z == cplx{} ? cplx{radius_ + eps, 0.0} : z / std::abs(z) * (radius_ + eps);
        break;
    case RegionKind::UnitDisc:
        candidate = z == cplx{} ? z : z / std::abs(z) * (1.0 - eps);
        break;
    case RegionKind::ComplementOfDiscUnion:
        for (const auto& d : discs_) {
            if (std::abs(z - d.center) <= d.radius) {
                const cplx dir = z == d.center ? cplx{1.0, 0.0} : (z - d.center) / std::abs(z - d.center);
                candidate = d.center + dir * (d.radius + eps);
                break;
            }
        }
        break;
    }
    if (contains(candidate)) {
        return candidate;
    }
    return std::nullopt;
}

bool Region::simply_connected() const {
    switch (kind_) {
    case RegionKind::RightHalfPlane:
    case RegionKind::UnitDisc:
    case RegionKind::WholePlane: return true;
    case RegionKind::ExteriorOfRadius: return false;
    case RegionKind::ComplementOfDiscUnion: return discs_.empty();
    }
    return false;
}

std::string Region::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case RegionKind::WholePlane: os << "whole-plane"; break;
    case RegionKind::ExteriorOfRadius: os << "exterior:" << radius_; break;
    case RegionKind::RightHalfPlane: os << "right-half-plane:" << offset_; break;
    case RegionKind::UnitDisc: os << "unit-disc"; break;
    case RegionKind::ComplementOfDiscUnion:
        os << "complement-of-discs:" << discs_.size();
        break;
    }
    return os.str();
}

} // namespace edyn
