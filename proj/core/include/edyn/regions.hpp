#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edyn/complex_math.hpp"

namespace edyn {

enum class RegionKind { WholePlane, ExteriorOfRadius, RightHalfPlane, UnitDisc, ComplementOfDiscUnion };

/// A plane domain with an exact boundary-distance oracle.
class Region {
public:
    static Region whole_plane();
    static Region exterior_of_radius(double radius);
    static Region right_half_plane(double offset = 0.0);
    static Region unit_disc();
    static Region complement_of_discs(std::vector<Disc> discs);

    [[nodiscard]] RegionKind kind() const { return kind_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] double offset() const { return offset_; }
    [[nodiscard]] const std::vector<Disc>& discs() const { return discs_; }

    [[nodiscard]] bool contains(cplx z) const;
    /// Euclidean distance to the boundary; +inf for the whole plane. Points
    /// outside the region get the (positive) distance to it.
    [[nodiscard]] double boundary_distance(cplx z) const;
    /// Nudges a point on or within `eps` of the boundary into the interior.
    [[nodiscard]] std::optional<cplx> inward_probe(cplx z, double eps) const;
    [[nodiscard]] bool simply_connected() const;
    [[nodiscard]] std::string describe() const;

private:
    RegionKind kind_ = RegionKind::WholePlane;
    double radius_ = 0.0;
    double offset_ = 0.0;
    std::vector<Disc> discs_;
};

} // namespace edyn
