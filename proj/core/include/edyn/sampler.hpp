#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "edyn/catalog.hpp"

namespace edyn {

struct SamplerConfig {
    /// Innermost grid radius; radii are min_radius * 2^(k / radii_per_octave).
    double min_radius = 1.0 / 64.0;
    int radii_per_octave = 8;
    int octaves = 16;
    int angles = 256;
    /// Consecutive critical-family members probed past the first admissible one.
    long long critical_window = 64;
    /// Compass-search polishing of each witness.
    bool refine = true;
    int refine_iterations = 600;
    /// Asymptotic curves feeding polyDecayScan are traced out to this modulus.
    double curve_modulus = 64.0;
    int tracts_per_value = 4;
    /// 0 selects the hardware concurrency.
    unsigned workers = 0;
};

/// Exponential annular grid of radii min_radius * 2^(k/8) and equally spaced angles.
std::vector<cplx> annular_grid(const SamplerConfig& config);

/// Critical-family members z_n admissible under `admissible`, assumed
/// monotone in |n|: the first admissible n on each side (binary search)
/// followed by critical_window consecutive members, plus every admissible
/// member with |n| <= critical_window.
std::vector<cplx> critical_probes(const EntireMap& map, const std::function<bool(cplx)>& admissible,
                                  const SamplerConfig& config);

using Objective = std::function<std::optional<double>(cplx)>;

struct Witness {
    double value = 0.0;
    cplx point{};
};

/// Deterministic minimum of `objective` over `points` (ties broken by
/// value, then real part, then imaginary part), evaluated in parallel.
std::optional<Witness> minimize(const std::vector<cplx>& points, const Objective& objective, unsigned workers);

/// Compass search started from a witness; never returns a worse point.
Witness refine_witness(const Objective& objective, Witness start, int iterations);

} // namespace edyn
