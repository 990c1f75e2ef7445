#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edyn/catalog.hpp"
#include "edyn/regions.hpp"
#include "edyn/sampler.hpp"

namespace edyn {

/// Sampled infima of a scan quantity, one row per threshold.
struct ScanReport {
    std::vector<double> thresholds;
    std::vector<double> infima;
    std::vector<cplx> witnesses;
    long long sample_count = 0;
    /// Best sample taken on a traced asymptotic curve (polyDecayScan only).
    std::optional<double> curve_infimum;
    std::optional<cplx> curve_witness;

    /// Header `R,infimum,witness_re,witness_im,samples`.
    [[nodiscard]] std::string to_csv() const;
};

/// inf |z f'(z) / f(z)| over samples with |f(z)| > R, for each R.
ScanReport eta_scan(const EntireMap& map, const std::vector<double>& thresholds, const SamplerConfig& sampler = {});

/// inf |f'(z)| (1 + |z|^2) / (1 + |f(z)|^2) over samples with |f(z)| > R.
ScanReport spherical_expansion_scan(const EntireMap& map, double R, const SamplerConfig& sampler = {});

/// inf (1 + |z|^tau) |f'(z)| over samples with f(z) in U. The report's
/// threshold column holds the radius of U.
ScanReport poly_decay_scan(const EntireMap& map, cplx s, const Disc& U, double tau,
                           const SamplerConfig& sampler = {});

/// inf of the hyperbolic(omega) -> cylindrical derivative norm over samples
/// in omega with |f(z)| > R.
ScanReport eta_omega_scan(const EntireMap& map, const Region& omega, const std::vector<double>& thresholds,
                          const SamplerConfig& sampler = {});

} // namespace edyn
