#include "edyn/sampler.hpp"

#include <array>
#include <cmath>

#include "edyn/error.hpp"
#include "edyn/parallel.hpp"

namespace edyn {
namespace {

bool better(const Witness& a, const Witness& b) {
    if (a.value != b.value) {
        return a.value < b.value;
    }
    if (a.point.real() != b.point.real()) {
        return a.point.real() < b.point.real();
    }
    return a.point.imag() < b.point.imag();
}

} // namespace

std::vector<cplx> annular_grid(const SamplerConfig& config) {
    require(config.min_radius > 0.0 && config.radii_per_octave > 0 && config.octaves >= 0 && config.angles > 0,
            ErrorCode::PreconditionViolation, "invalid sampler configuration");
    const int radii = config.radii_per_octave * config.octaves + 1;
    std::vector<cplx> grid;
    grid.reserve(static_cast<std::size_t>(radii) * config.angles);
    for (int k = 0; k < radii; ++k) {
        const double r = config.min_radius * std::exp2(static_cast<double>(k) / config.radii_per_octave);
        for (int j = 0; j < config.angles; ++j) {
            grid.push_back(std::polar(r, kTwoPi * j / config.angles));
        }
    }
    return grid;
}

std::vector<cplx> critical_probes(const EntireMap& map, const std::function<bool(cplx)>& admissible,
                                  const SamplerConfig& config) {
    std::vector<cplx> probes;
    const auto data = map.singular_values();
    for (const cplx c : data.critical_points) {
        if (admissible(c)) {
            probes.push_back(c);
        }
    }
    if (!data.critical_family) {
        return probes;
    }
    const CriticalFamily family = *data.critical_family;
    const long long window = config.critical_window;
    for (long long n = -window; n <= window; ++n) {
        if (admissible(family.point(n))) {
            probes.push_back(family.point(n));
        }
    }
    constexpr long long kLimit = 1LL << 40;
    for (const long long sign : {1LL, -1LL}) {
        long long hi = 1;
        while (hi < kLimit && !admissible(family.point(sign * hi))) {
            hi *= 2;
        }
        if (hi >= kLimit) {
            continue;
        }
        long long lo = hi / 2; // inadmissible (or 0)
        while (hi - lo > 1) {
            const long long mid = lo + (hi - lo) / 2;
            if (admissible(family.point(sign * mid))) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        for (long long n = hi; n < hi + window; ++n) {
            if (n > window && admissible(family.point(sign * n))) {
                probes.push_back(family.point(sign * n));
            }
        }
    }
    return probes;
}

std::optional<Witness> minimize(const std::vector<cplx>& points, const Objective& objective, unsigned workers) {
    if (workers == 0) {
        workers = default_workers();
    }
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, points.size()));
    std::vector<std::optional<Witness>> partial(chunks);
    const std::size_t per = (points.size() + chunks - 1) / std::max<std::size_t>(chunks, 1);
    parallel_for(chunks, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            std::optional<Witness> best;
            const std::size_t lo = c * per;
            const std::size_t hi = std::min(points.size(), lo + per);
            for (std::size_t i = lo; i < hi; ++i) {
                const auto v = objective(points[i]);
                if (!v) {
                    continue;
                }
                const Witness w{*v, points[i]};
                if (!best || better(w, *best)) {
                    best = w;
                }
            }
            partial[c] = best;
        }
    });
    std::optional<Witness> best;
    for (const auto& p : partial) {
        if (p && (!best || better(*p, *best))) {
            best = p;
        }
    }
    return best;
}

Witness refine_witness(const Objective& objective, Witness start, int iterations) {
    static const std::array<cplx, 8> kDirections = [] {
        std::array<cplx, 8> d{};
        for (int k = 0; k < 8; ++k) {
            d[k] = std::polar(1.0, kTwoPi * k / 8);
        }
        return d;
    }();
    Witness best = start;
    double h = std::max(1e-3, 0.05 * std::abs(start.point));
    for (int it = 0; it < iterations; ++it) {
        bool improved = false;
        for (const cplx d : kDirections) {
            const cplx candidate = best.point + h * d;
            const auto v = objective(candidate);
            if (v && *v < best.value) {
                best = {*v, candidate};
                improved = true;
                break;
            }
        }
        if (!improved) {
            h *= 0.5;
            if (h < 1e-14 * (1.0 + std::abs(best.point))) {
                break;
            }
        }
    }
    return best;
}

} // namespace edyn
