#include "edyn/scans.hpp"

#include <cmath>
#include <sstream>

#include "edyn/error.hpp"
#include "edyn/format.hpp"
#include "edyn/inverse_branch.hpp"
#include "edyn/metrics.hpp"

namespace edyn {
namespace {

using ObjectiveFor = std::function<Objective(double)>;

void check_thresholds(const std::vector<double>& thresholds) {
    require(!thresholds.empty(), ErrorCode::PreconditionViolation, "no thresholds given");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        require(thresholds[i] > 0.0 && std::isfinite(thresholds[i]), ErrorCode::PreconditionViolation,
                "thresholds must be positive");
        require(i == 0 || thresholds[i] > thresholds[i - 1], ErrorCode::PreconditionViolation,
                "thresholds must be increasing");
    }
}

bool better(const Witness& a, const Witness& b) {
    if (a.value != b.value) {
        return a.value < b.value;
    }
    if (a.point.real() != b.point.real()) {
        return a.point.real() < b.point.real();
    }
    return a.point.imag() < b.point.imag();
}

// Minimises per threshold over one shared pool; refined witnesses join the
// pool so that nested constraint sets keep nested minima.
ScanReport threshold_scan(const std::vector<double>& thresholds, std::vector<cplx> pool,
                          const ObjectiveFor& objective_for, const SamplerConfig& sampler) {
    const std::size_t n = thresholds.size();
    std::vector<Witness> best(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = minimize(pool, objective_for(thresholds[i]), sampler.workers);
        if (!w) {
            fail(ErrorCode::NoSampleSatisfiesConstraint,
                 "no sample satisfies the constraint at R=" + fmt_double(thresholds[i]));
        }
        best[i] = *w;
    }
    if (sampler.refine) {
        std::vector<cplx> refined;
        for (std::size_t i = 0; i < n; ++i) {
            refined.push_back(refine_witness(objective_for(thresholds[i]), best[i], sampler.refine_iterations).point);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto objective = objective_for(thresholds[i]);
            for (const cplx p : refined) {
                if (const auto v = objective(p)) {
                    const Witness w{*v, p};
                    if (better(w, best[i])) {
                        best[i] = w;
                    }
                }
            }
        }
        pool.insert(pool.end(), refined.begin(), refined.end());
    }
    ScanReport report;
    report.thresholds = thresholds;
    report.sample_count = static_cast<long long>(pool.size());
    for (const auto& w : best) {
        report.infima.push_back(w.value);
        report.witnesses.push_back(w.point);
    }
    return report;
}

std::vector<cplx> pooled_probes(const EntireMap& map, const std::vector<double>& thresholds,
                                const SamplerConfig& sampler,
                                const std::function<std::optional<cplx>(cplx)>& transform) {
    std::vector<cplx> probes;
    for (const double R : thresholds) {
        const auto admissible = [&](cplx c) {
            const auto p = transform(c);
            if (!p) {
                return false;
            }
            const auto f = map.evaluate(*p);
            return f.finite() && std::abs(f.value) > R;
        };
        for (const cplx c : critical_probes(map, admissible, sampler)) {
            probes.push_back(*transform(c));
        }
    }
    return probes;
}

std::vector<cplx> grid_with_probes(const EntireMap& map, const std::vector<double>& thresholds,
                                   const SamplerConfig& sampler,
                                   const std::function<std::optional<cplx>(cplx)>& transform) {
    auto pool = annular_grid(sampler);
    const auto probes = pooled_probes(map, thresholds, sampler, transform);
    pool.insert(pool.end(), probes.begin(), probes.end());
    return pool;
}

std::optional<cplx> identity(cplx z) { return z; }

} // namespace

std::string ScanReport::to_csv() const {
    std::ostringstream os;
    os << "R,infimum,witness_re,witness_im,samples\n";
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        os << fmt_double(thresholds[i]) << ',' << fmt_double(infima[i]) << ',' << fmt_double(witnesses[i].real())
           << ',' << fmt_double(witnesses[i].imag()) << ',' << sample_count << '\n';
    }
    return os.str();
}

ScanReport eta_scan(const EntireMap& map, const std::vector<double>& thresholds, const SamplerConfig& sampler) {
    check_thresholds(thresholds);
    const ObjectiveFor objective_for = [&map](double R) -> Objective {
        return [&map, R](cplx z) -> std::optional<double> {
            const auto f = map.evaluate(z);
            if (!f.finite() || !(std::abs(f.value) > R)) {
                return std::nullopt;
            }
            const auto d = map.derivative(z);
            if (!d.finite()) {
                return std::nullopt;
            }
            return std::abs(z) * (std::abs(d.value) / std::abs(f.value));
        };
    };
    return threshold_scan(thresholds, grid_with_probes(map, thresholds, sampler, identity), objective_for, sampler);
}

ScanReport spherical_expansion_scan(const EntireMap& map, double R, const SamplerConfig& sampler) {
    const std::vector<double> thresholds{R};
    check_thresholds(thresholds);
    const ObjectiveFor objective_for = [&map](double threshold) -> Objective {
        return [&map, threshold](cplx z) -> std::optional<double> {
            const auto f = map.evaluate(z);
            if (!f.finite() || !(std::abs(f.value) > threshold)) {
                return std::nullopt;
            }
            const auto d = map.derivative(z);
            if (!d.finite()) {
                return std::nullopt;
            }
            // divide by |f| twice so that |f|^2 never overflows
            const double af = std::abs(f.value);
            const double az = std::abs(z);
            return (std::abs(d.value) / af) * ((1.0 + az * az) / af) / (1.0 + 1.0 / (af * af));
        };
    };
    return threshold_scan(thresholds, grid_with_probes(map, thresholds, sampler, identity), objective_for, sampler);
}

ScanReport poly_decay_scan(const EntireMap& map, cplx s, const Disc& U, double tau, const SamplerConfig& sampler) {
    require(map.is_known_singular_value(s), ErrorCode::PreconditionViolation,
            "s is not a known singular value of " + map.id());
    require(U.radius > 0.0 && U.contains(s), ErrorCode::PreconditionViolation, "U must be a disc around s");
    require(tau > 0.0, ErrorCode::PreconditionViolation, "tau must be positive");

    auto pool = annular_grid(sampler);
    std::vector<cplx> curve_points;
    for (const cplx c : map.critical_points_over(U)) {
        pool.push_back(c);
    }
    for (const cplx a : map.singular_values().asymptotic_values) {
        if (!U.contains(a)) {
            continue;
        }
        // largest disc around a inside U that is free of critical values
        Disc around{a, U.radius - std::abs(a - U.center)};
        for (int shrink = 0; shrink < 30; ++shrink) {
            if (map.critical_points_over(around).empty() && !map.is_critical_value(a)) {
                break;
            }
            around.radius *= 0.5;
        }
        TractConfig tract_config;
        tract_config.boundary_modulus = 2.0;
        try {
            for (const auto& tract : discs_of_univalence(map, a, around, sampler.tracts_per_value, tract_config)) {
                const auto curve = trace_asymptotic_curve(tract.branch(), sampler.curve_modulus);
                curve_points.insert(curve_points.end(), curve.samples.begin(), curve.samples.end());
            }
        } catch (const Error&) {
            // curves are an optional witness source; the grid still applies
        }
    }

    const double tau_copy = tau;
    const ObjectiveFor objective_for = [&map, &U, tau_copy](double) -> Objective {
        return [&map, &U, tau_copy](cplx z) -> std::optional<double> {
            const auto f = map.evaluate(z);
            if (!f.finite() || !U.contains(f.value)) {
                return std::nullopt;
            }
            const auto d = map.derivative(z);
            if (!d.finite()) {
                return std::nullopt;
            }
            return (1.0 + std::pow(std::abs(z), tau_copy)) * std::abs(d.value);
        };
    };
    pool.insert(pool.end(), curve_points.begin(), curve_points.end());
    auto report = threshold_scan({U.radius}, std::move(pool), objective_for, sampler);
    if (const auto best = minimize(curve_points, objective_for(U.radius), sampler.workers)) {
        report.curve_infimum = best->value;
        report.curve_witness = best->point;
    }
    return report;
}

ScanReport eta_omega_scan(const EntireMap& map, const Region& omega, const std::vector<double>& thresholds,
                          const SamplerConfig& sampler) {
    const auto hyperbolic = ConformalMetric::hyperbolic_exact(omega);
    check_thresholds(thresholds);
    const auto cylindrical = ConformalMetric::cylindrical();
    const ObjectiveFor objective_for = [&map, &omega, &hyperbolic, &cylindrical](double R) -> Objective {
        return [&map, &omega, &hyperbolic, &cylindrical, R](cplx z) -> std::optional<double> {
            if (!omega.contains(z)) {
                return std::nullopt;
            }
            const auto f = map.evaluate(z);
            if (!f.finite() || !(std::abs(f.value) > R)) {
                return std::nullopt;
            }
            try {
                return deriv_norm(map, z, hyperbolic, cylindrical);
            } catch (const Error&) {
                return std::nullopt;
            }
        };
    };
    // critical points on the boundary of omega are probed just inside it
    const auto inward = [&omega](cplx c) { return omega.inward_probe(c, 1e-9); };
    return threshold_scan(thresholds, grid_with_probes(map, thresholds, sampler, inward), objective_for, sampler);
}

} // namespace edyn
