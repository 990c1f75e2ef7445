#include "edyn/inverse_branch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "edyn/error.hpp"
#include "edyn/format.hpp"

namespace edyn {
namespace {

struct Jet {
    cplx value;
    cplx first;
    cplx second;
};

using JetFn = std::function<std::optional<Jet>(cplx)>;
using PathFn = std::function<cplx(double)>;

JetFn map_jet(const EntireMap& map) {
    return [map](cplx z) -> std::optional<Jet> {
        const auto v = map.evaluate(z);
        const auto d = map.derivative(z);
        const auto s = map.second_derivative(z);
        if (!v.finite() || !d.finite() || !s.finite()) {
            return std::nullopt;
        }
        return Jet{v.value, d.value, s.value};
    };
}

// Jet of the log chart log(f(z) - s) used near an asymptotic value.
JetFn chart_jet(const EntireMap& map) {
    const bool linear = map.kind() == MapKind::LambdaExp;
    return [map, linear](cplx z) -> std::optional<Jet> {
        if (!linear && z == cplx{}) {
            return std::nullopt;
        }
        const cplx second = linear ? cplx{} : -1.0 / (z * z);
        return Jet{map.log_chart(z), map.log_chart_derivative(z), second};
    };
}

// Predictor-corrector continuation of g^{-1} along a parametrised path.
class Tracer {
public:
    Tracer(JetFn jet, double min_derivative, long long budget)
        : jet_(std::move(jet)), min_derivative_(min_derivative), budget_(budget) {}

    std::optional<cplx> follow(const PathFn& path, cplx z) {
        double t = 0.0;
        double dt = 0.125;
        while (t < 1.0) {
            const double tn = std::min(1.0, t + dt);
            const cplx target = path(tn);
            const auto j = jet_(z);
            if (!j || std::abs(j->first) < min_derivative_) {
                return std::nullopt;
            }
            const cplx dz = (target - j->value) / j->first;
            std::optional<cplx> next;
            if (std::abs(dz) * std::abs(j->second) <= 0.25 * std::abs(j->first)) {
                next = correct(z + dz, target);
                if (next && std::abs(*next - (z + dz)) > 0.1 * std::abs(dz) + 1e-12 * (1.0 + std::abs(*next))) {
                    next.reset();
                }
            }
            if (!next) {
                dt *= 0.5;
                if (dt < 1e-13) {
                    return std::nullopt;
                }
                continue;
            }
            z = *next;
            t = tn;
            dt = std::min(0.5, dt * 1.5);
            if (++steps_ > budget_) {
                fail(ErrorCode::BudgetExhausted, "continuation step budget exhausted");
            }
        }
        return z;
    }

    std::optional<cplx> correct(cplx z, cplx target) const {
        for (int it = 0; it < 16; ++it) {
            const auto j = jet_(z);
            if (!j || j->first == cplx{}) {
                return std::nullopt;
            }
            const cplx step = (j->value - target) / j->first;
            z -= step;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                return std::nullopt;
            }
            if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) {
                return z;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] long long steps() const { return steps_; }

private:
    JetFn jet_;
    double min_derivative_;
    long long budget_;
    long long steps_ = 0;
};

PathFn segment(cplx a, cplx b) {
    return [a, b](double t) { return a + (b - a) * t; };
}

PathFn arc(cplx center, double radius, double from, double to) {
    return [=](double t) { return center + std::polar(radius, from + (to - from) * t); };
}

bool same_point(cplx a, cplx b) {
    return std::abs(a - b) <= 1e-8 * (1.0 + std::abs(b));
}

class DiscGrower {
public:
    DiscGrower(const EntireMap& map, cplx z0, cplx center, const ContinuationConfig& config)
        : z0_(z0), center_(center), config_(config),
          tracer_(map_jet(map), config.min_derivative, config.step_budget) {
        const int n = config.rays;
        angles_.resize(n);
        for (int k = 0; k < n; ++k) {
            // half-step offset keeps the rays off the real axis through center
            angles_[k] = kTwoPi * (k + 0.5) / n;
        }
        ring_.assign(n, z0);
    }

    // Tests the disc of radius r, extending the accepted ring from ring_radius_.
    // Returns the index of the first failing sector, or -1.
    int test(double r, std::vector<cplx>& ends) {
        const int n = config_.rays;
        ends.resize(n);
        for (int k = 0; k < n; ++k) {
            const cplx dir = std::polar(1.0, angles_[k]);
            const auto z = tracer_.follow(segment(center_ + ring_radius_ * dir, center_ + r * dir), ring_[k]);
            if (!z) {
                return k;
            }
            ends[k] = *z;
        }
        for (int k = 0; k < n; ++k) {
            const double a = angles_[k];
            const double b = k + 1 < n ? angles_[k + 1] : angles_[0] + kTwoPi;
            const auto z = tracer_.follow(arc(center_, r, a, b), ends[k]);
            if (!z || !same_point(*z, ends[(k + 1) % n])) {
                return k;
            }
        }
        return -1;
    }

    void accept(double r, std::vector<cplx> ends) {
        ring_radius_ = r;
        ring_ = std::move(ends);
    }

    // Whether the sector loop between angles a < b at radius r closes, with
    // rays continued afresh from the basepoint.
    bool sector_closed(double a, double b, double r) {
        const auto za = tracer_.follow(segment(center_, center_ + std::polar(r, a)), z0_);
        if (!za) {
            return false;
        }
        const auto zb = tracer_.follow(segment(center_, center_ + std::polar(r, b)), z0_);
        if (!zb) {
            return false;
        }
        const auto z = tracer_.follow(arc(center_, r, a, b), *za);
        return z && same_point(*z, *zb);
    }

    [[nodiscard]] double angle(int k) const { return angles_[k]; }
    [[nodiscard]] double ring_radius() const { return ring_radius_; }
    Tracer& tracer() { return tracer_; }

private:
    cplx z0_;
    cplx center_;
    ContinuationConfig config_;
    Tracer tracer_;
    std::vector<double> angles_;
    std::vector<cplx> ring_;
    double ring_radius_ = 0.0;
};

std::optional<cplx> newton_on_derivative(const EntireMap& map, cplx z) {
    for (int it = 0; it < 60; ++it) {
        const auto d = map.derivative(z);
        const auto s = map.second_derivative(z);
        if (!d.finite() || !s.finite() || s.value == cplx{}) {
            return std::nullopt;
        }
        const cplx step = d.value / s.value;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
            return z;
        }
    }
    const auto d = map.derivative(z);
    if (d.finite() && std::abs(d.value) < 1e-12) {
        return z;
    }
    return std::nullopt;
}

Obstruction classify(const EntireMap& map, cplx z0, cplx center, cplx estimate, const ContinuationConfig& config,
                     Tracer& tracer) {
    const double reach = std::abs(estimate - center);
    std::vector<cplx> path{z0};
    std::vector<cplx> images{center};
    cplx z = z0;
    cplx w = center;
    for (int k = 1; k < 60; ++k) {
        const double distance = reach * std::ldexp(1.0, -k);
        if (distance < 8.0 * config.resolution) {
            break;
        }
        const cplx next = estimate + (center - estimate) * std::ldexp(1.0, -k);
        const auto zn = tracer.follow(segment(w, next), z);
        if (!zn) {
            break;
        }
        z = *zn;
        w = next;
        path.push_back(z);
        images.push_back(w);
    }

    if (const auto c = newton_on_derivative(map, z)) {
        const auto fc = map.evaluate(*c);
        const auto dc = map.derivative(*c);
        if (fc.finite() && dc.finite() && std::abs(dc.value) < 1e-8 &&
            std::abs(*c - z) <= 0.25 * std::max(1.0, std::abs(*c)) &&
            std::abs(fc.value - estimate) <= 16.0 * config.resolution) {
            return {fc.value, ObstructionKind::CriticalObstruction, *c};
        }
    }

    const int window = config.divergence_window;
    const auto count = static_cast<int>(path.size());
    if (count > window) {
        bool growing = true;
        for (int k = count - window; k < count; ++k) {
            growing = growing && std::abs(path[k]) > std::abs(path[k - 1]);
        }
        if (growing) {
            cplx s = estimate;
            for (const cplx a : map.singular_values().asymptotic_values) {
                if (std::abs(a - estimate) <= 16.0 * config.resolution) {
                    s = a;
                }
            }
            return {s, ObstructionKind::AsymptoticObstruction, std::nullopt};
        }
    }
    fail(ErrorCode::BudgetExhausted, "obstruction at the disc boundary could not be classified");
}

} // namespace

cplx BranchState::evaluate(cplx w) const {
    require(std::abs(w - center) < radius, ErrorCode::PreconditionViolation,
            "branch evaluated outside its disc");
    Tracer tracer(map_jet(map), 0.0, std::numeric_limits<long long>::max());
    const auto z = tracer.follow(segment(center, w), basepoint);
    if (!z) {
        fail(ErrorCode::NonConvergence, "branch continuation failed inside the disc");
    }
    return *z;
}

BranchState continue_branch(const EntireMap& map, cplx z0, double max_radius, const ContinuationConfig& config) {
    require(max_radius > 0.0, ErrorCode::PreconditionViolation, "maxRadius must be positive");
    require(config.rays >= 4 && config.growth > 1.0 && config.resolution > 0.0, ErrorCode::PreconditionViolation,
            "invalid continuation configuration");
    const auto d = map.derivative(z0);
    const auto v = map.evaluate(z0);
    if (!d.finite() || !v.finite()) {
        fail(ErrorCode::OverflowAtPoint, "basepoint overflows");
    }
    if (std::abs(d.value) <= 1e-10) {
        fail(ErrorCode::CriticalBasepoint, "f'(z0) vanishes");
    }

    BranchState state;
    state.map = map;
    state.basepoint = z0;
    state.center = v.value;

    DiscGrower grower(map, z0, v.value, config);
    std::vector<cplx> ends;
    double r = std::max(config.initial_fraction * max_radius, config.resolution);
    double r_lo = 0.0;
    double r_hi = 0.0;
    int failing = -1;
    while (true) {
        r = std::min(r, max_radius);
        const int bad = grower.test(r, ends);
        if (bad < 0) {
            grower.accept(r, ends);
            r_lo = r;
            if (r >= max_radius) {
                state.radius = max_radius;
                state.steps = grower.tracer().steps();
                return state;
            }
            r *= config.growth;
        } else {
            r_hi = r;
            failing = bad;
            break;
        }
    }
    while (r_hi - r_lo > 0.5 * config.resolution) {
        const double mid = 0.5 * (r_lo + r_hi);
        const int bad = grower.test(mid, ends);
        if (bad < 0) {
            grower.accept(mid, ends);
            r_lo = mid;
        } else {
            r_hi = mid;
            failing = bad;
        }
    }

    // Angular bisection of the failing sector (a failing ray may sit on s,
    // so its neighbours on both sides are included).
    const double step = kTwoPi / config.rays;
    double a = grower.angle(failing) - step;
    double b = grower.angle(failing) + step;
    for (int it = 0; it < 48 && b - a > 1e-14; ++it) {
        const double m = 0.5 * (a + b);
        if (!grower.sector_closed(a, m, r_hi)) {
            b = m;
        } else {
            a = m;
        }
    }
    const cplx estimate = v.value + std::polar(0.5 * (r_lo + r_hi), 0.5 * (a + b));

    state.radius = r_lo;
    state.obstruction = classify(map, z0, v.value, estimate, config, grower.tracer());
    state.steps = grower.tracer().steps();
    return state;
}

AsymptoticCurve trace_asymptotic_curve(const BranchState& state, double target_modulus, long long budget) {
    require(state.obstruction.has_value() && state.obstruction->kind == ObstructionKind::AsymptoticObstruction,
            ErrorCode::PreconditionViolation, "curve tracing needs an asymptotic obstruction");
    require(target_modulus > 0.0, ErrorCode::PreconditionViolation, "target modulus must be positive");
    const EntireMap& map = state.map;
    const cplx s = state.obstruction->s;

    AsymptoticCurve curve;
    curve.target_value = s;
    curve.segment_start = state.center;
    curve.samples.push_back(state.basepoint);
    curve.images.push_back(state.center);

    constexpr double kLogStep = 0.25;
    cplx z = state.basepoint;
    if (map.has_log_chart(s)) {
        // Along the radius, log(f - s) moves left on a horizontal line.
        Tracer tracer(chart_jet(map), 0.0, budget);
        cplx L = map.log_chart(z);
        for (long long k = 1; std::abs(z) <= target_modulus; ++k) {
            require(k <= budget, ErrorCode::BudgetExhausted, "curve did not reach the target modulus");
            const cplx next = L - kLogStep;
            const auto zn = tracer.follow(segment(L, next), z);
            if (!zn) {
                fail(ErrorCode::BudgetExhausted, "curve continuation stalled");
            }
            z = *zn;
            L = next;
            const auto fz = map.evaluate(z);
            if (!fz.finite() || fz.value == s) {
                fail(ErrorCode::BudgetExhausted, "curve image left the representable range");
            }
            curve.samples.push_back(z);
            curve.images.push_back(fz.value);
        }
        return curve;
    }

    Tracer tracer(map_jet(map), 0.0, budget);
    const double q = std::exp(-kLogStep);
    cplx w = state.center;
    for (long long k = 1; std::abs(z) <= target_modulus; ++k) {
        require(k <= budget, ErrorCode::BudgetExhausted, "curve did not reach the target modulus");
        const cplx next = s + (w - s) * q;
        require(next != s, ErrorCode::BudgetExhausted, "curve reached the asymptotic value numerically");
        const auto zn = tracer.follow(segment(w, next), z);
        if (!zn) {
            fail(ErrorCode::BudgetExhausted, "curve continuation stalled");
        }
        z = *zn;
        w = next;
        const auto fz = map.evaluate(z);
        curve.samples.push_back(z);
        curve.images.push_back(fz.finite() ? fz.value : w);
    }
    return curve;
}

bool Tract::contains(cplx z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        return false;
    }
    if (map.kind() != MapKind::LambdaExp && z == cplx{}) {
        return false;
    }
    const cplx L = map.log_chart(z);
    const double dir = std::arg(disc.center - tangency);
    const double phi = L.imag() - dir - kTwoPi * static_cast<double>(sheet);
    if (std::abs(phi) >= 0.5 * std::numbers::pi) {
        return false;
    }
    // w - s = 2 r cos(phi) e^{i phi} traces the boundary circle of the disc
    return L.real() < std::log(2.0 * disc.radius * std::cos(phi));
}

BranchState Tract::branch() const {
    BranchState b;
    b.map = map;
    b.basepoint = branch_seed;
    b.center = disc.center;
    b.radius = disc.radius;
    b.obstruction = Obstruction{tangency, ObstructionKind::AsymptoticObstruction, std::nullopt};
    return b;
}

namespace {

std::optional<cplx> solve_chart(const EntireMap& map, cplx target) {
    cplx z = map.log_chart_seed(target);
    for (int it = 0; it < 60; ++it) {
        if (map.kind() != MapKind::LambdaExp && z == cplx{}) {
            return std::nullopt;
        }
        const cplx step = (map.log_chart(z) - target) / map.log_chart_derivative(z);
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
            break;
        }
    }
    if (std::abs(map.log_chart(z) - target) > 1e-10 * (1.0 + std::abs(target))) {
        return std::nullopt;
    }
    return z;
}

std::vector<cplx> trace_boundary_side(Tracer& tracer, cplx far_point, double log_2r,
                                      double dir_angle, double sign, double max_modulus) {
    std::vector<cplx> side;
    cplx z = far_point;
    cplx L{log_2r, dir_angle};
    // angle phi in (0, pi/2): first geometric in the distance to pi/2, then
    // steps in log|w - s| that grow with its magnitude
    double phi = 0.0;
    for (int j = 1; j < 200000 && std::abs(z) < max_modulus; ++j) {
        const double depth = log_2r - L.real();
        double ell = 0.0;
        if (depth < 8.0) {
            phi = 0.5 * std::numbers::pi * (1.0 - std::exp2(-0.25 * j));
            ell = log_2r + std::log(std::cos(phi));
        } else {
            // cos(phi) loses all digits near pi/2, so step in ell directly
            ell = L.real() - std::max(0.25, 0.05 * std::abs(L.real()));
            phi = std::acos(std::exp(ell - log_2r));
        }
        const cplx next{ell, dir_angle + sign * phi};
        const auto zn = tracer.follow(segment(L, next), z);
        if (!zn) {
            fail(ErrorCode::BudgetExhausted, "tract boundary continuation stalled");
        }
        z = *zn;
        L = next;
        side.push_back(z);
    }
    return side;
}

} // namespace

std::vector<Tract> discs_of_univalence(const EntireMap& map, cplx s, const Disc& U, int count,
                                       const TractConfig& config) {
    require(count >= 1, ErrorCode::PreconditionViolation, "K must be at least 1");
    require(U.radius > 0.0 && U.contains(s), ErrorCode::PreconditionViolation, "U must be a disc around s");
    if (!map.critical_points_over(U).empty() || map.is_critical_value(s)) {
        fail(ErrorCode::UContainsCriticalValues, "U contains critical values of " + map.id());
    }
    if (!map.is_asymptotic_value(s) || !map.has_log_chart(s)) {
        fail(ErrorCode::NotIsolatedSingularValue, "s is not an isolated asymptotic value of " + map.id());
    }

    const double gap = U.radius - std::abs(s - U.center);
    const cplx u = U.center == s ? cplx{1.0, 0.0} : (U.center - s) / std::abs(U.center - s);
    const double r = 0.5 * gap;
    const Disc D{s + r * u, r};
    const double dir = std::arg(u);

    std::vector<Tract> tracts;
    ContinuationConfig check;
    check.initial_fraction = 0.05;
    for (long long j = 0; static_cast<int>(tracts.size()) < count; ++j) {
        const long long sheet = (j % 2 == 1) ? (j + 1) / 2 : -(j / 2);
        require(std::abs(sheet) <= config.max_sheet, ErrorCode::BudgetExhausted,
                "not enough tracts found among the searched sheets");
        const cplx target{std::log(r), dir + kTwoPi * static_cast<double>(sheet)};
        const auto seed = solve_chart(map, target);
        if (!seed) {
            continue;
        }
        // A tract component is one whose branch over D obstructs at s.
        BranchState probe;
        try {
            probe = continue_branch(map, *seed, 1.5 * r, check);
        } catch (const Error&) {
            continue;
        }
        if (!probe.obstruction || probe.obstruction->kind != ObstructionKind::AsymptoticObstruction ||
            std::abs(probe.obstruction->s - s) > 1e-4 * r + 1e-12) {
            continue;
        }

        Tract t;
        t.map = map;
        t.disc = D;
        t.tangency = s;
        t.sheet = sheet;
        t.branch_seed = *seed;
        t.base_radius = std::max(1.0, std::abs(*seed));

        Tracer tracer(chart_jet(map), 0.0, 10'000'000);
        const double log_2r = std::log(2.0 * r);
        const double angle = dir + kTwoPi * static_cast<double>(sheet);
        const auto far = tracer.follow(segment(target, cplx{log_2r, angle}), *seed);
        if (!far) {
            fail(ErrorCode::BudgetExhausted, "tract boundary continuation stalled");
        }
        auto lower = trace_boundary_side(tracer, *far, log_2r, angle, -1.0, config.boundary_modulus);
        const auto upper = trace_boundary_side(tracer, *far, log_2r, angle, 1.0, config.boundary_modulus);
        std::reverse(lower.begin(), lower.end());
        t.boundary = std::move(lower);
        t.boundary.push_back(*far);
        t.boundary.insert(t.boundary.end(), upper.begin(), upper.end());
        tracts.push_back(std::move(t));
    }
    return tracts;
}

double tract_angular_measure(const Tract& tract, double x, int resolution) {
    require(resolution >= 8, ErrorCode::PreconditionViolation, "angular resolution too small");
    if (!(x >= tract.base_radius)) {
        fail(ErrorCode::RadiusTooSmall, "x is below the tract's R0");
    }
    const double h = kTwoPi / resolution;
    const auto inside = [&](double theta) { return tract.contains(std::polar(x, theta)); };
    std::vector<char> member(resolution);
    for (int j = 0; j < resolution; ++j) {
        member[j] = inside(j * h) ? 1 : 0;
    }
    const auto crossing = [&](double a, double b, bool a_in) {
        for (int it = 0; it < 60 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
            const double m = 0.5 * (a + b);
            if (inside(m) == a_in) {
                a = m;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    double measure = 0.0;
    bool any_transition = false;
    for (int j = 0; j < resolution; ++j) {
        const bool a_in = member[j] != 0;
        const bool b_in = member[(j + 1) % resolution] != 0;
        if (a_in == b_in) {
            if (a_in) {
                measure += h;
            }
            continue;
        }
        any_transition = true;
        const double t = crossing(j * h, (j + 1) * h, a_in);
        measure += a_in ? t - j * h : (j + 1) * h - t;
    }
    if (!any_transition) {
        return member[0] != 0 ? kTwoPi : 0.0;
    }
    return measure;
}

std::vector<DecayRow> decay_along_curve(const EntireMap& map, const AsymptoticCurve& curve, double tau) {
    require(tau > 0.0, ErrorCode::PreconditionViolation, "tau must be positive");
    std::vector<DecayRow> rows;
    rows.reserve(curve.samples.size());
    for (const cplx z : curve.samples) {
        const auto d = map.derivative(z);
        if (!d.finite()) {
            continue;
        }
        const double m = std::abs(z);
        rows.push_back({m, (1.0 + std::pow(m, tau)) * std::abs(d.value)});
    }
    return rows;
}

namespace {

double point_segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
        return std::abs(p - a);
    }
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double cross(cplx u, cplx v) {
    return u.real() * v.imag() - u.imag() * v.real();
}

double segment_distance(cplx a0, cplx a1, cplx b0, cplx b1) {
    const double c1 = cross(a1 - a0, b0 - a0);
    const double c2 = cross(a1 - a0, b1 - a0);
    const double c3 = cross(b1 - b0, a0 - b0);
    const double c4 = cross(b1 - b0, a1 - b0);
    if (((c1 > 0 && c2 < 0) || (c1 < 0 && c2 > 0)) && ((c3 > 0 && c4 < 0) || (c3 < 0 && c4 > 0))) {
        return 0.0;
    }
    return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                     point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

} // namespace

double min_polyline_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    const auto seg = [](std::span<const cplx> p, std::size_t i) {
        return std::pair{p[i], p[std::min(i + 1, p.size() - 1)]};
    };
    const std::size_t na = std::max<std::size_t>(1, a.size() - 1);
    const std::size_t nb = std::max<std::size_t>(1, b.size() - 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < na; ++i) {
        const auto [a0, a1] = seg(a, i);
        for (std::size_t j = 0; j < nb; ++j) {
            const auto [b0, b1] = seg(b, j);
            best = std::min(best, segment_distance(a0, a1, b0, b1));
        }
    }
    return best;
}

std::string polyline_csv(std::span<const cplx> points) {
    std::ostringstream os;
    os << "t,re,im\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
        os << k << ',' << fmt_double(points[k].real()) << ',' << fmt_double(points[k].imag()) << '\n';
    }
    return os.str();
}

} // namespace edyn
