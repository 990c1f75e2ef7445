#include "edyn/instability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include <json.hpp>

#include "edyn/error.hpp"

namespace edyn {
namespace {

using cld = std::complex<long double>;

constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

struct Cell {
    double distance;
    long long order;
    cplx center;
    double half;

    bool operator>(const Cell& other) const {
        if (distance != other.distance) {
            return distance > other.distance;
        }
        return order > other.order;
    }
};

double distance_to_square(cplx point, cplx center, double half) {
    const double dx = std::max(0.0, std::abs(point.real() - center.real()) - half);
    const double dy = std::max(0.0, std::abs(point.imag() - center.imag()) - half);
    return std::hypot(dx, dy);
}

ContourFn square(cplx center, double half) {
    return [center, half](double t) {
        const double s = 4.0 * t;
        const int side = std::min(3, static_cast<int>(s));
        const double u = 2.0 * (s - side) - 1.0;
        cplx offset;
        switch (side) {
        case 0: offset = {u, -1.0}; break;
        case 1: offset = {1.0, u}; break;
        case 2: offset = {-u, 1.0}; break;
        default: offset = {-1.0, -u}; break;
        }
        return center + half * offset;
    };
}

// The phase of e^{-lambda z_n} turns at rate |z_n| per unit of lambda; sample
// densely enough that each initial step turns by about pi/4.
int contour_steps(int min_steps, long long n, double perimeter) {
    const double needed = 8.0 * static_cast<double>(n) * perimeter;
    return static_cast<int>(std::min(1e6, std::max<double>(min_steps, std::ceil(needed))));
}

cld phi_extended(cplx lambda) {
    const auto f1 = EntireMap::f1();
    cld z = instability_fixed_point(lambda);
    const cld l = lambda;
    for (int it = 0; it < 3; ++it) {
        const cld g = l * f1.evaluate_extended(z) - z;
        const cld d = l * f1.derivative_extended(z) - 1.0L;
        z -= g / d;
    }
    return z;
}

std::optional<cld> g_extended(long long n, cld lambda) {
    const auto f1 = EntireMap::f1();
    const cld zn{0.0L, kTwoPiL * static_cast<long double>(n)};
    const cld w1 = lambda * f1.evaluate_extended(zn);
    if (f1.exponent(cplx(static_cast<double>(w1.real()), static_cast<double>(w1.imag()))) > kExpOverflowThreshold) {
        return std::nullopt;
    }
    const cld w2 = lambda * f1.evaluate_extended(w1);
    const cplx l(static_cast<double>(lambda.real()), static_cast<double>(lambda.imag()));
    return w2 - phi_extended(l);
}

std::optional<cld> newton_fd(long long n, cld lambda) {
    for (int it = 0; it < 60; ++it) {
        const long double h = 1e-7L * (1.0L + std::abs(lambda));
        const auto g0 = g_extended(n, lambda);
        const auto gp = g_extended(n, lambda + h);
        const auto gm = g_extended(n, lambda - h);
        if (!g0 || !gp || !gm) {
            return std::nullopt;
        }
        const cld slope = (*gp - *gm) / (2.0L * h);
        if (slope == cld{}) {
            return std::nullopt;
        }
        const cld step = *g0 / slope;
        lambda -= step;
        if (std::abs(step) <= 1e-17L * std::abs(lambda)) {
            return lambda;
        }
    }
    return std::nullopt;
}

} // namespace

FixedPointPath continue_fixed_point(int p, cplx start_fp, const std::vector<cplx>& path) {
    require(!path.empty() && std::abs(path.front() - cplx{1.0, 0.0}) < 1e-15, ErrorCode::PreconditionViolation,
            "parameter path must start at lambda = 1");
    const auto base = EntireMap::scaled(p, {1.0, 0.0});
    const auto f0 = base.evaluate(start_fp);
    const auto m0 = base.derivative(start_fp);
    require(f0.finite() && m0.finite() && std::abs(f0.value - start_fp) < 1e-10, ErrorCode::PreconditionViolation,
            "start point is not a fixed point of f_p");
    require(std::abs(m0.value - 1.0) > 1e-3, ErrorCode::PreconditionViolation, "multiplier too close to 1");

    FixedPointPath out;
    out.p = p;
    out.samples.push_back({path.front(), start_fp, m0.value});
    for (std::size_t i = 1; i < path.size(); ++i) {
        const FixedPointSample& prev = out.samples.back();
        const cplx lambda = path[i];
        const auto fp = base.evaluate(prev.phi);
        const auto dp = base.derivative(prev.phi);
        if (!fp.finite() || !dp.finite()) {
            fail(ErrorCode::ContinuationBreakdown, "fixed point left the representable range");
        }
        // implicit differentiation of lambda f_p(phi) = phi
        const cplx tangent = fp.value / (1.0 - prev.lambda * dp.value);
        const cplx predicted = prev.phi + tangent * (lambda - prev.lambda);
        const auto map = EntireMap::scaled(p, lambda);
        cplx z = predicted;
        bool converged = false;
        for (int it = 0; it < 40; ++it) {
            const auto f = map.evaluate(z);
            const auto d = map.derivative(z);
            if (!f.finite() || !d.finite() || d.value == cplx{1.0, 0.0}) {
                break;
            }
            const cplx step = (f.value - z) / (d.value - 1.0);
            z -= step;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                break;
            }
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            const auto f = map.evaluate(z);
            converged = f.finite() && std::abs(f.value - z) < 1e-13 * (1.0 + std::abs(z));
        }
        if (!converged) {
            fail(ErrorCode::ContinuationBreakdown, "corrector did not converge");
        }
        if (std::abs(z - predicted) > 0.1 * std::abs(predicted - prev.phi) + 1e-9 * (1.0 + std::abs(prev.phi))) {
            fail(ErrorCode::ContinuationBreakdown, "corrector jumped away from the predicted fixed point");
        }
        const auto f = map.evaluate(z);
        const auto m = map.derivative(z);
        if (!f.finite() || !m.finite() || std::abs(f.value - z) >= 1e-11) {
            fail(ErrorCode::ContinuationBreakdown, "fixed point residual too large");
        }
        if (std::abs(m.value - 1.0) < 1e-3) {
            fail(ErrorCode::ContinuationBreakdown, "multiplier entered B(1, 1e-3)");
        }
        out.samples.push_back({lambda, z, m.value});
    }
    return out;
}

cplx instability_fixed_point(cplx lambda) {
    constexpr int kSteps = 8;
    std::vector<cplx> path;
    for (int k = 0; k <= kSteps; ++k) {
        path.push_back(1.0 + (lambda - 1.0) * (static_cast<double>(k) / kSteps));
    }
    return continue_fixed_point(1, {0.0, std::numbers::pi}, path).samples.back().phi;
}

std::optional<std::complex<long double>> instability_function(long long n, cplx lambda) {
    return g_extended(n, cld(lambda));
}

std::string InstabilityResult::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["n"] = n;
    j["delta"] = delta;
    j["lambda0_re"] = lambda0.real();
    j["lambda0_im"] = lambda0.imag();
    j["residual"] = residual;
    j["winding"] = winding;
    return j.dump(2) + "\n";
}

InstabilityResult find_instability_parameter(int p, long long n, double delta, const InstabilityConfig& config) {
    require(p == 1, ErrorCode::PreconditionViolation, "the instability search continues the fixed point i pi of f1");
    require(delta > 0.0 && delta < 0.1, ErrorCode::PreconditionViolation, "delta must lie in (0, 0.1)");
    require(n >= 1, ErrorCode::PreconditionViolation, "n must be positive");

    const ComplexFn g = [n](cplx lambda) -> std::optional<cplx> {
        const auto v = g_extended(n, cld(lambda));
        if (!v) {
            return std::nullopt;
        }
        return cplx(static_cast<double>(v->real()), static_cast<double>(v->imag()));
    };
    WindingOptions options;
    options.workers = config.workers;

    const cplx one{1.0, 0.0};
    double radius = delta;
    WindingResult outer;
    for (int attempt = 0;; ++attempt) {
        options.min_steps = contour_steps(config.min_steps, n, kTwoPi * radius);
        try {
            outer = winding_number(g, one, radius, options);
            break;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OverflowInChain || attempt >= config.max_shrinks) {
                throw;
            }
            radius *= 0.8;
        }
    }
    if (outer.winding_number <= 0) {
        fail(ErrorCode::NoRootInDisc, "no root of the instability function in B(1, delta)");
    }

    // best-first quadtree: cells ordered by their distance to lambda = 1
    std::priority_queue<Cell, std::vector<Cell>, std::greater<>> queue;
    long long order = 0;
    queue.push({0.0, order++, one, radius});
    std::optional<cld> root;
    while (!queue.empty() && !root) {
        const Cell cell = queue.top();
        queue.pop();
        options.min_steps = contour_steps(config.min_steps, n, 8.0 * cell.half);
        WindingResult w;
        try {
            w = winding_along(g, square(cell.center, cell.half), options);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OverflowInChain) {
                continue;
            }
            throw;
        }
        if (w.winding_number <= 0) {
            continue;
        }
        if (2.0 * cell.half > config.cell_size) {
            const double h = 0.5 * cell.half;
            for (const cplx offset : {cplx{-h, -h}, cplx{h, -h}, cplx{-h, h}, cplx{h, h}}) {
                const cplx c = cell.center + offset;
                queue.push({distance_to_square(one, c, h), order++, c, h});
            }
            continue;
        }
        const cplx seed = w.winding_number == 1 ? w.zero_sum : cell.center;
        if (const auto r = newton_fd(n, cld(seed))) {
            const cplx rc(static_cast<double>(r->real()), static_cast<double>(r->imag()));
            if (std::abs(rc - cell.center) <= 4.0 * cell.half + 1e-12) {
                root = r;
            }
        }
    }
    if (!root) {
        fail(ErrorCode::NonConvergence, "root refinement did not converge");
    }

    InstabilityResult result;
    result.p = p;
    result.n = n;
    result.delta = delta;
    result.contour_radius = radius;
    result.lambda0 = cplx(static_cast<double>(root->real()), static_cast<double>(root->imag()));
    result.winding = outer.winding_number;
    const auto residual = g_extended(n, cld(result.lambda0));
    if (!residual) {
        fail(ErrorCode::OverflowInChain, "residual evaluation overflows");
    }
    result.residual = static_cast<double>(std::abs(*residual));
    result.fixed_point = instability_fixed_point(result.lambda0);
    result.multiplier = EntireMap::scaled(1, result.lambda0).derivative(result.fixed_point).value;
    result.fixed_point_class = classify_multiplier(result.multiplier);
    return result;
}

ZerosResult zeros_of_f1(double im_lo, double im_hi, int per_strip) {
    require(im_lo >= kTwoPi && im_hi > im_lo, ErrorCode::PreconditionViolation,
            "imaginary range must lie in (2 pi, infinity)");
    require(per_strip >= 1, ErrorCode::PreconditionViolation, "need at least one seed per strip");
    const auto f1 = EntireMap::f1();
    ZerosResult out;
    const auto count = static_cast<long long>(std::ceil((im_hi - im_lo) / kTwoPi * per_strip));
    for (long long k = 0; k < count; ++k) {
        const double y = im_lo + (im_hi - im_lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
        cplx z{-std::log(y), y};
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const auto f = f1.evaluate(z);
            const auto d = f1.derivative(z);
            if (!f.finite() || !d.finite() || d.value == cplx{}) {
                break;
            }
            const cplx step = f.value / d.value;
            z -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        const auto f = f1.evaluate(z);
        if (!f.finite() || std::abs(f.value) >= 1e-10) {
            out.failed_seeds.emplace_back(-std::log(y), y);
            continue;
        }
        if (!converged && std::abs(f.value) >= 1e-12) {
            out.failed_seeds.emplace_back(-std::log(y), y);
            continue;
        }
        if (z.imag() <= im_lo || z.imag() >= im_hi) {
            continue;
        }
        const bool duplicate = std::any_of(out.roots.begin(), out.roots.end(),
                                           [z](cplx r) { return std::abs(r - z) < 1e-8; });
        if (!duplicate) {
            out.roots.push_back(z);
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    return out;
}

} // namespace edyn
