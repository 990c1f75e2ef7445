#include "edyn/catalog.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "edyn/error.hpp"

namespace edyn {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Additive constant of f_p: f_p(z) = z + shift + e^{-z}.
cplx f_shift(int p) {
    switch (p) {
    case 1: return {1.0, 0.0};
    case 2: return {-1.0, 0.0};
    default: return {-1.0, kTwoPi};
    }
}

template <class T>
std::complex<T> eval_kernel(MapKind kind, int p, std::complex<T> lambda, std::complex<T> z) {
    using C = std::complex<T>;
    switch (kind) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman:
    case MapKind::ScaledF: {
        // f3 is evaluated literally as f2 + 2 pi i.
        const T one = p == 1 ? T(1) : T(-1);
        C value = z + C(one, 0) + std::exp(-z);
        if (p == 3) {
            value += C(0, 2 * std::numbers::pi_v<T>);
        }
        return kind == MapKind::ScaledF ? lambda * value : value;
    }
    case MapKind::LambdaExp: return lambda * std::exp(z);
    case MapKind::ModelF1: return z * std::exp(z - C(1, 0));
    case MapKind::ModelF2: return z * std::exp(z + C(1, 0));
    }
    return {};
}

template <class T>
std::complex<T> deriv_kernel(MapKind kind, std::complex<T> lambda, std::complex<T> z) {
    using C = std::complex<T>;
    switch (kind) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman: return -expm1c(C(-z));
    case MapKind::ScaledF: return -lambda * expm1c(C(-z));
    case MapKind::LambdaExp: return lambda * std::exp(z);
    case MapKind::ModelF1: return (C(1, 0) + z) * std::exp(z - C(1, 0));
    case MapKind::ModelF2: return (C(1, 0) + z) * std::exp(z + C(1, 0));
    }
    return {};
}

template <class T>
std::complex<T> second_kernel(MapKind kind, std::complex<T> lambda, std::complex<T> z) {
    using C = std::complex<T>;
    switch (kind) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman: return std::exp(-z);
    case MapKind::ScaledF: return lambda * std::exp(-z);
    case MapKind::LambdaExp: return lambda * std::exp(z);
    case MapKind::ModelF1: return (C(2, 0) + z) * std::exp(z - C(1, 0));
    case MapKind::ModelF2: return (C(2, 0) + z) * std::exp(z + C(1, 0));
    }
    return {};
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        fail(ErrorCode::UsageError, "malformed number '" + std::string(text) + "'");
    }
    return value;
}

cplx parse_complex(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        fail(ErrorCode::UsageError, "expected RE,IM but got '" + std::string(text) + "'");
    }
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

std::string format_complex(cplx z) {
    char buffer[64];
    auto* end = std::to_chars(buffer, buffer + sizeof(buffer), z.real()).ptr;
    *end++ = ',';
    end = std::to_chars(end, buffer + sizeof(buffer), z.imag()).ptr;
    return {buffer, end};
}

// Adds a few ulps so rounding in the bound itself cannot undercut max |f|.
double inflate(double bound) {
    return std::isfinite(bound) ? bound * (1.0 + 1e-13) : kInf;
}

} // namespace

EntireMap EntireMap::f1() { return {MapKind::F1Fatou, 1.0, 1}; }
EntireMap EntireMap::f2() { return {MapKind::F2Newton, 1.0, 2}; }
EntireMap EntireMap::f3() { return {MapKind::F3Herman, 1.0, 3}; }
EntireMap EntireMap::lambda_exp(cplx lambda) {
    require(lambda != cplx{}, ErrorCode::PreconditionViolation, "lambda-exp needs lambda != 0");
    return {MapKind::LambdaExp, lambda, 0};
}
EntireMap EntireMap::model_f1() { return {MapKind::ModelF1, 1.0, 0}; }
EntireMap EntireMap::model_f2() { return {MapKind::ModelF2, 1.0, 0}; }

EntireMap EntireMap::scaled(int p, cplx lambda) {
    require(p >= 1 && p <= 3, ErrorCode::PreconditionViolation, "scaled map needs p in {1,2,3}");
    require(lambda != cplx{}, ErrorCode::PreconditionViolation, "scaled map needs lambda != 0");
    return {MapKind::ScaledF, lambda, p};
}

EntireMap EntireMap::parse(std::string_view id) {
    if (id == "f1") return f1();
    if (id == "f2") return f2();
    if (id == "f3") return f3();
    if (id == "model-F1") return model_f1();
    if (id == "model-F2") return model_f2();
    constexpr std::string_view scaled_prefix = "scaled-f";
    constexpr std::string_view exp_prefix = "lambda-exp:";
    if (id.starts_with(exp_prefix)) {
        const cplx lambda = parse_complex(id.substr(exp_prefix.size()));
        if (lambda == cplx{}) {
            fail(ErrorCode::UsageError, "lambda must be nonzero");
        }
        return lambda_exp(lambda);
    }
    if (id.starts_with(scaled_prefix) && id.size() > scaled_prefix.size() + 2 &&
        id[scaled_prefix.size() + 1] == ':') {
        const char digit = id[scaled_prefix.size()];
        if (digit >= '1' && digit <= '3') {
            const cplx lambda = parse_complex(id.substr(scaled_prefix.size() + 2));
            if (lambda == cplx{}) {
                fail(ErrorCode::UsageError, "lambda must be nonzero");
            }
            return scaled(digit - '0', lambda);
        }
    }
    fail(ErrorCode::UsageError, "unknown map identifier '" + std::string(id) + "'");
}

std::string EntireMap::id() const {
    switch (kind_) {
    case MapKind::F1Fatou: return "f1";
    case MapKind::F2Newton: return "f2";
    case MapKind::F3Herman: return "f3";
    case MapKind::ScaledF: return "scaled-f" + std::to_string(p_) + ":" + format_complex(lambda_);
    case MapKind::LambdaExp: return "lambda-exp:" + format_complex(lambda_);
    case MapKind::ModelF1: return "model-F1";
    case MapKind::ModelF2: return "model-F2";
    }
    return {};
}

cplx EntireMap::drift() const {
    return kind_ == MapKind::F3Herman ? kTwoPiI : cplx{};
}

double EntireMap::exponent(cplx z) const {
    switch (kind_) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman:
    case MapKind::ScaledF: return -z.real();
    case MapKind::LambdaExp: return z.real();
    case MapKind::ModelF1: return z.real() - 1.0;
    case MapKind::ModelF2: return z.real() + 1.0;
    }
    return 0.0;
}

OverflowDirection EntireMap::overflow_direction(cplx z) const {
    // Phase of the dominating exponential term.
    double phase = 0.0;
    switch (kind_) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman: phase = -z.imag(); break;
    case MapKind::ScaledF: phase = std::arg(lambda_) - z.imag(); break;
    case MapKind::LambdaExp: phase = std::arg(lambda_) + z.imag(); break;
    case MapKind::ModelF1:
    case MapKind::ModelF2: phase = std::arg(z) + z.imag(); break;
    }
    return std::cos(phase) > 0.0 ? OverflowDirection::PositiveRealDominant : OverflowDirection::Unknown;
}

EvalResult EntireMap::evaluate(cplx z) const {
    if (exponent(z) > kExpOverflowThreshold) {
        return EvalResult::overflow(overflow_direction(z));
    }
    return EvalResult::ok(eval_kernel<double>(kind_, p_, lambda_, z));
}

EvalResult EntireMap::derivative(cplx z) const {
    if (exponent(z) > kExpOverflowThreshold) {
        return EvalResult::overflow(overflow_direction(z));
    }
    return EvalResult::ok(deriv_kernel<double>(kind_, lambda_, z));
}

EvalResult EntireMap::second_derivative(cplx z) const {
    if (exponent(z) > kExpOverflowThreshold) {
        return EvalResult::overflow(overflow_direction(z));
    }
    return EvalResult::ok(second_kernel<double>(kind_, lambda_, z));
}

std::complex<long double> EntireMap::evaluate_extended(std::complex<long double> z) const {
    return eval_kernel<long double>(kind_, p_, std::complex<long double>(lambda_), z);
}

std::complex<long double> EntireMap::derivative_extended(std::complex<long double> z) const {
    return deriv_kernel<long double>(kind_, std::complex<long double>(lambda_), z);
}

double EntireMap::sup_modulus_on_disc(cplx center, double radius) const {
    const double outer = std::abs(center) + radius;
    switch (kind_) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman:
    case MapKind::ScaledF: {
        const double e_term = std::exp(radius - center.real());
        const double base = outer + std::abs(f_shift(p_)) + e_term;
        return inflate(std::abs(lambda_) * base);
    }
    case MapKind::LambdaExp: return inflate(std::abs(lambda_) * std::exp(center.real() + radius));
    // max |w e^{w-1}| on |w - c| <= r is at most (|c| + r) e^{Re c + r - 1}, attained for c = 0 at w = r.
    case MapKind::ModelF1: return inflate(outer * std::exp(center.real() + radius - 1.0));
    case MapKind::ModelF2: return inflate(outer * std::exp(center.real() + radius + 1.0));
    }
    return kInf;
}

SingularData EntireMap::singular_values() const {
    SingularData data;
    data.sup_modulus_on_disc = [self = *this](cplx c, double r) { return self.sup_modulus_on_disc(c, r); };
    switch (kind_) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman:
    case MapKind::ScaledF: {
        // f_p'(z) = 1 - e^{-z} vanishes exactly on 2 pi i Z; no finite asymptotic values.
        data.bounded_singular_set = false;
        data.critical_family = CriticalFamily{};
        for (long long n = -SingularData::kCriticalWindow; n <= SingularData::kCriticalWindow; ++n) {
            data.known_singular_values.push_back(evaluate(data.critical_family->point(n)).value);
        }
        break;
    }
    case MapKind::LambdaExp:
        data.bounded_singular_set = true;
        data.asymptotic_values = {cplx{}};
        data.known_singular_values = {cplx{}};
        break;
    case MapKind::ModelF1:
    case MapKind::ModelF2:
        data.bounded_singular_set = true;
        data.asymptotic_values = {cplx{}};
        data.critical_points = {cplx{-1.0, 0.0}};
        data.known_singular_values = {cplx{}, evaluate(cplx{-1.0, 0.0}).value};
        break;
    }
    return data;
}

bool EntireMap::is_critical_value(cplx s, double tol) const {
    switch (kind_) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman:
    case MapKind::ScaledF: {
        // f(2 pi i n) = lambda (2 pi i n + shift + 1)
        const cplx base = s / lambda_ - f_shift(p_) - 1.0;
        const long long n0 = lattice_index(base);
        for (long long n = n0 - 1; n <= n0 + 1; ++n) {
            const auto v = evaluate(lattice_point(n));
            if (v.finite() && std::abs(v.value - s) <= tol * std::max(1.0, std::abs(s))) {
                return true;
            }
        }
        return false;
    }
    case MapKind::LambdaExp: return false;
    case MapKind::ModelF1:
    case MapKind::ModelF2: return std::abs(evaluate(cplx{-1.0, 0.0}).value - s) <= tol;
    }
    return false;
}

bool EntireMap::is_asymptotic_value(cplx s, double tol) const {
    switch (kind_) {
    case MapKind::LambdaExp:
    case MapKind::ModelF1:
    case MapKind::ModelF2: return std::abs(s) <= tol;
    default: return false;
    }
}

bool EntireMap::is_known_singular_value(cplx s, double tol) const {
    return is_critical_value(s, tol) || is_asymptotic_value(s, tol);
}

std::vector<cplx> EntireMap::critical_points_over(const Disc& disc) const {
    std::vector<cplx> out;
    switch (kind_) {
    case MapKind::F1Fatou:
    case MapKind::F2Newton:
    case MapKind::F3Herman:
    case MapKind::ScaledF: {
        const cplx base = disc.center / lambda_ - f_shift(p_) - 1.0;
        const double spread = disc.radius / std::abs(lambda_) / kTwoPi;
        const long long n0 = lattice_index(base);
        const auto reach = static_cast<long long>(std::ceil(spread)) + 1;
        for (long long n = n0 - reach; n <= n0 + reach; ++n) {
            const cplx c = lattice_point(n);
            const auto v = evaluate(c);
            if (v.finite() && disc.contains(v.value)) {
                out.push_back(c);
            }
        }
        break;
    }
    case MapKind::LambdaExp: break;
    case MapKind::ModelF1:
    case MapKind::ModelF2:
        if (disc.contains(evaluate(cplx{-1.0, 0.0}).value)) {
            out.push_back(cplx{-1.0, 0.0});
        }
        break;
    }
    return out;
}

bool EntireMap::has_log_chart(cplx s) const {
    return is_asymptotic_value(s, 0.0);
}

cplx EntireMap::log_chart(cplx z) const {
    switch (kind_) {
    case MapKind::LambdaExp: return std::log(lambda_) + z;
    case MapKind::ModelF1: return std::log(z) + z - 1.0;
    case MapKind::ModelF2: return std::log(z) + z + 1.0;
    default: fail(ErrorCode::PreconditionViolation, "map " + id() + " has no asymptotic value chart");
    }
}

cplx EntireMap::log_chart_derivative(cplx z) const {
    switch (kind_) {
    case MapKind::LambdaExp: return 1.0;
    case MapKind::ModelF1:
    case MapKind::ModelF2: return 1.0 / z + 1.0;
    default: fail(ErrorCode::PreconditionViolation, "map " + id() + " has no asymptotic value chart");
    }
}

cplx EntireMap::log_chart_seed(cplx target) const {
    switch (kind_) {
    case MapKind::LambdaExp: return target - std::log(lambda_);
    case MapKind::ModelF1:
    case MapKind::ModelF2: {
        // log w + w = u, solved by w <- u - log w (contracting for large |u|).
        const cplx u = target + (kind_ == MapKind::ModelF1 ? 1.0 : -1.0);
        cplx w = u;
        for (int i = 0; i < 12; ++i) {
            if (w == cplx{}) {
                break;
            }
            w = u - std::log(w);
        }
        return w;
    }
    default: fail(ErrorCode::PreconditionViolation, "map " + id() + " has no asymptotic value chart");
    }
}

double semiconjugacy_residual(const EntireMap& map, const EntireMap& model, cplx z) {
    const bool f1_pair = map.kind() == MapKind::F1Fatou && model.kind() == MapKind::ModelF1;
    const bool f2_pair = (map.kind() == MapKind::F2Newton || map.kind() == MapKind::F3Herman) &&
                         model.kind() == MapKind::ModelF2;
    require(f1_pair || f2_pair, ErrorCode::PreconditionViolation,
            "no semiconjugacy between " + map.id() + " and " + model.id());

    using LC = std::complex<long double>;
    if (map.exponent(z) > kExpOverflowThreshold) {
        fail(ErrorCode::OverflowInChain, "f overflows");
    }
    const LC zl(z);
    const LC fz = map.evaluate_extended(zl);
    if (-fz.real() > kExpOverflowThreshold) {
        fail(ErrorCode::OverflowInChain, "e^{-f(z)} overflows");
    }
    const LC w = -std::exp(-zl);
    if (model.exponent(cplx(static_cast<double>(w.real()), static_cast<double>(w.imag()))) >
        kExpOverflowThreshold) {
        fail(ErrorCode::OverflowInChain, "model map overflows");
    }
    const LC lhs = -std::exp(-fz);
    const LC rhs = model.evaluate_extended(w);
    return static_cast<double>(std::abs(lhs - rhs));
}

} // namespace edyn
