#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edyn/complex_math.hpp"

namespace edyn {

/// Real part of an exponential subterm above which evaluation reports
/// ExpOverflow instead of a value (binary64 overflows near 709.78).
inline constexpr double kExpOverflowThreshold = 700.0;

enum class MapKind {
    F1Fatou,   // z + 1 + e^{-z}
    F2Newton,  // z - 1 + e^{-z}
    F3Herman,  // z - 1 + 2 pi i + e^{-z}
    ScaledF,   // lambda * f_p
    LambdaExp, // lambda * e^z
    ModelF1,   // w e^w / e
    ModelF2,   // e w e^w
};

enum class EvalStatus { Finite, ExpOverflow };
enum class OverflowDirection { None, PositiveRealDominant, Unknown };

struct EvalResult {
    EvalStatus status = EvalStatus::Finite;
    cplx value{};
    OverflowDirection direction = OverflowDirection::None;

    [[nodiscard]] bool finite() const { return status == EvalStatus::Finite; }

    static EvalResult ok(cplx v) { return {EvalStatus::Finite, v, OverflowDirection::None}; }
    static EvalResult overflow(OverflowDirection d) { return {EvalStatus::ExpOverflow, {}, d}; }
};

/// Critical points z_n = offset + n * step, n in Z.
struct CriticalFamily {
    cplx offset{};
    cplx step{0.0, kTwoPi};

    [[nodiscard]] cplx point(long long n) const {
        return offset + step * static_cast<double>(n);
    }
};

struct SingularData {
    bool bounded_singular_set = false;
    /// Finite sample of S(f). For unbounded families this is the window of
    /// critical values with |n| <= kCriticalWindow.
    std::vector<cplx> known_singular_values;
    std::optional<CriticalFamily> critical_family;
    /// Critical points outside any family (e.g. -1 for the model maps).
    std::vector<cplx> critical_points;
    std::vector<cplx> asymptotic_values;
    /// Certified upper bound of |f| on the closed disc B(center, radius).
    std::function<double(cplx, double)> sup_modulus_on_disc;

    static constexpr long long kCriticalWindow = 8;
};

class EntireMap {
public:
    static EntireMap f1();
    static EntireMap f2();
    static EntireMap f3();
    static EntireMap scaled(int p, cplx lambda);
    static EntireMap lambda_exp(cplx lambda);
    static EntireMap model_f1();
    static EntireMap model_f2();

    /// Parses "f1", "f2", "f3", "scaled-fP:RE,IM", "lambda-exp:RE,IM",
    /// "model-F1", "model-F2". Throws Error(UsageError) otherwise.
    static EntireMap parse(std::string_view id);

    [[nodiscard]] std::string id() const;
    [[nodiscard]] MapKind kind() const { return kind_; }
    [[nodiscard]] cplx lambda() const { return lambda_; }
    /// p for the f_p family members (including ScaledF), 0 otherwise.
    [[nodiscard]] int base_index() const { return p_; }
    [[nodiscard]] cplx drift() const;

    [[nodiscard]] EvalResult evaluate(cplx z) const;
    [[nodiscard]] EvalResult derivative(cplx z) const;
    [[nodiscard]] EvalResult second_derivative(cplx z) const;

    /// Real exponent of the exponential subterm at z.
    [[nodiscard]] double exponent(cplx z) const;

    // Extended-precision kernels (no overflow guard; callers check exponent()).
    [[nodiscard]] std::complex<long double> evaluate_extended(std::complex<long double> z) const;
    [[nodiscard]] std::complex<long double> derivative_extended(std::complex<long double> z) const;

    [[nodiscard]] SingularData singular_values() const;
    [[nodiscard]] double sup_modulus_on_disc(cplx center, double radius) const;

    /// True when s is (to tol) a critical value of the map, including any
    /// member of the critical family.
    [[nodiscard]] bool is_critical_value(cplx s, double tol = 1e-9) const;
    [[nodiscard]] bool is_asymptotic_value(cplx s, double tol = 1e-9) const;
    [[nodiscard]] bool is_known_singular_value(cplx s, double tol = 1e-9) const;
    /// Critical points whose critical value lies in the open disc.
    [[nodiscard]] std::vector<cplx> critical_points_over(const Disc& disc) const;

    /// Chart log(f(z) - s) for an asymptotic value s, written so that it
    /// stays finite where f(z) - s underflows. Branch is continuous on the
    /// tracts over s.
    [[nodiscard]] bool has_log_chart(cplx s) const;
    [[nodiscard]] cplx log_chart(cplx z) const;
    [[nodiscard]] cplx log_chart_derivative(cplx z) const;
    /// Starting guess for solving log_chart(z) = target.
    [[nodiscard]] cplx log_chart_seed(cplx target) const;

private:
    EntireMap(MapKind kind, cplx lambda, int p) : kind_(kind), lambda_(lambda), p_(p) {}

    [[nodiscard]] OverflowDirection overflow_direction(cplx z) const;

    MapKind kind_;
    cplx lambda_{1.0, 0.0};
    int p_ = 0;
};

/// |-e^{-f(z)} - F(-e^{-z})| for the pairs (f1, F1), (f2, F2), (f3, F2).
/// Throws OverflowInChain when a subterm leaves the representable range and
/// PreconditionViolation for any other pair.
double semiconjugacy_residual(const EntireMap& map, const EntireMap& model, cplx z);

} // namespace edyn
