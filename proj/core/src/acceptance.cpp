#include "edyn/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "edyn/catalog.hpp"
#include "edyn/dynamics.hpp"
#include "edyn/error.hpp"
#include "edyn/format.hpp"
#include "edyn/instability.hpp"
#include "edyn/inverse_branch.hpp"
#include "edyn/raster.hpp"
#include "edyn/scans.hpp"

namespace edyn {
namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            detail << "FAILED[" << what << "] ";
        }
    }
    void note(const std::string& key, double value) { detail << key << '=' << fmt_double(value) << ' '; }
};

using Body = std::function<void(Outcome&, const AcceptanceOptions&)>;

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    Body body;
};

constexpr double kPi = std::numbers::pi;

void fixed_point_identities(Outcome& out, const AcceptanceOptions&) {
    const auto f2 = EntireMap::f2();
    double worst = 0.0;
    for (long long n = -5; n <= 5; ++n) {
        const cplx z = lattice_point(n);
        worst = std::max(worst, std::abs(f2.derivative(z).value));
        worst = std::max(worst, std::abs(f2.evaluate(z).value - z));
    }
    out.note("f2_worst", worst);
    out.check(worst <= 1e-10, "f2 identities");

    const auto f1 = EntireMap::f1();
    const cplx ipi{0.0, kPi};
    const auto search = find_fixed_points(f1, {ipi + cplx{1e-3, 1e-3}});
    out.check(search.records.size() == 1, "one fixed point near i pi");
    if (!search.records.empty()) {
        const auto& r = search.records.front();
        out.note("f1_location_error", std::abs(r.location - ipi));
        out.note("f1_multiplier_error", std::abs(r.multiplier - 2.0));
        out.check(std::abs(r.location - ipi) <= 1e-10, "f1(i pi) = i pi");
        out.check(std::abs(r.multiplier - 2.0) <= 1e-10, "multiplier 2");
        out.check(r.fixed_class == FixedPointClass::Repelling, "Repelling");
    }
    out.check(std::abs(f1.evaluate(ipi).value - ipi) <= 1e-10, "direct f1(i pi)");
}

void semiconjugacy(Outcome& out, const AcceptanceOptions&) {
    const std::pair<EntireMap, EntireMap> pairs[] = {{EntireMap::f1(), EntireMap::model_f1()},
                                                     {EntireMap::f2(), EntireMap::model_f2()}};
    for (const auto& [map, model] : pairs) {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> coord(-20.0, 20.0);
        int valid = 0;
        int good = 0;
        for (int i = 0; i < 10000; ++i) {
            const cplx z{coord(rng), coord(rng)};
            try {
                const double r = semiconjugacy_residual(map, model, z);
                ++valid;
                good += r < 1e-10 ? 1 : 0;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::OverflowInChain) {
                    throw;
                }
            }
        }
        const double rate = valid == 0 ? 0.0 : static_cast<double>(good) / valid;
        out.note(map.id() + "_pass_rate", rate);
        out.note(map.id() + "_valid", valid);
        out.check(rate >= 0.95, map.id() + " rate >= 0.95");
    }
}

void eta_dichotomy(Outcome& out, const AcceptanceOptions& options) {
    SamplerConfig sampler;
    sampler.workers = options.workers;
    const std::vector<double> thresholds{1e2, 1e4, 1e8};
    const double lambda = 0.25;
    const auto exp_report = eta_scan(EntireMap::lambda_exp(lambda), thresholds, sampler);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double expected = std::log(thresholds[i] / lambda);
        out.note("exp_R" + fmt_double(thresholds[i]), exp_report.infima[i]);
        out.check(std::abs(exp_report.infima[i] - expected) <= 0.1 * expected, "within 10% of log(R/lambda)");
        out.check(i == 0 || exp_report.infima[i] > exp_report.infima[i - 1], "strictly increasing");
    }
    const auto f1_report = eta_scan(EntireMap::f1(), thresholds, sampler);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        out.note("f1_R" + fmt_double(thresholds[i]), f1_report.infima[i]);
        out.check(f1_report.infima[i] <= 1e-8, "f1 witness <= 1e-8");
    }
}

void spherical(Outcome& out, const AcceptanceOptions& options) {
    SamplerConfig sampler;
    sampler.workers = options.workers;
    const auto report = spherical_expansion_scan(EntireMap::lambda_exp(1.0), 1e6, sampler);
    out.note("infimum", report.infima[0]);
    out.check(report.infima[0] < 1e-6, "witness < 1e-6");
}

void poly_decay(Outcome& out, const AcceptanceOptions& options) {
    SamplerConfig sampler;
    sampler.workers = options.workers;
    const auto report = poly_decay_scan(EntireMap::model_f1(), 0.0, Disc{0.0, 0.1}, 4.0, sampler);
    out.note("infimum", report.infima[0]);
    out.check(report.curve_infimum.has_value(), "curve samples present");
    if (report.curve_infimum) {
        out.note("curve_infimum", *report.curve_infimum);
        out.check(*report.curve_infimum < 1e-6, "curve witness < 1e-6");
    }
}

void certification(Outcome& out, const AcceptanceOptions&) {
    const auto m1 = certify_hyperbolic(EntireMap::model_f1(), {0.5});
    out.note("modelF1_sup", m1.sup_bound);
    out.check(m1.status == CertificateStatus::Certified, "model-F1 Certified");
    out.check(m1.sup_bound >= 0.303 && m1.sup_bound <= 0.304, "model-F1 supBound");
    const auto le = certify_hyperbolic(EntireMap::lambda_exp(0.25), {1.0});
    out.note("lambdaExp_sup", le.sup_bound);
    out.check(le.status == CertificateStatus::Certified, "lambda-exp Certified");
    out.check(le.sup_bound >= 0.679 && le.sup_bound <= 0.680, "lambda-exp supBound");
    const auto f1 = certify_hyperbolic(EntireMap::f1(), {0.5, 1.0, 10.0});
    out.check(f1.status == CertificateStatus::FailedUnboundedS, "f1 FailedUnboundedS");
}

void inverse_branch(Outcome& out, const AcceptanceOptions&) {
    const auto exp_state = continue_branch(EntireMap::lambda_exp(1.0), 0.0, 10.0);
    out.note("exp_radius", exp_state.radius);
    out.check(std::abs(exp_state.radius - 1.0) <= 1e-4, "exp radius");
    out.check(exp_state.obstruction && exp_state.obstruction->kind == ObstructionKind::AsymptoticObstruction &&
                  std::abs(exp_state.obstruction->s) <= 1e-6,
              "exp asymptotic at 0");

    const auto m_state = continue_branch(EntireMap::model_f1(), 1.0, 10.0);
    out.note("modelF1_radius", m_state.radius);
    out.check(std::abs(m_state.radius - 1.1353) <= 1e-3, "model-F1 radius");
    const bool critical =
        m_state.obstruction && m_state.obstruction->kind == ObstructionKind::CriticalObstruction;
    out.check(critical, "model-F1 critical obstruction");
    if (critical) {
        out.note("modelF1_s_error", std::abs(m_state.obstruction->s + std::exp(-2.0)));
        out.note("modelF1_c_error", std::abs(*m_state.obstruction->critical_point + 1.0));
        out.check(std::abs(m_state.obstruction->s + std::exp(-2.0)) <= 1e-6, "s = -e^-2");
        out.check(std::abs(*m_state.obstruction->critical_point + 1.0) <= 1e-6, "c = -1");
    }
}

void tract_geometry(Outcome& out, const AcceptanceOptions&) {
    constexpr int kTracts = 8;
    const auto tracts = discs_of_univalence(EntireMap::lambda_exp(1.0), 0.0, Disc{0.0, 0.1}, kTracts);
    out.check(tracts.size() == kTracts, "8 tracts");
    for (const double x : {1e2, 1e3}) {
        double sum = 0.0;
        double inverse_sum = 0.0;
        for (const auto& t : tracts) {
            const double theta = tract_angular_measure(t, x);
            sum += theta;
            inverse_sum += theta > 0.0 ? 1.0 / theta : INFINITY;
        }
        out.note("sum_theta_x" + fmt_double(x), sum);
        out.note("sum_inv_theta_x" + fmt_double(x), inverse_sum);
        out.check(sum <= kTwoPi, "sum theta <= 2 pi");
        out.check(inverse_sum >= kTracts * kTracts / kTwoPi, "sum 1/theta >= K^2 / 2 pi");
    }
    double min_distance = INFINITY;
    for (std::size_t i = 0; i < tracts.size(); ++i) {
        for (std::size_t j = i + 1; j < tracts.size(); ++j) {
            min_distance = std::min(min_distance, min_polyline_distance(tracts[i].boundary, tracts[j].boundary));
        }
    }
    out.note("min_boundary_distance", min_distance);
    out.check(min_distance > 0.0, "pairwise boundary distance > 0");
}

void instability(Outcome& out, const AcceptanceOptions& options) {
    InstabilityConfig config;
    config.workers = options.workers;
    const auto r = find_instability_parameter(1, 1000, 0.01, config);
    out.note("lambda0_re", r.lambda0.real());
    out.note("lambda0_im", r.lambda0.imag());
    out.note("residual", r.residual);
    out.note("winding", r.winding);
    out.check(r.winding >= 1, "winding >= 1");
    out.check(r.residual < 1e-8, "residual < 1e-8");
    out.check(std::abs(r.lambda0 - cplx{1.00025, 0.00171}) < 5e-4, "lambda0 near the published value");
    out.check(r.fixed_point_class == FixedPointClass::Repelling, "phi(lambda0) Repelling");
}

void julia_mask_agreement(Outcome& out, const AcceptanceOptions&) {
    RasterConfig f2_config;
    f2_config.map = EntireMap::f2();
    f2_config.classifier = Classifier::FixedPointBasins;
    RasterConfig f3_config = f2_config;
    f3_config.map = EntireMap::f3();
    f3_config.classifier = Classifier::DriftCompensatedBasins;

    f2_config.workers = 8;
    f3_config.workers = 8;
    const auto f2_parallel = render_raster(f2_config);
    const auto f3_parallel = render_raster(f3_config);
    f2_config.workers = 1;
    f3_config.workers = 1;
    const auto f2_serial = render_raster(f2_config);
    const auto f3_serial = render_raster(f3_config);
    out.check(f2_parallel.pixels == f2_serial.pixels, "f2 identical across workers");
    out.check(f3_parallel.pixels == f3_serial.pixels, "f3 identical across workers");

    std::size_t agree = 0;
    for (std::size_t i = 0; i < f2_serial.pixels.size(); ++i) {
        agree += (f2_serial.pixels[i] == 0) == (f3_serial.pixels[i] == 0) ? 1 : 0;
    }
    const double fraction = static_cast<double>(agree) / static_cast<double>(f2_serial.pixels.size());
    out.note("mask_agreement", fraction);
    out.check(fraction >= 0.99, "class-0 masks agree on >= 99%");
}

void baker_wandering(Outcome& out, const AcceptanceOptions&) {
    const auto f1 = EntireMap::f1();
    const auto orbit = iterate(f1, 1.0, 200);
    out.check(orbit.status == OrbitStatus::EscapedRight, "orbit of 1 escapes right");
    double min_increase = INFINITY;
    for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k) {
        const double re = orbit.points[k].real();
        if (re >= 1.0 && re <= 50.0) {
            min_increase = std::min(min_increase, orbit.points[k + 1].real() - re);
        }
    }
    out.note("steps", static_cast<double>(orbit.points.size() - 1));
    out.note("min_re_increase", min_increase);
    out.check(min_increase >= 0.63, "per-step increase >= 0.63");

    const auto report = wandering_orbit_check(EntireMap::f3(), 0, 5);
    double worst = 0.0;
    for (const auto& row : report.rows) {
        worst = std::max(worst, row.shift_error);
    }
    out.note("shift_error", worst);
    out.check(report.rows.size() == 6 && worst <= 1e-12, "f3(z_n) = z_{n+1}");
}

void zeros_asymptotics(Outcome& out, const AcceptanceOptions&) {
    const auto zeros = zeros_of_f1(900.0, 1100.0);
    const auto f1 = EntireMap::f1();
    bool found = false;
    for (const cplx xi : zeros.roots) {
        const double log_im = std::log(xi.imag());
        const double ratio = std::abs(xi.real() + log_im) / log_im;
        if (xi.imag() >= 900.0 && xi.imag() <= 1100.0 && std::abs(f1.evaluate(xi).value) < 1e-10 && ratio < 0.1) {
            if (!found) {
                out.note("xi_re", xi.real());
                out.note("xi_im", xi.imag());
                out.note("ratio", ratio);
            }
            found = true;
        }
    }
    out.note("roots", static_cast<double>(zeros.roots.size()));
    out.check(found, "root with the asymptotic relation");
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "fixed-point-identities", 1.0, fixed_point_identities},
        {2, "semiconjugacy", 1.0, semiconjugacy},
        {3, "eta-dichotomy", 5.0, eta_dichotomy},
        {4, "spherical-expansion", 2.0, spherical},
        {5, "poly-decay", 5.0, poly_decay},
        {6, "hyperbolicity-certificates", 1.0, certification},
        {7, "inverse-branch", 5.0, inverse_branch},
        {8, "tract-geometry", 10.0, tract_geometry},
        {9, "instability-parameter", 60.0, instability},
        {10, "julia-mask-agreement", 120.0, julia_mask_agreement},
        {11, "baker-and-wandering", 1.0, baker_wandering},
        {12, "zeros-asymptotics", 2.0, zeros_asymptotics},
    };
    return list;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> results;
    for (const auto& c : criteria()) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
            continue;
        }
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.time_limit = c.time_limit;
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(outcome, options);
        } catch (const Error& e) {
            outcome.pass = false;
            outcome.detail << "error=" << error_code_name(e.code()) << ' ';
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds >= c.time_limit) {
            outcome.pass = false;
            outcome.detail << "FAILED[runtime limit] ";
        }
        r.pass = outcome.pass;
        r.detail = outcome.detail.str();
        if (!r.detail.empty() && r.detail.back() == ' ') {
            r.detail.pop_back();
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string acceptance_summary_csv(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    os << "id,name,status,detail\n";
    for (const auto& r : results) {
        os << r.id << ',' << r.name << ',' << (r.pass ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
    }
    return os.str();
}

} // namespace edyn
