#include "edyn_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "edyn/acceptance.hpp"
#include "edyn/catalog.hpp"
#include "edyn/dynamics.hpp"
#include "edyn/error.hpp"
#include "edyn/format.hpp"
#include "edyn/image_io.hpp"
#include "edyn/instability.hpp"
#include "edyn/inverse_branch.hpp"
#include "edyn/raster.hpp"
#include "edyn/regions.hpp"
#include "edyn/scans.hpp"

namespace edyn::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

[[noreturn]] void usage(const std::string& message) {
    fail(ErrorCode::UsageError, message);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) {
            usage("bad number for " + what + ": '" + text + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        usage("bad number for " + what + ": '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        out.push_back(parse_double(part, what));
    }
    if (out.empty()) {
        usage(what + " must not be empty");
    }
    return out;
}

cplx parse_complex(const std::string& text, const std::string& what) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) {
        usage(what + " expects RE,IM; got '" + text + "'");
    }
    return {parse_double(parts[0], what), parse_double(parts[1], what)};
}

json complex_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

Region parse_region(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "whole-plane" && arg.empty()) {
        return Region::whole_plane();
    }
    if (kind == "unit-disc" && arg.empty()) {
        return Region::unit_disc();
    }
    if (kind == "right-half-plane") {
        return Region::right_half_plane(arg.empty() ? 0.0 : parse_double(arg, "--omega"));
    }
    if (kind == "exterior" && !arg.empty()) {
        const double r = parse_double(arg, "--omega");
        if (!(r > 0.0)) {
            usage("exterior radius must be positive");
        }
        return Region::exterior_of_radius(r);
    }
    if (kind == "complement" && !arg.empty()) {
        std::vector<Disc> discs;
        for (const auto& d : split(arg, ';')) {
            const auto v = parse_list(d, "--omega");
            if (v.size() != 3 || !(v[2] > 0.0)) {
                usage("complement discs are RE,IM,R with R > 0");
            }
            discs.push_back({{v[0], v[1]}, v[2]});
        }
        return Region::complement_of_discs(std::move(discs));
    }
    usage("unknown region '" + text + "'");
}

EntireMap parse_map(const std::string& id) {
    return EntireMap::parse(id);
}

std::string sidecar_path(const std::string& out) {
    fs::path p(out);
    p.replace_extension(".meta.json");
    return p.string();
}

void emit(const std::optional<std::string>& out, const std::string& contents, const json& meta,
          std::ostream& stream) {
    if (!out) {
        stream << contents;
        return;
    }
    write_text_file(*out, contents);
    write_text_file(sidecar_path(*out), meta.dump(2) + "\n");
}

struct SamplerFlags {
    double min_radius = 1.0 / 64.0;
    int radii_per_octave = 8;
    int octaves = 16;
    int angles = 256;
    long long critical_window = 64;
    bool refine = true;
    int refine_iterations = 600;
    double curve_modulus = 64.0;
    int tracts_per_value = 4;

    void attach(CLI::App* sub) {
        sub->add_option("--min-radius", min_radius, "innermost grid radius");
        sub->add_option("--radii-per-octave", radii_per_octave);
        sub->add_option("--octaves", octaves);
        sub->add_option("--angles", angles);
        sub->add_option("--critical-window", critical_window);
        sub->add_option("--refine", refine, "compass-search polishing of witnesses");
        sub->add_option("--refine-iterations", refine_iterations);
    }

    void attach_curves(CLI::App* sub) {
        sub->add_option("--curve-modulus", curve_modulus);
        sub->add_option("--tracts-per-value", tracts_per_value);
    }

    [[nodiscard]] SamplerConfig config(unsigned workers) const {
        if (!(min_radius > 0.0) || radii_per_octave < 1 || octaves < 1 || angles < 1 || critical_window < 0 ||
            refine_iterations < 0 || !(curve_modulus > 0.0) || tracts_per_value < 1) {
            usage("sampler parameters out of range");
        }
        SamplerConfig c;
        c.min_radius = min_radius;
        c.radii_per_octave = radii_per_octave;
        c.octaves = octaves;
        c.angles = angles;
        c.critical_window = critical_window;
        c.refine = refine;
        c.refine_iterations = refine_iterations;
        c.curve_modulus = curve_modulus;
        c.tracts_per_value = tracts_per_value;
        c.workers = workers;
        return c;
    }

    void describe(json& j, bool curves) const {
        j["minRadius"] = min_radius;
        j["radiiPerOctave"] = radii_per_octave;
        j["octaves"] = octaves;
        j["angles"] = angles;
        j["criticalWindow"] = critical_window;
        j["refine"] = refine;
        j["refineIterations"] = refine_iterations;
        if (curves) {
            j["curveModulus"] = curve_modulus;
            j["tractsPerValue"] = tracts_per_value;
        }
    }
};

struct Options {
    unsigned threads = 0;
    std::optional<std::string> out;
    std::string out_dir;
    std::string map = "f2";
    SamplerFlags sampler;

    // render
    std::string viewport = "-3,9,-13,13";
    std::string size = "800x800";
    int budget = 500;
    std::string classifier;
    double tolerance = 1e-6;
    double escape_re = 50.0;

    // scans
    std::string thresholds = "100,10000,100000000";
    double R = 1e6;
    std::string s = "0,0";
    std::optional<std::string> center;
    double radius = 0.1;
    double tau = 4.0;
    std::string omega = "right-half-plane";
    std::string radii = "0.5,1,2,4,8,16";

    // branches and tracts
    std::string z0 = "0,0";
    double max_radius = 10.0;
    std::optional<double> target_modulus;
    int count = 8;
    std::string x = "100,1000";
    double boundary_modulus = 1100.0;
    int angular_resolution = 4096;

    // instability and zeros
    int p = 1;
    long long n = 1000;
    double delta = 0.01;
    int min_steps = 256;
    double cell_size = 1e-6;
    std::string im_range = "6.283185307179586,100";
    int per_strip = 4;

    std::string only;
};

void add_threads(CLI::App* sub, Options& o) {
    sub->add_option("--threads", o.threads, "worker cap; never changes output bytes");
}

json header(const std::string& command, const std::string& map) {
    json j;
    j["command"] = command;
    if (!map.empty()) {
        j["map"] = map;
    }
    return j;
}

int cmd_render(const Options& o, std::ostream&) {
    RasterConfig config;
    config.map = parse_map(o.map);
    const auto v = parse_list(o.viewport, "--viewport");
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) {
        usage("--viewport expects RE_MIN,RE_MAX,IM_MIN,IM_MAX with min < max");
    }
    config.viewport = {v[0], v[1], v[2], v[3]};
    const auto dims = split(o.size, 'x');
    if (dims.size() != 2) {
        usage("--size expects WxH");
    }
    config.width = static_cast<int>(parse_double(dims[0], "--size"));
    config.height = static_cast<int>(parse_double(dims[1], "--size"));
    if (config.width < 1 || config.height < 1) {
        usage("--size must be positive");
    }
    if (o.budget < 1 || !(o.tolerance > 0.0)) {
        usage("--budget and --tolerance must be positive");
    }
    config.budget = o.budget;
    config.tolerance = o.tolerance;
    config.escape_re = o.escape_re;
    if (!o.classifier.empty()) {
        config.classifier = parse_classifier(o.classifier);
    } else if (config.map.kind() == MapKind::F3Herman) {
        config.classifier = Classifier::DriftCompensatedBasins;
    } else if (config.map.kind() == MapKind::F2Newton) {
        config.classifier = Classifier::FixedPointBasins;
    } else {
        config.classifier = Classifier::EscapeRight;
    }
    config.workers = o.threads;
    if (!o.out) {
        usage("--out is required");
    }
    const std::string ext = fs::path(*o.out).extension().string();
    ImageFormat format;
    if (ext == ".png") {
        format = ImageFormat::PNG;
    } else if (ext == ".pgm") {
        format = ImageFormat::PGM;
    } else {
        usage("--out must end in .pgm or .png");
    }
    config.validate();
    const Image image = render_raster(config);
    write_image(image, *o.out, format);
    write_text_file(sidecar_path(*o.out), sidecar_json(config));
    return 0;
}

int cmd_eta_scan(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    const auto thresholds = parse_list(o.thresholds, "--thresholds");
    const auto sampler = o.sampler.config(o.threads);
    const auto report = eta_scan(map, thresholds, sampler);
    auto meta = header("eta-scan", map.id());
    meta["thresholds"] = thresholds;
    o.sampler.describe(meta, false);
    emit(o.out, report.to_csv(), meta, out);
    return 0;
}

int cmd_spherical(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    if (!(o.R > 0.0)) {
        usage("--R must be positive");
    }
    const auto sampler = o.sampler.config(o.threads);
    const auto report = spherical_expansion_scan(map, o.R, sampler);
    auto meta = header("spherical-scan", map.id());
    meta["R"] = o.R;
    o.sampler.describe(meta, false);
    emit(o.out, report.to_csv(), meta, out);
    return 0;
}

int cmd_poly(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    const cplx s = parse_complex(o.s, "--s");
    const cplx center = o.center ? parse_complex(*o.center, "--center") : s;
    if (!(o.radius > 0.0) || !(o.tau > 0.0)) {
        usage("--radius and --tau must be positive");
    }
    const auto sampler = o.sampler.config(o.threads);
    const auto report = poly_decay_scan(map, s, Disc{center, o.radius}, o.tau, sampler);
    std::string csv = report.to_csv();
    if (report.curve_infimum) {
        csv += "# curve_infimum," + fmt_double(*report.curve_infimum) + "," +
               fmt_double(report.curve_witness->real()) + "," + fmt_double(report.curve_witness->imag()) + "\n";
    }
    auto meta = header("poly-scan", map.id());
    meta["s"] = complex_json(s);
    meta["center"] = complex_json(center);
    meta["radius"] = o.radius;
    meta["tau"] = o.tau;
    o.sampler.describe(meta, true);
    emit(o.out, csv, meta, out);
    return 0;
}

int cmd_eta_omega(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    const Region omega = parse_region(o.omega);
    const auto thresholds = parse_list(o.thresholds, "--thresholds");
    const auto sampler = o.sampler.config(o.threads);
    const auto report = eta_omega_scan(map, omega, thresholds, sampler);
    auto meta = header("eta-omega", map.id());
    meta["omega"] = o.omega;
    meta["thresholds"] = thresholds;
    o.sampler.describe(meta, false);
    emit(o.out, report.to_csv(), meta, out);
    return 0;
}

int cmd_certify(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    const auto radii = parse_list(o.radii, "--radii");
    const auto cert = certify_hyperbolic(map, radii);
    auto meta = header("certify", map.id());
    meta["radii"] = radii;
    emit(o.out, cert.to_json(), meta, out);
    return 0;
}

std::string obstruction_name(ObstructionKind k) {
    return k == ObstructionKind::CriticalObstruction ? "CriticalObstruction" : "AsymptoticObstruction";
}

int cmd_trace_branch(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    const cplx z0 = parse_complex(o.z0, "--z0");
    if (!(o.max_radius > 0.0)) {
        usage("--max-radius must be positive");
    }
    if (o.target_modulus && !(*o.target_modulus > 0.0)) {
        usage("--target-modulus must be positive");
    }
    const auto state = continue_branch(map, z0, o.max_radius);
    json j;
    j["basepoint"] = complex_json(state.basepoint);
    j["center"] = complex_json(state.center);
    j["radius"] = state.radius;
    if (state.obstruction) {
        json ob;
        ob["kind"] = obstruction_name(state.obstruction->kind);
        ob["s"] = complex_json(state.obstruction->s);
        if (state.obstruction->critical_point) {
            ob["criticalPoint"] = complex_json(*state.obstruction->critical_point);
        }
        j["obstruction"] = ob;
    } else {
        j["obstruction"] = nullptr;
    }
    j["steps"] = state.steps;
    std::optional<AsymptoticCurve> curve;
    if (o.target_modulus) {
        if (!state.obstruction || state.obstruction->kind != ObstructionKind::AsymptoticObstruction) {
            fail(ErrorCode::PreconditionViolation, "no asymptotic obstruction to trace a curve to");
        }
        curve = trace_asymptotic_curve(state, *o.target_modulus);
        j["curveSamples"] = curve->samples.size();
    }
    auto meta = header("trace-branch", map.id());
    meta["z0"] = complex_json(z0);
    meta["maxRadius"] = o.max_radius;
    if (o.target_modulus) {
        meta["targetModulus"] = *o.target_modulus;
    }
    emit(o.out, j.dump(2) + "\n", meta, out);
    if (curve) {
        if (o.out) {
            fs::path p(*o.out);
            p.replace_extension(".curve.csv");
            write_text_file(p.string(), polyline_csv(curve->samples));
        } else {
            out << polyline_csv(curve->samples);
        }
    }
    return 0;
}

int cmd_tracts(const Options& o, std::ostream& out) {
    const auto map = parse_map(o.map);
    const cplx s = parse_complex(o.s, "--s");
    const cplx center = o.center ? parse_complex(*o.center, "--center") : s;
    const auto xs = parse_list(o.x, "--x");
    if (o.count < 1 || !(o.radius > 0.0) || !(o.boundary_modulus > 0.0) || o.angular_resolution < 1) {
        usage("--count, --radius, --boundary-modulus and --angular-resolution must be positive");
    }
    if (o.out_dir.empty()) {
        usage("--out-dir is required");
    }
    TractConfig config;
    config.boundary_modulus = o.boundary_modulus;
    const auto tracts = discs_of_univalence(map, s, Disc{center, o.radius}, o.count, config);

    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) {
        fail(ErrorCode::IOError, "cannot create " + o.out_dir + ": " + ec.message());
    }
    json summary;
    summary["disc"] = {{"center", complex_json(tracts.front().disc.center)},
                       {"radius", tracts.front().disc.radius}};
    auto list = json::array();
    for (std::size_t k = 0; k < tracts.size(); ++k) {
        const auto& t = tracts[k];
        const std::string name = "tract_" + std::to_string(k) + ".csv";
        write_text_file((fs::path(o.out_dir) / name).string(), polyline_csv(t.boundary));
        json row;
        row["sheet"] = t.sheet;
        row["branchSeed"] = complex_json(t.branch_seed);
        row["baseRadius"] = t.base_radius;
        row["boundary"] = name;
        auto measures = json::array();
        for (const double x : xs) {
            const double theta = x >= t.base_radius ? tract_angular_measure(t, x, o.angular_resolution) : NAN;
            measures.push_back({{"x", x}, {"theta", theta}});
        }
        row["angularMeasure"] = measures;
        list.push_back(row);
    }
    summary["tracts"] = list;
    double min_distance = INFINITY;
    for (std::size_t i = 0; i < tracts.size(); ++i) {
        for (std::size_t j = i + 1; j < tracts.size(); ++j) {
            min_distance = std::min(min_distance, min_polyline_distance(tracts[i].boundary, tracts[j].boundary));
        }
    }
    summary["minBoundaryDistance"] = std::isfinite(min_distance) ? json(min_distance) : json(nullptr);

    auto meta = header("tracts", map.id());
    meta["s"] = complex_json(s);
    meta["center"] = complex_json(center);
    meta["radius"] = o.radius;
    meta["count"] = o.count;
    meta["x"] = xs;
    meta["boundaryModulus"] = o.boundary_modulus;
    meta["angularResolution"] = o.angular_resolution;
    const std::string path = (fs::path(o.out_dir) / "tracts.json").string();
    emit(path, summary.dump(2) + "\n", meta, out);
    return 0;
}

int cmd_instability(const Options& o, std::ostream& out) {
    if (o.p != 1) {
        usage("--p: only p = 1 is supported");
    }
    if (!(o.delta > 0.0 && o.delta < 0.1) || o.n < 1) {
        usage("--delta must lie in (0, 0.1) and --n be positive");
    }
    if (o.min_steps < 8 || !(o.cell_size > 0.0)) {
        usage("--min-steps must be >= 8 and --cell-size positive");
    }
    InstabilityConfig config;
    config.min_steps = o.min_steps;
    config.cell_size = o.cell_size;
    config.workers = o.threads;
    const auto result = find_instability_parameter(o.p, o.n, o.delta, config);
    auto meta = header("instability", "");
    meta["p"] = o.p;
    meta["n"] = o.n;
    meta["delta"] = o.delta;
    meta["minSteps"] = o.min_steps;
    meta["cellSize"] = o.cell_size;
    meta["maxShrinks"] = config.max_shrinks;
    emit(o.out, result.to_json(), meta, out);
    return 0;
}

int cmd_zeros(const Options& o, std::ostream& out) {
    const auto range = parse_list(o.im_range, "--im-range");
    if (range.size() != 2) {
        usage("--im-range expects LO,HI");
    }
    if (o.per_strip < 1) {
        usage("--per-strip must be positive");
    }
    const auto result = zeros_of_f1(range[0], range[1], o.per_strip);
    std::string csv = "k,re,im\n";
    for (std::size_t k = 0; k < result.roots.size(); ++k) {
        csv += std::to_string(k) + "," + fmt_double(result.roots[k].real()) + "," +
               fmt_double(result.roots[k].imag()) + "\n";
    }
    auto meta = header("zeros-f1", "f1");
    meta["imRange"] = range;
    meta["perStrip"] = o.per_strip;
    meta["failedSeeds"] = result.failed_seeds.size();
    emit(o.out, csv, meta, out);
    return 0;
}

int cmd_report(const Options& o, std::ostream& out) {
    if (o.out_dir.empty()) {
        usage("--out-dir is required");
    }
    AcceptanceOptions options;
    options.workers = o.threads;
    if (!o.only.empty()) {
        for (const double id : parse_list(o.only, "--only")) {
            if (id != std::floor(id) || id < 1 || id > 12) {
                usage("--only takes criterion ids 1..12");
            }
            options.only.push_back(static_cast<int>(id));
        }
    }
    // fail early on an unusable directory
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    const std::string path = (fs::path(o.out_dir) / "summary.csv").string();
    {
        std::ofstream probe(path, std::ios::app);
        if (ec || !probe) {
            fail(ErrorCode::IOError, "cannot write " + path);
        }
    }
    const auto results = run_acceptance(options);
    write_text_file(path, acceptance_summary_csv(results));
    bool all = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.name << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

std::string json_token(const json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
            if (!joined.empty()) {
                joined += ",";
            }
            joined += json_token(item);
        }
        return joined;
    }
    if (v.is_number_float()) {
        return fmt_double(v.get<double>());
    }
    return v.dump();
}

const std::vector<std::string> kSubcommands{"render",      "eta-scan",     "spherical-scan", "poly-scan",
                                            "eta-omega",   "certify",      "trace-branch",   "tracts",
                                            "instability", "zeros-f1",     "report"};

} // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                usage("--config needs a file");
            }
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!config_path) {
        return rest;
    }
    std::ifstream in(*config_path);
    if (!in) {
        usage("cannot read config " + *config_path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        usage(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        usage("config must be a JSON object");
    }
    std::vector<std::string> injected;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object() || value.is_null()) {
            usage("config value for '" + key + "' must be a scalar or array");
        }
        injected.push_back("--" + key);
        injected.push_back(json_token(value));
    }
    auto pos = std::find_if(rest.begin(), rest.end(), [](const std::string& t) {
        return std::find(kSubcommands.begin(), kSubcommands.end(), t) != kSubcommands.end();
    });
    if (pos == rest.end()) {
        usage("a subcommand is required");
    }
    rest.insert(std::next(pos), injected.begin(), injected.end());
    return rest;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Numerical experiments on expansion and instability of transcendental entire maps", "edyn"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("edyn ") + EDYN_VERSION);

    using Handler = std::function<int(const Options&, std::ostream&)>;
    std::vector<std::pair<CLI::App*, Handler>> commands;
    const auto add = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_threads(sub, o);
        commands.emplace_back(sub, std::move(h));
        return sub;
    };
    const auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "artifact path (stdout when omitted); a .meta.json sidecar is written beside it");
    };
    const auto add_map = [&](CLI::App* sub) {
        return sub->add_option("--map", o.map, "f1, f2, f3, scaled-fP:RE,IM, lambda-exp:RE,IM, model-F1, model-F2")
            ->required();
    };

    auto* render = add("render", "render a basin classification raster (PGM or PNG)", cmd_render);
    render->add_option("--map", o.map, "map identifier")->capture_default_str();
    render->add_option("--viewport", o.viewport, "RE_MIN,RE_MAX,IM_MIN,IM_MAX")->capture_default_str();
    render->add_option("--size", o.size, "WxH")->capture_default_str();
    render->add_option("--budget", o.budget)->capture_default_str();
    render->add_option("--classifier", o.classifier,
                       "escape-right, fixed-point-basins or drift-compensated-basins (chosen by map if omitted)");
    render->add_option("--tolerance", o.tolerance)->capture_default_str();
    render->add_option("--escape-re", o.escape_re)->capture_default_str();
    render->add_option("--out", o.out, "output .pgm or .png")->required();

    auto* eta = add("eta-scan", "sampled inf |z f'/f| over |f| > R", cmd_eta_scan);
    add_map(eta);
    eta->add_option("--thresholds", o.thresholds, "comma-separated R values")->capture_default_str();
    o.sampler.attach(eta);
    add_out(eta);

    auto* sph = add("spherical-scan", "sampled inf of the spherical derivative norm over |f| > R", cmd_spherical);
    add_map(sph);
    sph->add_option("--R", o.R)->capture_default_str();
    o.sampler.attach(sph);
    add_out(sph);

    auto* poly = add("poly-scan", "sampled inf of (1+|z|^tau)|f'| over f(z) in U", cmd_poly);
    add_map(poly);
    poly->add_option("--s", o.s, "singular value RE,IM")->capture_default_str();
    poly->add_option("--center", o.center, "center of U (defaults to s)");
    poly->add_option("--radius", o.radius, "radius of U")->capture_default_str();
    poly->add_option("--tau", o.tau)->capture_default_str();
    o.sampler.attach(poly);
    o.sampler.attach_curves(poly);
    add_out(poly);

    auto* eo = add("eta-omega", "hyperbolic-to-cylindrical derivative norm over omega", cmd_eta_omega);
    add_map(eo);
    eo->add_option("--omega", o.omega,
                   "whole-plane, unit-disc, right-half-plane[:OFF], exterior:R, complement:RE,IM,R[;...]")
        ->capture_default_str();
    eo->add_option("--thresholds", o.thresholds)->capture_default_str();
    o.sampler.attach(eo);
    add_out(eo);

    auto* cert = add("certify", "search for an absorbing disc certifying hyperbolicity", cmd_certify);
    add_map(cert);
    cert->add_option("--radii", o.radii, "candidate radii")->capture_default_str();
    add_out(cert);

    auto* tb = add("trace-branch", "continue an inverse branch and classify its obstruction", cmd_trace_branch);
    add_map(tb);
    tb->add_option("--z0", o.z0, "basepoint RE,IM")->capture_default_str();
    tb->add_option("--max-radius", o.max_radius)->capture_default_str();
    tb->add_option("--target-modulus", o.target_modulus, "also trace the asymptotic curve out to this modulus");
    add_out(tb);

    auto* tr = add("tracts", "tracts over a disc tangent to an asymptotic value", cmd_tracts);
    add_map(tr);
    tr->add_option("--s", o.s)->capture_default_str();
    tr->add_option("--center", o.center, "center of U (defaults to s)");
    tr->add_option("--radius", o.radius)->capture_default_str();
    tr->add_option("--count", o.count)->capture_default_str();
    tr->add_option("--x", o.x, "radii for angular measures")->capture_default_str();
    tr->add_option("--boundary-modulus", o.boundary_modulus)->capture_default_str();
    tr->add_option("--angular-resolution", o.angular_resolution)->capture_default_str();
    tr->add_option("--out-dir", o.out_dir)->required();

    auto* inst = add("instability", "parameter lambda near 1 where f1's dynamics break", cmd_instability);
    inst->add_option("--p", o.p)->capture_default_str();
    inst->add_option("--n", o.n)->capture_default_str();
    inst->add_option("--delta", o.delta)->capture_default_str();
    inst->add_option("--min-steps", o.min_steps)->capture_default_str();
    inst->add_option("--cell-size", o.cell_size)->capture_default_str();
    add_out(inst);

    auto* zeros = add("zeros-f1", "zeros of f1 in a horizontal strip", cmd_zeros);
    zeros->add_option("--im-range", o.im_range, "LO,HI")->capture_default_str();
    zeros->add_option("--per-strip", o.per_strip)->capture_default_str();
    add_out(zeros);

    auto* rep = add("report", "run every acceptance criterion and write summary.csv", cmd_report);
    rep->add_option("--out-dir", o.out_dir)->required();
    rep->add_option("--only", o.only, "comma-separated criterion ids");

    try {
        auto tokens = expand_config(args);
        std::reverse(tokens.begin(), tokens.end());
        app.parse(tokens);
        for (const auto& [sub, handler] : commands) {
            if (sub->parsed()) {
                return handler(o, out);
            }
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "error code=UsageError message=" << one_line(e.what()) << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error code=" << error_code_name(e.code()) << " message=" << one_line(e.what()) << "\n";
        return e.code() == ErrorCode::UsageError ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error code=InternalError message=" << one_line(e.what()) << "\n";
        return 1;
    }
}

} // namespace edyn::cli
