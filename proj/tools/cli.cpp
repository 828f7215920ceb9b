#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "flatctc/curves.hpp"
#include "flatctc/errors.hpp"
#include "flatctc/io.hpp"
#include "flatctc/isometry.hpp"
#include "flatctc/raster.hpp"
#include "flatctc/regions.hpp"

namespace flatctc::cli {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::string num(double x) {
    if (x == 0.0) x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string vec(const MVec& v) { return "(" + num(v.x()) + ", " + num(v.y()) + ", " + num(v.z()) + ")"; }
std::string point(const MPoint& p) { return vec(p.from_origin()); }

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double x = std::stod(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x)) throw std::exception();
            out.push_back(x);
        } catch (...) {
            throw ParseError(what + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.size() != expected) {
        throw ParseError(what + ": expected " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

MPoint parse_point(const std::string& text) {
    const auto v = parse_list(text, 3, "point");
    return MPoint(v[0], v[1], v[2]);
}

// Linear part of the canonical parabolic in the basis
// {(0,-1,1)/sqrt2, (1,0,0), (0,1,1)/sqrt2}, mapped to standard coordinates.
Isometry parabolic_builtin(double tau) {
    const double h = 1.0 / kSqrt2;
    const MVec x0(0, -h, h), x1(1, 0, 0), x2(0, h, h);
    const Mat3 basis = Mat3::from_columns(x0, x1, x2);
    const Mat3 lin = basis * parabolic_canonical(0.0).linear * basis.inverse();
    return Isometry(lin, tau * x2);
}

Isometry torus_generator(int i) { return torus_example().generators.at(i).element; }

struct Source {
    GroupPresentation group;
    bool is_group_builtin = false;
};

}  // namespace

std::vector<std::string> builtin_names() {
    return {"torus-gamma1", "torus-gamma2",    "torus",         "misner-boost", "parabolic-tau",
            "parabolic-fixed", "elliptic-theta-t", "time-translation", "identity"};
}

GroupPresentation builtin(const std::string& name, const BuiltinParams& params) {
    const auto single = [](const std::string& n, const Isometry& g) {
        GroupPresentation out;
        out.generators.push_back({n, g});
        return out;
    };
    if (name == "torus") return torus_example();
    if (name == "torus-gamma1") return single("g1", torus_generator(0));
    if (name == "torus-gamma2") return single("g2", torus_generator(1));
    if (name == "misner-boost") return single("g", Isometry(torus_generator(0).linear(), MVec()));
    if (name == "parabolic-tau") {
        if (params.tau == 0.0) throw ParseError("parabolic-tau needs a nonzero --tau");
        return single("rho", parabolic_builtin(params.tau));
    }
    if (name == "parabolic-fixed") return single("rho", parabolic_builtin(0.0));
    if (name == "elliptic-theta-t") return single("psi", Isometry(rotation_xy(params.theta), MVec(0, 0, params.t)));
    if (name == "time-translation") return single("g", Isometry::translation_by(MVec(0, 0, 1)));
    if (name == "identity") return single("g", Isometry::identity());
    throw ParseError("unknown builtin '" + name + "'");
}

namespace {

struct SourceFlags {
    std::string isometry_file;
    std::string group_file;
    std::string builtin_name;
    BuiltinParams params;
};

void add_source_flags(CLI::App* cmd, SourceFlags& f, bool allow_group) {
    cmd->add_option("--isometry", f.isometry_file, "JSON isometry file");
    if (allow_group) cmd->add_option("--group", f.group_file, "JSON group file (array of isometries)");
    cmd->add_option("--builtin", f.builtin_name, "Builtin fixture name");
    cmd->add_option("--tau", f.params.tau, "tau for parabolic-tau")->capture_default_str();
    cmd->add_option("--theta", f.params.theta, "theta for elliptic-theta-t")->capture_default_str();
    cmd->add_option("--t", f.params.t, "t for elliptic-theta-t")->capture_default_str();
}

Source load_source(const SourceFlags& f) {
    const int given = !f.isometry_file.empty() + !f.group_file.empty() + !f.builtin_name.empty();
    if (given != 1) throw ParseError("give exactly one of --isometry, --group, --builtin");
    Source s;
    if (!f.isometry_file.empty()) {
        NamedIsometry g = load_isometry(f.isometry_file);
        if (g.name.empty()) g.name = "g1";
        s.group.generators.push_back(std::move(g));
    } else if (!f.group_file.empty()) {
        s.group = load_group(f.group_file);
        s.is_group_builtin = true;
    } else {
        s.group = builtin(f.builtin_name, f.params);
        s.is_group_builtin = s.group.generators.size() > 1;
    }
    return s;
}

const Isometry& single_element(const Source& s) {
    if (s.group.generators.size() != 1) throw ParseError("this command needs a single isometry, not a group");
    return s.group.generators.front().element;
}

int cmd_classify(const SourceFlags& f, std::ostream& out) {
    const Isometry& g = single_element(load_source(f));
    const IsometryClass c = classify(g);
    if (c.kind == IsometryKind::Identity) {
        out << "Identity\n";
        out << (c.has_fixed_point ? "fixed point: every point\n" : "translation " + vec(g.translation()) + "\n");
        return kOk;
    }
    std::string line = std::string(to_string(c.kind)) + ", tr=" + num(c.trace) + ", " +
                       (c.has_fixed_point ? "fixed point" : "no fixed point");
    const NormalForm nf = normal_form(g);
    if (const auto* h = std::get_if<HyperbolicForm>(&nf.params)) {
        out << line << ", lambda=" << num(h->lambda) << ", alpha=" << num(h->alpha) << "\n";
        const EigenFrame fr = eigenframe(g.linear());
        const InvariantLine l = invariant_line(g);
        out << "x- = " << vec(fr.x_minus) << "\n";
        out << "x+ = " << vec(fr.x_plus) << "\n";
        out << "x0 = " << vec(fr.x_null_axis) << "\n";
        out << "invariant line: base " << point(l.base) << ", direction " << vec(l.direction) << "\n";
    } else if (const auto* p = std::get_if<ParabolicForm>(&nf.params)) {
        out << line << ", tau=" << num(p->tau) << "\n";
    } else if (const auto* e = std::get_if<EllipticForm>(&nf.params)) {
        out << line << ", theta=" << num(e->theta) << ", t=" << num(e->t) << "\n";
    }
    if (c.marginal) out << "warning: trace is close to the parabolic band edge; classification is marginal\n";
    return kOk;
}

int cmd_region(const SourceFlags& f, const std::string& point_text, long power_n, std::ostream& out) {
    const Isometry& g = single_element(load_source(f));
    const MPoint p = parse_point(point_text);
    if (power_n == 0) throw ParseError("--power must be nonzero");
    const RegionLabel label = region_of(g, p, power_n);
    const MVec d = displacement(power(g, power_n), p);
    out << to_string(label.region) << " power=" << power_n << " displacement=" << vec(d)
        << " B=" << num(lorentz_square(d)) << (label.fixed_point ? " fixed-point" : "") << "\n";
    return kOk;
}

Plane parse_plane(const std::string& spec, const GroupPresentation& group) {
    if (spec == "eigenplane") {
        for (const auto& g : group.generators) {
            if (classify(g.element).kind == IsometryKind::Hyperbolic) return eigenplane(g.element);
        }
        throw ParseError("eigenplane needs a hyperbolic generator");
    }
    Plane plane;
    bool has_base = false, has_u = false, has_v = false;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("plane spec: expected key=value in '" + part + "'");
        const std::string key = part.substr(0, eq);
        const auto v = parse_list(part.substr(eq + 1), 3, "plane " + key);
        if (key == "base") {
            plane.base = MPoint(v[0], v[1], v[2]);
            has_base = true;
        } else if (key == "u") {
            plane.u_axis = MVec(v[0], v[1], v[2]);
            has_u = true;
        } else if (key == "v") {
            plane.v_axis = MVec(v[0], v[1], v[2]);
            has_v = true;
        } else {
            throw ParseError("plane spec: unknown key '" + key + "'");
        }
    }
    if (!has_base || !has_u || !has_v) throw ParseError("plane spec needs base=, u= and v=");
    if (cross(plane.u_axis, plane.v_axis).norm() == 0.0) throw ParseError("plane axes are parallel");
    return plane;
}

struct RasterFlags {
    std::string plane = "eigenplane";
    std::string range = "-5,5,-5,5";
    std::string res = "64,64";
    long max_power = 1;
    int max_word_len = 1;
    std::string format = "csv";
    std::string output;
    int threads = 1;
    SvgStyle style;
};

int cmd_cross_section(const SourceFlags& f, const RasterFlags& r, std::ostream& out) {
    const Source s = load_source(f);
    GridSpec grid;
    grid.plane = parse_plane(r.plane, s.group);
    const auto range = parse_list(r.range, 4, "range");
    grid.u_min = range[0];
    grid.u_max = range[1];
    grid.v_min = range[2];
    grid.v_max = range[3];
    const auto res = parse_list(r.res, 2, "res");
    if (res[0] != std::floor(res[0]) || res[1] != std::floor(res[1])) throw ParseError("res must be integers");
    grid.res_u = static_cast<int>(res[0]);
    grid.res_v = static_cast<int>(res[1]);
    grid.max_power = r.max_power;
    grid.max_word_len = r.max_word_len;
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (r.format != "csv" && r.format != "svg") throw ParseError("--out must be csv or svg");

    const Raster raster = s.is_group_builtin ? cross_section_raster(s.group, grid, kDefaultTol, r.threads)
                                             : cross_section_raster(single_element(s), grid, kDefaultTol, r.threads);

    std::ofstream file;
    std::ostream* dest = &out;
    if (!r.output.empty()) {
        file.open(r.output);
        if (!file) throw ParseError("cannot write " + r.output);
        dest = &file;
    }
    if (r.format == "csv") {
        write_raster_csv(*dest, raster);
    } else {
        write_raster_svg(*dest, raster, r.style);
    }
    return kOk;
}

int cmd_search(const SourceFlags& f, const std::string& point_text, int max_len, long max_power, bool json,
               std::ostream& out) {
    const Source s = load_source(f);
    const MPoint p = parse_point(point_text);
    if (max_len < 1 || max_power < 1) throw ParseError("--max-word-len and --max-power must be >= 1");
    const auto w = group_ctc_search(s.group, p, max_len, max_power);
    if (!w) {
        out << "none\n";
        return kNoWitness;
    }
    if (json) {
        out << serialize_witness(*w) << "\n";
    } else {
        out << w->to_string(&s.group) << "\n";
        out << "word=[";
        const auto idx = w->word().signed_indices();
        for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
        out << "] power=" << w->power() << " displacement=" << vec(w->displacement()) << " B=" << num(w->b_value())
            << "\n";
    }
    return kOk;
}

int cmd_curve(const SourceFlags& f, const std::string& point_text, double epsilon, int samples,
              const std::string& format, const std::string& output, std::ostream& out) {
    const Isometry& g = single_element(load_source(f));
    const MPoint p = parse_point(point_text);
    if (format != "csv") throw ParseError("--out must be csv");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw ParseError("--epsilon must lie in (0, 0.5)");
    if (samples < 1) throw ParseError("--samples must be >= 1");

    const auto curve = smooth_orbit_curve(g, p, epsilon, samples);
    const ClosureReport report = certify_closed_in_quotient(g, curve);

    std::ofstream file;
    std::ostream* dest = &out;
    if (!output.empty()) {
        file.open(output);
        if (!file) throw ParseError("cannot write " + output);
        dest = &file;
    }
    *dest << "# certified closed timelike curve: position_residual=" << num(report.position_residual)
          << " tangent_residual=" << num(report.tangent_residual) << " max_B_tangent=" << num(report.max_tangent_b)
          << "\n";
    write_curve_csv(*dest, curve);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed timelike curve regions of flat Lorentzian quotients E/G"};
    app.require_subcommand(1);

    SourceFlags classify_src, region_src, raster_src, search_src, curve_src;

    auto* classify_cmd = app.add_subcommand("classify", "Classify an isometry and print its invariants");
    add_source_flags(classify_cmd, classify_src, false);

    std::string region_point;
    long region_power = 1;
    auto* region_cmd = app.add_subcommand("region", "Label a point T/L/S for a power of an isometry");
    add_source_flags(region_cmd, region_src, false);
    region_cmd->add_option("--point", region_point, "X,Y,Z")->required();
    region_cmd->add_option("--power", region_power, "power n (nonzero)")->capture_default_str();

    RasterFlags raster;
    auto* raster_cmd = app.add_subcommand("cross-section", "Raster of T/L/S labels over a plane");
    add_source_flags(raster_cmd, raster_src, true);
    raster_cmd->add_option("--plane", raster.plane, "eigenplane or base=X,Y,Z;u=..;v=..")->capture_default_str();
    raster_cmd->add_option("--range", raster.range, "u0,u1,v0,v1")->capture_default_str();
    raster_cmd->add_option("--res", raster.res, "N,M grid nodes")->capture_default_str();
    raster_cmd->add_option("--max-power", raster.max_power, "largest power")->capture_default_str();
    raster_cmd->add_option("--max-word-len", raster.max_word_len, "longest word (groups)")->capture_default_str();
    raster_cmd->add_option("--out", raster.format, "csv or svg")->capture_default_str();
    raster_cmd->add_option("--output", raster.output, "output file (default stdout)");
    raster_cmd->add_option("--threads", raster.threads, "worker threads")->capture_default_str();
    raster_cmd->add_option("--color-t", raster.style.color_t, "SVG fill for T")->capture_default_str();
    raster_cmd->add_option("--color-l", raster.style.color_l, "SVG fill for L")->capture_default_str();
    raster_cmd->add_option("--color-s", raster.style.color_s, "SVG fill for S")->capture_default_str();

    std::string search_point;
    int search_len = 4;
    long search_power = 50;
    bool search_json = false;
    auto* search_cmd = app.add_subcommand("search", "Find a group word whose power has timelike displacement");
    add_source_flags(search_cmd, search_src, true);
    search_cmd->add_option("--point", search_point, "X,Y,Z")->required();
    search_cmd->add_option("--max-word-len", search_len, "longest word")->capture_default_str();
    search_cmd->add_option("--max-power", search_power, "largest power per word")->capture_default_str();
    search_cmd->add_flag("--json", search_json, "print the witness record as JSON");

    std::string curve_point, curve_format = "csv", curve_output;
    double curve_eps = 0.1;
    int curve_samples = 100;
    auto* curve_cmd = app.add_subcommand("curve", "Export a certified smooth closed timelike curve");
    add_source_flags(curve_cmd, curve_src, false);
    curve_cmd->add_option("--point", curve_point, "X,Y,Z")->required();
    curve_cmd->add_option("--epsilon", curve_eps, "blend width in (0, 0.5)")->capture_default_str();
    curve_cmd->add_option("--samples", curve_samples, "samples per unit parameter")->capture_default_str();
    curve_cmd->add_option("--out", curve_format, "csv")->capture_default_str();
    curve_cmd->add_option("--output", curve_output, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }

    try {
        if (*classify_cmd) return cmd_classify(classify_src, out);
        if (*region_cmd) return cmd_region(region_src, region_point, region_power, out);
        if (*raster_cmd) return cmd_cross_section(raster_src, raster, out);
        if (*search_cmd) return cmd_search(search_src, search_point, search_len, search_power, search_json, out);
        if (*curve_cmd) return cmd_curve(curve_src, curve_point, curve_eps, curve_samples, curve_format, curve_output, out);
    } catch (const NotLorentzError& e) {
        err << "error: " << e.what() << " (residual " << num(e.residual()) << ")\n";
        return kNotLorentz;
    } catch (const NotTimelikeDisplacementError& e) {
        err << "error: " << e.what() << "\n";
        return kNotTimelike;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kParseError;
}

}  // namespace flatctc::cli
