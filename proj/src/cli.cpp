#include "rmb/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "rmb/convexity.hpp"
#include "rmb/error.hpp"
#include "rmb/io.hpp"
#include "rmb/matrix_norm.hpp"
#include "rmb/oracle.hpp"
#include "rmb/random.hpp"

namespace rmb {

namespace {

struct Options {
    std::string polygon_path;
    double p = -0.5;
    std::string x;
    int samples = 2048;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 20240601;
    double delta = 1e-6;
    bool extended_range = false;
    std::string out_dir;
    std::string format;
    int directions = 16;
    int approx_directions = 64;
    std::string m_list = "8,16,32,64";
    std::string grid = "0.1,3,50";
    double h = 1e-4;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what)
{
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            vals.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, std::string("cannot parse ") + what + ": " + text);
        }
    }
    if (expected && vals.size() != expected)
        throw Error(ErrorCode::InvalidArgument, std::string("wrong number of values in ") + what + ": " + text);
    return vals;
}

RunInfo run_info(const Options& o)
{
    return {o.p, o.samples, o.mc_samples, o.seed, o.delta, o.extended_range};
}

std::string out_path(const Options& o, const std::string& name)
{
    return (std::filesystem::path(o.out_dir) / name).string();
}

// Writes to --out-dir/name when set, otherwise to out.
void emit(const Options& o, const std::string& name, const std::string& text, std::ostream& out)
{
    if (o.out_dir.empty())
        out << text;
    else
        write_file(out_path(o, name), text);
}

int cmd_decompose(const Options& o, std::ostream& out)
{
    const ConvexPolygon polygon = load_polygon(o.polygon_path);
    const auto x = parse_list(o.x, 2, "--x");
    const Decomposition d = decompose(polygon, {x[0], x[1]});
    nlohmann::json doc = to_json(d);
    const CoefficientReport coef = verify_coefficient_relations(d);
    const SignReport sign = sign_report(d);
    doc["coefficient_report"] = {{"max_residual", coef.max_residual}, {"scale", coef.scale}, {"checked", coef.checked}};
    doc["sign_report"] = {{"i0", sign.i0},
                          {"positive_count", sign.positive_count},
                          {"alpha_sum", sign.alpha_sum},
                          {"area2", sign.area2}};
    doc["meta"] = to_json(run_info(o));
    emit(o, "decomposition.json", doc.dump(2) + "\n", out);
    return 0;
}

int cmd_eval(const Options& o, std::ostream& out)
{
    const ConvexPolygon polygon = load_polygon(o.polygon_path);
    const auto x = parse_list(o.x, 2, "--x");
    const NormEvaluator ev(polygon, o.p, o.extended_range);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g\n", ev.norm({x[0], x[1]}));
    out << buf;
    return 0;
}

int cmd_boundary(const Options& o, std::ostream& out, std::ostream& err)
{
    const ConvexPolygon polygon = load_polygon(o.polygon_path);
    const NormEvaluator ev(polygon, o.p, o.extended_range);
    ev.prebuild();
    const auto points = boundary_sample(ev, o.samples);
    const RunInfo info = run_info(o);

    const bool want_csv = o.format.empty() || o.format == "csv";
    const bool want_svg = o.format == "svg" || (o.format.empty() && !o.out_dir.empty());
    if (o.format == "json") {
        nlohmann::json doc = {{"meta", to_json(info)}, {"points", nlohmann::json::array()}};
        for (const auto& bp : points)
            doc["points"].push_back({{"angle", bp.angle},
                                     {"point", {bp.point.x, bp.point.y}},
                                     {"on_cone_boundary", bp.on_cone_boundary}});
        emit(o, "boundary.json", doc.dump(2) + "\n", out);
        return 0;
    }
    if (want_csv) {
        err << run_info_line(info) << '\n';
        emit(o, "boundary.csv", boundary_csv(ev, points), out);
    }
    if (want_svg) emit(o, "boundary.svg", boundary_svg(polygon, points, info), out);
    return 0;
}

int cmd_certify(const Options& o, std::ostream& out)
{
    const ConvexPolygon polygon = load_polygon(o.polygon_path);
    CertifyConfig config;
    config.samples = o.samples;
    config.seed = o.seed;
    config.delta = o.delta;
    config.extended_range = o.extended_range;
    const ConvexityCertificate cert = certify(polygon, o.p, config);
    nlohmann::json doc = to_json(cert);
    doc["meta"] = to_json(run_info(o));
    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!o.out_dir.empty()) write_file(out_path(o, "certificate.json"), text);
    return cert.pass ? 0 : 2;
}

int cmd_oracle_compare(const Options& o, std::ostream& out, std::ostream& err)
{
    const ConvexPolygon polygon = load_polygon(o.polygon_path);
    std::unique_ptr<NormEvaluator> ev;
    if (general_position_report(polygon).is_general_position)
        ev = std::make_unique<NormEvaluator>(polygon, o.p, o.extended_range);
    else
        err << "# polygon not in general position: closed_form column is nan\n";
    if (o.directions < 1) throw Error(ErrorCode::BadSampleCount, "--directions must be positive");

    err << run_info_line(run_info(o)) << '\n';
    std::ostringstream os;
    os << "direction,closed_form,xray_exact,mc_estimate,mc_stderr\n";
    for (int j = 0; j < o.directions; ++j) {
        const double angle = std::numbers::pi * (j + 0.5) / o.directions;
        const Vec2 u = unit_from_angle(angle);
        const double closed = ev ? ev->norm(u) : std::nan("");
        const double xray = norm_xray_exact(polygon, o.p, u);
        const McEstimate mc = norm_mc_radial(polygon, o.p, u, o.mc_samples, mix_seed(o.seed, j));
        os << format_double(angle) << ',' << format_double(closed) << ',' << format_double(xray) << ',' << format_double(mc.estimate) << ','
           << format_double(mc.stderr_) << '\n';
    }
    emit(o, "oracle_compare.csv", os.str(), out);
    return 0;
}

int cmd_approx(const Options& o, std::ostream& out, std::ostream& err)
{
    std::vector<int> ms;
    for (double m : parse_list(o.m_list, 0, "--m")) ms.push_back(static_cast<int>(m));
    ConvergenceTable table;
    if (o.polygon_path.empty()) {
        table = disc_convergence(o.p, ms, o.approx_directions);
    } else {
        const ConvexPolygon polygon = load_polygon(o.polygon_path);
        const double p = o.p;
        table = approximation_convergence([&](int) { return polygon; },
                                          [&](const Vec2& u) { return norm_xray_exact(polygon, p, u); }, p, ms,
                                          o.approx_directions);
    }
    err << run_info_line(run_info(o)) << '\n';
    std::ostringstream os;
    os << "m,sup_reldiff,spread\n";
    for (const auto& row : table.rows) os << row.m << ',' << format_double(row.sup_reldiff) << ',' << format_double(row.spread) << '\n';
    emit(o, "approx_converge.csv", os.str(), out);
    return table.non_increasing ? 0 : 2;
}

int cmd_matrix(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto g = parse_list(o.grid, 3, "--grid");
    const MatrixScanReport report = matrix_norm_convexity_scan(o.p, g[0], g[1], static_cast<int>(g[2]), o.h);
    err << run_info_line(run_info(o)) << '\n';
    err << "# min_eig=" << format_double(report.min_eigenvalue) << " at " << format_double(report.worst_point.x1) << ','
        << format_double(report.worst_point.x2) << '\n';
    std::ostringstream os;
    os << "x1,x2,min_eig\n";
    for (const auto& row : report.rows)
        os << format_double(row.point.x1) << ',' << format_double(row.point.x2) << ',' << format_double(row.min_eigenvalue) << '\n';
    emit(o, "matrix_norm.csv", os.str(), out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Radial mean bodies of convex polygons: closed-form norms, oracles and convexity checks", "rmb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto polygon_arg = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("polygon", o.polygon_path, "polygon JSON file {\"vertices\": [[x,y],...]}");
        if (required) opt->required();
    };
    auto p_flags = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "exponent p in (-1,0)")->capture_default_str();
        sub->add_flag("--extended-range", o.extended_range, "also allow p > 0");
    };
    auto out_flags = [&](CLI::App* sub) {
        sub->add_option("--out-dir", o.out_dir, "write outputs into this directory");
    };

    auto* decompose = app.add_subcommand("decompose", "alternating decomposition for one direction (JSON)");
    polygon_arg(decompose);
    decompose->add_option("--x", o.x, "direction \"a,b\"")->required();
    out_flags(decompose);
    decompose->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

    auto* eval = app.add_subcommand("eval", "norm of x in R_p K");
    polygon_arg(eval);
    p_flags(eval);
    eval->add_option("--x", o.x, "point \"a,b\"")->required();

    auto* boundary = app.add_subcommand("boundary", "sampled boundary of R_p K (CSV, SVG or JSON)");
    boundary->alias("render");
    polygon_arg(boundary);
    p_flags(boundary);
    boundary->add_option("--samples", o.samples, "uniform angles N")->capture_default_str();
    boundary->add_option("--format", o.format, "csv|svg|json")->check(CLI::IsMember({"csv", "svg", "json"}));
    out_flags(boundary);

    auto* cert = app.add_subcommand("certify", "numerical convexity certificate (JSON); exit 2 on failure");
    polygon_arg(cert);
    p_flags(cert);
    cert->add_option("--samples", o.samples, "boundary samples N")->capture_default_str();
    cert->add_option("--seed", o.seed, "perturbation seed")->capture_default_str();
    cert->add_option("--delta", o.delta, "perturbation size relative to the diameter")->capture_default_str();
    cert->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    out_flags(cert);

    auto* oracle = app.add_subcommand("oracle-compare", "closed form vs X-ray and Monte-Carlo oracles (CSV)");
    polygon_arg(oracle);
    p_flags(oracle);
    oracle->add_option("--directions", o.directions, "directions in [0, pi)")->capture_default_str();
    oracle->add_option("--mc-samples", o.mc_samples, "Monte-Carlo samples per direction")->capture_default_str();
    oracle->add_option("--seed", o.seed, "Monte-Carlo seed")->capture_default_str();
    oracle->add_option("--format", o.format, "csv")->check(CLI::IsMember({"csv"}));
    out_flags(oracle);

    auto* approx = app.add_subcommand("approx-converge",
                                      "inscribed regular m-gons vs the disc (or a constant polygon sequence)");
    polygon_arg(approx, false);
    approx->add_option("--p", o.p, "exponent p in (-1,0)")->capture_default_str();
    approx->add_option("--m", o.m_list, "comma-separated m values")->capture_default_str();
    approx->add_option("--directions", o.approx_directions, "directions")->capture_default_str();
    out_flags(approx);

    auto* matrix = app.add_subcommand("experiment-matrix-norm", "Hessian scan of the invariant matrix p-norm (CSV)");
    matrix->add_option("--p", o.p, "exponent p")->required();
    matrix->add_option("--grid", o.grid, "a,b,n: n x n grid over [a,b]^2")->capture_default_str();
    matrix->add_option("--step", o.h, "relative finite-difference step h")->capture_default_str();
    out_flags(matrix);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
        if (decompose->parsed()) return cmd_decompose(o, out);
        if (eval->parsed()) return cmd_eval(o, out);
        if (boundary->parsed()) return cmd_boundary(o, out, err);
        if (cert->parsed()) return cmd_certify(o, out);
        if (oracle->parsed()) return cmd_oracle_compare(o, out, err);
        if (approx->parsed()) return cmd_approx(o, out, err);
        if (matrix->parsed()) return cmd_matrix(o, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace rmb
