#include "rmb/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "rmb/error.hpp"

namespace rmb {

using nlohmann::json;

namespace {

std::string fmt_num(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }
json vec_json(const WideVec2& v) { return vec_json(Vec2(v)); }

template <class T>
json vec_list(const std::vector<T>& vs)
{
    json out = json::array();
    for (const auto& v : vs) out.push_back(vec_json(v));
    return out;
}

// Distance from y to the boundary when y is inside (negative outside).
double depth(const ConvexPolygon& polygon, const Vec2& y)
{
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2 e = polygon.side(i);
        d = std::min(d, cross(e, y - polygon[i]) / length(e));
    }
    return d;
}

}  // namespace

std::string format_double(double v)
{
    char buf[40];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

ConvexPolygon parse_polygon_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw Error(ErrorCode::MalformedInput, "expected an object with a \"vertices\" array");

    std::vector<Vec2> points;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw Error(ErrorCode::MalformedInput, "each vertex must be an [x, y] number pair");
        points.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    ConvexPolygon polygon = polygon_normalize(points, true);
    for (const auto& y : points)
        if (depth(polygon, y) > polygon.eps_geom())
            throw Error(ErrorCode::MalformedInput, "points are not in convex position");
    return polygon;
}

ConvexPolygon load_polygon(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polygon_json(ss.str());
}

json to_json(const ConvexPolygon& polygon) { return {{"vertices", vec_list(polygon.vertices())}}; }

json to_json(const Decomposition& d)
{
    json coef = json::array();
    for (std::size_t k = 0; k < d.coef.size(); ++k) {
        const auto& c = d.coef[k];
        coef.push_back({{"i", k + 2},
                        {"a", static_cast<double>(c.a)},
                        {"a_tilde", static_cast<double>(c.a_tilde)},
                        {"b", static_cast<double>(c.b)},
                        {"c", static_cast<double>(c.c)}});
    }
    json alpha = json::array();
    for (auto a : d.alpha) alpha.push_back(static_cast<double>(a));
    json synthetic = json::array();
    for (bool s : d.synthetic) synthetic.push_back(s);
    const auto normals = d.closed_cone_normals();
    return {{"m", d.m()},
            {"z", vec_list(d.z)},
            {"vertex_chain", vec_list(d.vertex_chain)},
            {"synthetic", synthetic},
            {"w", vec_list(d.w)},
            {"n", vec_list(d.n)},
            {"coefficients", coef},
            {"alpha", alpha},
            {"cone_closed", json::array({vec_json(normals.first), vec_json(normals.second)})},
            {"cone_open", vec_list(d.n)},
            {"direction", vec_json(d.direction)},
            {"translation", vec_json(d.translation)},
            {"flipped", d.flipped},
            {"area", d.area}};
}

json to_json(const GeneralPositionReport& report)
{
    json sides = json::array();
    for (const auto& [a, b] : report.opposite_parallel_sides) sides.push_back({a, b});
    json pairs = json::array();
    for (const auto& [u, v] : report.parallel_vertex_difference_pairs)
        pairs.push_back({{u.first, u.second}, {v.first, v.second}});
    return {{"has_opposite_parallel_sides", report.has_opposite_parallel_sides},
            {"opposite_parallel_sides", sides},
            {"parallel_vertex_difference_pairs", pairs},
            {"is_general_position", report.is_general_position}};
}

json to_json(const CertifyConfig& c)
{
    return {{"eps_turn", c.eps_turn},       {"eps_hess", c.eps_hess},   {"eps_c1", c.eps_c1},
            {"eps_oracle", c.eps_oracle},   {"samples", c.samples},     {"delta", c.delta},
            {"seed", c.seed},               {"hessian_grid", c.hessian_grid},
            {"hessian_h", c.hessian_h},     {"c1_h", c.c1_h},           {"extended_range", c.extended_range}};
}

json to_json(const ConvexityCertificate& cert)
{
    return {{"polygon", to_json(cert.polygon)},
            {"p", cert.p},
            {"perturbation_applied", cert.perturbation_applied},
            {"boundary_points", cert.boundary_points},
            {"turning_min", cert.turning_min},
            {"turning_worst_index", cert.turning_worst_index},
            {"hessian_min_eig", cert.hessian_min_eig},
            {"c1_max_jump", cert.c1_max_jump},
            {"kink_min_jump", cert.kink_min_jump},
            {"kink_signs_ok", cert.kink_signs_ok},
            {"oracle_max_reldiff", cert.oracle_max_reldiff},
            {"verdict", cert.pass ? "pass" : "fail"},
            {"thresholds", to_json(cert.config)}};
}

json to_json(const RunInfo& info)
{
    return {{"version", kVersion},   {"p", info.p},         {"samples", info.samples},
            {"mc_samples", info.mc_samples}, {"seed", info.seed}, {"delta", info.delta},
            {"extended_range", info.extended_range}};
}

std::string run_info_line(const RunInfo& info)
{
    std::ostringstream os;
    os << "# rmb " << kVersion << " p=" << format_double(info.p) << " samples=" << info.samples
       << " mc_samples=" << info.mc_samples << " seed=" << info.seed << " delta=" << format_double(info.delta)
       << " extended_range=" << (info.extended_range ? 1 : 0);
    return os.str();
}

std::string boundary_csv(const NormEvaluator& ev, const std::vector<BoundaryPoint>& points)
{
    std::ostringstream os;
    os << "angle,bx,by,norm_value\n";
    for (const auto& bp : points)
        os << format_double(bp.angle) << ',' << format_double(bp.point.x) << ','
           << format_double(bp.point.y) << ',' << format_double(ev.norm(bp.point)) << '\n';
    return os.str();
}

namespace {

std::string panel_path(const std::vector<Vec2>& pts, double x0, double y0, double size)
{
    double minx = pts[0].x, maxx = minx, miny = pts[0].y, maxy = miny;
    for (const auto& v : pts) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }
    const double span = std::max(maxx - minx, maxy - miny);
    const double scale = 0.9 * size / span;
    const double cx = 0.5 * (minx + maxx), cy = 0.5 * (miny + maxy);
    std::ostringstream os;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double sx = x0 + 0.5 * size + scale * (pts[i].x - cx);
        const double sy = y0 + 0.5 * size - scale * (pts[i].y - cy);
        os << (i == 0 ? "M" : " L") << fmt_num("%.4f", sx) << ',' << fmt_num("%.4f", sy);
    }
    os << " Z";
    return os.str();
}

}  // namespace

std::string boundary_svg(const ConvexPolygon& polygon, const std::vector<BoundaryPoint>& points, const RunInfo& info)
{
    constexpr double kPanel = 400.0;
    std::vector<Vec2> boundary;
    for (const auto& bp : points) boundary.push_back(bp.point);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"820\" height=\"470\" viewBox=\"0 0 820 470\">\n";
    os << "<desc>" << run_info_line(info).substr(2) << "</desc>\n";
    os << "<path d=\"" << panel_path(polygon.vertices(), 0.0, 0.0, kPanel)
       << "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>\n";
    os << "<path d=\"" << panel_path(boundary, 420.0, 0.0, kPanel)
       << "\" fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"10\" y=\"430\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#1f4e9c\">K ("
       << polygon.size() << " vertices)</text>\n";
    os << "<text x=\"430\" y=\"430\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#b03a2e\">boundary of R_p K, p = "
       << fmt_num("%g", info.p) << ", " << boundary.size() << " points</text>\n";
    os << "<text x=\"10\" y=\"455\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">"
       << "each panel is scaled to fit; seed " << info.seed << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
}

}  // namespace rmb
