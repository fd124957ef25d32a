#include "rmb/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmb/error.hpp"
#include "rmb/random.hpp"

namespace rmb {

double angle_of(const Vec2& v)
{
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi) a = 0.0;
    return a;
}

namespace {

double max_pairwise_distance(std::span<const Vec2> pts)
{
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, length(pts[i] - pts[j]));
    return d;
}

double shoelace(std::span<const Vec2> v)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * s;
}

// Signed distance of b from the line through a and c (positive: left turn a->b->c).
double turn_distance(const Vec2& a, const Vec2& b, const Vec2& c)
{
    const double base = length(c - a);
    if (base == 0.0) return 0.0;
    return cross(b - a, c - b) / base;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> ccw)
    : vertices_(std::move(ccw)), diameter_(max_pairwise_distance(vertices_)), area_(shoelace(vertices_))
{
}

ConvexPolygon polygon_normalize(std::span<const Vec2> points, bool keep_collinear)
{
    if (points.size() < 3) throw Error(ErrorCode::DegenerateInput, "need at least 3 points");
    for (const auto& p : points)
        if (!is_finite(p)) throw Error(ErrorCode::NonFiniteInput, "non-finite coordinate");

    const double tol = kGeomRelTol * max_pairwise_distance(points);

    std::vector<Vec2> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });

    std::vector<Vec2> unique;
    for (const auto& p : sorted) {
        const bool dup = std::any_of(unique.begin(), unique.end(),
                                     [&](const Vec2& q) { return length(p - q) <= tol; });
        if (!dup) unique.push_back(p);
    }
    if (unique.size() < 3) throw Error(ErrorCode::DegenerateInput, "fewer than 3 distinct points");

    // Andrew's monotone chain; the hull starts at the lexicographically smallest point.
    auto must_pop = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
        const double t = turn_distance(a, b, c);
        return keep_collinear ? t < -tol : t <= tol;
    };
    std::vector<Vec2> hull;
    hull.reserve(2 * unique.size());
    for (const auto& p : unique) {
        while (hull.size() >= 2 && must_pop(hull[hull.size() - 2], hull.back(), p)) hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = unique.rbegin() + 1; it != unique.rend(); ++it) {
        while (hull.size() >= lower && must_pop(hull[hull.size() - 2], hull.back(), *it)) hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();

    if (hull.size() < 3 || shoelace(hull) <= tol * max_pairwise_distance(hull))
        throw Error(ErrorCode::DegenerateInput, "hull has zero area");
    return ConvexPolygon(std::move(hull));
}

double area(const ConvexPolygon& polygon) { return polygon.area(); }

double perimeter(const ConvexPolygon& polygon)
{
    double s = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) s += length(polygon.side(i));
    return s;
}

std::vector<std::size_t> extremal_vertex_indices(const ConvexPolygon& polygon)
{
    const std::size_t n = polygon.size();
    const double tol = polygon.eps_geom();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = polygon.vertex(i + n - 1);
        const Vec2& next = polygon.vertex(i + 1);
        if (turn_distance(prev, polygon[i], next) > tol) out.push_back(i);
    }
    return out;
}

ConvexPolygon strip_collinear(const ConvexPolygon& polygon)
{
    std::vector<Vec2> pts;
    for (auto i : extremal_vertex_indices(polygon)) pts.push_back(polygon[i]);
    return polygon_normalize(pts, false);
}

bool contains(const ConvexPolygon& polygon, const Vec2& x)
{
    const double tol = polygon.eps_geom();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2 e = polygon.side(i);
        if (cross(e, x - polygon[i]) < -tol * length(e)) return false;
    }
    return true;
}

double radial_function(const ConvexPolygon& polygon, const Vec2& x, const Vec2& v)
{
    if (v.x == 0.0 && v.y == 0.0) throw Error(ErrorCode::ZeroDirection, "radial direction is zero");
    if (!contains(polygon, x)) throw Error(ErrorCode::PointOutside, "base point outside polygon");
    double lambda = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2 e = polygon.side(i);
        const double rate = cross(e, v);
        if (rate < 0.0) lambda = std::min(lambda, cross(e, x - polygon[i]) / -rate);
    }
    return std::max(0.0, lambda);
}

double xray_length(const ConvexPolygon& polygon, const Vec2& v, double t)
{
    const double norm_v = length(v);
    if (norm_v == 0.0) throw Error(ErrorCode::ZeroDirection, "x-ray direction is zero");
    const Vec2 u = v / norm_v;
    const Vec2 base = t * rot_right(u);
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2 e = polygon.side(i);
        const double c0 = cross(e, base - polygon[i]);
        const double c1 = cross(e, u);
        if (c1 == 0.0) {
            if (c0 < 0.0) return 0.0;
            continue;
        }
        const double s = -c0 / c1;
        if (c1 > 0.0)
            lo = std::max(lo, s);
        else
            hi = std::min(hi, s);
    }
    return std::max(0.0, hi - lo);
}

GeneralPositionReport general_position_report(const ConvexPolygon& polygon)
{
    GeneralPositionReport report;
    const auto idx = extremal_vertex_indices(polygon);
    const std::size_t k = idx.size();
    auto parallel = [](const Vec2& a, const Vec2& b) {
        return std::abs(cross(a, b)) <= kGeomRelTol * length(a) * length(b);
    };

    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 si = polygon[idx[(i + 1) % k]] - polygon[idx[i]];
        for (std::size_t j = i + 1; j < k; ++j) {
            const Vec2 sj = polygon[idx[(j + 1) % k]] - polygon[idx[j]];
            if (parallel(si, sj)) report.opposite_parallel_sides.emplace_back(idx[i], idx[j]);
        }
    }
    report.has_opposite_parallel_sides = !report.opposite_parallel_sides.empty();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(idx[i], idx[j]);
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        const Vec2 da = polygon[pairs[a].second] - polygon[pairs[a].first];
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const Vec2 db = polygon[pairs[b].second] - polygon[pairs[b].first];
            if (parallel(da, db)) report.parallel_vertex_difference_pairs.emplace_back(pairs[a], pairs[b]);
        }
    }
    report.is_general_position =
        !report.has_opposite_parallel_sides && report.parallel_vertex_difference_pairs.empty();
    return report;
}

ConvexPolygon perturb(const ConvexPolygon& polygon, double delta, std::uint64_t seed, int max_retries)
{
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw Error(ErrorCode::InvalidArgument, "perturbation delta must be >= 0");
    if (delta == 0.0) return polygon;

    const ConvexPolygon base = strip_collinear(polygon);
    const double radius = delta * base.diameter();
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(attempt));
        std::vector<Vec2> pts;
        pts.reserve(base.size());
        for (const auto& v : base.vertices()) {
            const double r = radius * std::sqrt(uniform01(rng));
            const double phi = 2.0 * std::numbers::pi * uniform01(rng);
            pts.push_back(v + Vec2{r * std::cos(phi), r * std::sin(phi)});
        }
        ConvexPolygon candidate = polygon_normalize(pts, false);
        if (candidate.size() != base.size())
            throw Error(ErrorCode::ConvexityLost, "jitter removed a vertex from the hull");
        if (general_position_report(candidate).is_general_position) return candidate;
    }
    throw Error(ErrorCode::PerturbationFailed, "no general-position perturbation found");
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return length(p - (a + t * ab));
}

double directed_hausdorff(const ConvexPolygon& from, const ConvexPolygon& to)
{
    // The distance to a convex set is convex, so the supremum sits at a vertex.
    double worst = 0.0;
    for (const auto& v : from.vertices()) {
        bool inside = true;
        for (std::size_t i = 0; i < to.size(); ++i)
            if (cross(to.side(i), v - to[i]) < 0.0) inside = false;
        if (inside) continue;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < to.size(); ++i)
            d = std::min(d, point_segment_distance(v, to[i], to.vertex(i + 1)));
        worst = std::max(worst, d);
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b)
{
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ConvexPolygon translated(const ConvexPolygon& polygon, const Vec2& offset)
{
    std::vector<Vec2> pts;
    for (const auto& v : polygon.vertices()) pts.push_back(v + offset);
    return polygon_normalize(pts, true);
}

ConvexPolygon scaled(const ConvexPolygon& polygon, double factor)
{
    std::vector<Vec2> pts;
    for (const auto& v : polygon.vertices()) pts.push_back(factor * v);
    return polygon_normalize(pts, true);
}

ConvexPolygon with_point_on_side(const ConvexPolygon& polygon, std::size_t side_index, double fraction)
{
    if (!(fraction > 0.0 && fraction < 1.0))
        throw Error(ErrorCode::InvalidArgument, "side fraction must lie in (0,1)");
    std::vector<Vec2> pts = polygon.vertices();
    const Vec2 a = polygon.vertex(side_index);
    const Vec2 b = polygon.vertex(side_index + 1);
    pts.push_back(a + fraction * (b - a));
    return polygon_normalize(pts, true);
}

ConvexPolygon regular_polygon(int m, double radius, double phase)
{
    if (m < 3) throw Error(ErrorCode::DegenerateInput, "regular polygon needs m >= 3");
    std::vector<Vec2> pts;
    for (int j = 0; j < m; ++j) {
        const double th = phase + 2.0 * std::numbers::pi * j / m;
        pts.push_back({radius * std::cos(th), radius * std::sin(th)});
    }
    return polygon_normalize(pts, false);
}

namespace {

// Valtr: random convex polygon from sorted uniform coordinates.
std::vector<Vec2> valtr_points(Rng& rng, int n)
{
    auto coords = [&] {
        std::vector<double> c(n);
        for (auto& v : c) v = uniform01(rng);
        std::sort(c.begin(), c.end());
        const double lo = c.front();
        const double hi = c.back();
        std::vector<double> steps;
        double last_a = lo;
        double last_b = lo;
        for (int i = 1; i + 1 < n; ++i) {
            if (rng() & 1u) {
                steps.push_back(c[i] - last_a);
                last_a = c[i];
            } else {
                steps.push_back(last_b - c[i]);
                last_b = c[i];
            }
        }
        steps.push_back(hi - last_a);
        steps.push_back(last_b - hi);
        return steps;
    };
    std::vector<double> xs = coords();
    std::vector<double> ys = coords();
    std::shuffle(ys.begin(), ys.end(), rng);

    std::vector<Vec2> vecs;
    for (int i = 0; i < n; ++i) vecs.push_back({xs[i], ys[i]});
    std::sort(vecs.begin(), vecs.end(),
              [](const Vec2& a, const Vec2& b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });

    std::vector<Vec2> pts;
    Vec2 cur{0.0, 0.0};
    for (const auto& v : vecs) {
        pts.push_back(cur);
        cur += v;
    }
    return pts;
}

}  // namespace

ConvexPolygon random_convex_polygon(std::uint64_t seed, int vertex_count)
{
    if (vertex_count < 3) throw Error(ErrorCode::InvalidArgument, "vertex_count must be >= 3");
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        Rng rng = make_rng(seed, 1000 + attempt);
        std::vector<Vec2> pts = valtr_points(rng, vertex_count);
        double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
        for (const auto& p : pts) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        const double s = std::max(maxx - minx, maxy - miny);
        if (!(s > 0.0)) continue;
        for (auto& p : pts) p = Vec2{(p.x - minx) / s, (p.y - miny) / s};
        try {
            ConvexPolygon k = polygon_normalize(pts, false);
            if (static_cast<int>(k.size()) == vertex_count && general_position_report(k).is_general_position)
                return k;
        } catch (const Error&) {
        }
    }
    throw Error(ErrorCode::PerturbationFailed, "could not generate a random polygon");
}

ConvexPolygon random_convex_polygon(std::uint64_t seed, int min_vertices, int max_vertices)
{
    Rng rng = make_rng(seed, 7);
    const int span = max_vertices - min_vertices + 1;
    const int k = min_vertices + static_cast<int>(rng() % static_cast<std::uint64_t>(span));
    return random_convex_polygon(seed, k);
}

}  // namespace rmb
