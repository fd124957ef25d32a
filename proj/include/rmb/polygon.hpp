#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rmb/vec2.hpp"

namespace rmb {

/// Relative factor for geometric predicates: eps_geom = kGeomRelTol * diameter(K).
inline constexpr double kGeomRelTol = 1e-9;

/// Convex polygon with counter-clockwise vertices, starting at the
/// lexicographically smallest vertex. Collinear (angle-pi) vertices are allowed.
/// Immutable; construct through polygon_normalize().
class ConvexPolygon {
public:
    const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
    const Vec2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    /// Side i as a vector: vertex(i+1) - vertex(i).
    Vec2 side(std::size_t i) const { return vertex(i + 1) - vertex(i); }

    double diameter() const noexcept { return diameter_; }
    double area() const noexcept { return area_; }
    double eps_geom() const noexcept { return kGeomRelTol * diameter_; }

    friend bool operator==(const ConvexPolygon& a, const ConvexPolygon& b)
    {
        return a.vertices_ == b.vertices_;
    }

private:
    friend ConvexPolygon polygon_normalize(std::span<const Vec2>, bool);
    explicit ConvexPolygon(std::vector<Vec2> ccw);

    std::vector<Vec2> vertices_;
    double diameter_ = 0.0;
    double area_ = 0.0;
};

/// Convex hull of `points` as a canonical ConvexPolygon. Points closer than
/// eps_geom are merged; points on hull sides are kept iff keep_collinear.
/// Throws DegenerateInput when the hull has no interior.
ConvexPolygon polygon_normalize(std::span<const Vec2> points, bool keep_collinear = false);

inline ConvexPolygon polygon_normalize(std::initializer_list<Vec2> points, bool keep_collinear = false)
{
    return polygon_normalize(std::span<const Vec2>(points.begin(), points.size()), keep_collinear);
}

double area(const ConvexPolygon& polygon);
double perimeter(const ConvexPolygon& polygon);

/// Vertices with the collinear ones removed, as indices into polygon.vertices().
std::vector<std::size_t> extremal_vertex_indices(const ConvexPolygon& polygon);
ConvexPolygon strip_collinear(const ConvexPolygon& polygon);

/// Largest lambda >= 0 with x + lambda v in K.
double radial_function(const ConvexPolygon& polygon, const Vec2& x, const Vec2& v);

/// Length of K ∩ (t R v + <v>), with v normalised first.
double xray_length(const ConvexPolygon& polygon, const Vec2& v, double t);

/// True when x lies in K up to eps_geom.
bool contains(const ConvexPolygon& polygon, const Vec2& x);

struct GeneralPositionReport {
    bool has_opposite_parallel_sides = false;
    /// Pairs of side indices (into vertices()) lying on distinct parallel lines.
    std::vector<std::pair<std::size_t, std::size_t>> opposite_parallel_sides;
    /// Pairs ((i,j),(k,l)) of vertex-index pairs whose differences are parallel.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>>
        parallel_vertex_difference_pairs;
    bool is_general_position = true;
};

/// Exhaustive parallelism scan over the extremal vertices (collinear vertices do
/// not change the body and are skipped).
GeneralPositionReport general_position_report(const ConvexPolygon& polygon);

/// Seeded jitter of every extremal vertex by at most delta * diameter, retried
/// until the result is in general position. delta == 0 returns the input.
ConvexPolygon perturb(const ConvexPolygon& polygon, double delta, std::uint64_t seed,
                      int max_retries = 64);

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

ConvexPolygon translated(const ConvexPolygon& polygon, const Vec2& offset);
ConvexPolygon scaled(const ConvexPolygon& polygon, double factor);

/// Adds a vertex on side `side_index` at parameter `fraction` in (0,1).
ConvexPolygon with_point_on_side(const ConvexPolygon& polygon, std::size_t side_index, double fraction);

/// Regular m-gon inscribed in the circle of the given radius.
ConvexPolygon regular_polygon(int m, double radius = 1.0, double phase = 0.0);

/// Random convex polygon with exactly `vertex_count` vertices in general
/// position, built from uniform coordinates (Valtr's construction) and scaled
/// into the unit square. Deterministic in `seed`.
ConvexPolygon random_convex_polygon(std::uint64_t seed, int vertex_count);

/// Convenience: vertex count drawn from [min_vertices, max_vertices] by the seed.
ConvexPolygon random_convex_polygon(std::uint64_t seed, int min_vertices, int max_vertices);

}  // namespace rmb
