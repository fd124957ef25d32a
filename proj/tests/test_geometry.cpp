#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rmb/error.hpp"
#include "rmb/polygon.hpp"
#include "rmb/random.hpp"
#include "support.hpp"

using namespace rmb;
using rmb::test::q1;
using rmb::test::t1;
using rmb::test::unit_square;

TEST_SUITE("geometry") {

TEST_CASE("quarter turns")
{
    CHECK(rotate(Vec2{1, 0}, Orientation::left) == Vec2{0, 1});
    CHECK(rotate(Vec2{1, 0}, Orientation::right) == Vec2{0, -1});
    CHECK(rot_left(rot_right(Vec2{3, -2})) == Vec2{3, -2});

    Rng rng = make_rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec2 v{uniform01(rng) * 4 - 2, uniform01(rng) * 4 - 2};
        CHECK(rotate(rotate(v, Orientation::left), Orientation::left) == -v);
    }
}

TEST_CASE("normalize orders counter-clockwise from the lowest-left vertex")
{
    const auto k = polygon_normalize({{1, 1}, {0, 0}, {1.2, 2}, {0, 1}});
    const std::vector<Vec2> expected{{0, 0}, {1, 1}, {1.2, 2}, {0, 1}};
    CHECK(k.vertices() == expected);
}

TEST_CASE("collinear points are kept on request")
{
    const std::vector<Vec2> pts{{0, 0}, {0, 1}, {1, 1}, {0.5, 0.5}};
    CHECK(polygon_normalize(pts, true).size() == 4);
    CHECK(polygon_normalize(pts, false).size() == 3);
    CHECK(polygon_normalize(pts, true).vertices()[1] == Vec2{0.5, 0.5});
}

TEST_CASE("degenerate and non-finite input")
{
    const std::vector<Vec2> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK_THROWS_AS(polygon_normalize(line), Error);
    try {
        polygon_normalize(line);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateInput);
    }
    try {
        polygon_normalize({{0, 0}, {1, 0}, {0, NAN}});
        FAIL("expected NonFiniteInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFiniteInput);
    }
}

TEST_CASE("area")
{
    CHECK(area(t1()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(area(q1()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(area(unit_square()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("radial function")
{
    CHECK(radial_function(t1(), {0.25, 0.5}, {1, 0}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(radial_function(t1(), {0, 0.5}, {1, 0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(radial_function(t1(), {0, 0.5}, {-1, 0}) == 0.0);
}

TEST_CASE("x-ray length")
{
    const Vec2 v{-std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
    const double t = dot(rot_right(v), Vec2{0, 1});
    CHECK(xray_length(t1(), v, t) == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-14));
    CHECK(xray_length(t1(), {0, 1}, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(xray_length(t1(), {0, 1}, 5.0) == 0.0);
}

TEST_CASE("x-ray evenness and radial sums")
{
    Rng rng = make_rng(5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto k = random_convex_polygon(seed, 5, 12);
        for (int j = 0; j < 20; ++j) {
            const Vec2 v = unit_from_angle(2 * std::numbers::pi * uniform01(rng));
            const double t = uniform01(rng) - 0.5;
            CHECK(std::abs(xray_length(k, v, t) - xray_length(k, -v, -t)) <= 1e-12);

            Vec2 c{0, 0};
            for (const auto& q : k.vertices()) c += q;
            c = c / static_cast<double>(k.size());
            const Vec2 x = c + 0.3 * (k[0] - c);
            const double through = xray_length(k, v, dot(rot_right(v), x));
            CHECK(std::abs(radial_function(k, x, v) + radial_function(k, x, -v) - through) <= 1e-9 * k.diameter());
        }
    }
}

TEST_CASE("general position")
{
    const auto sq = general_position_report(unit_square());
    CHECK(sq.has_opposite_parallel_sides);
    CHECK_FALSE(sq.is_general_position);
    CHECK(general_position_report(q1()).is_general_position);
    CHECK(general_position_report(t1()).is_general_position);
    // A collinear vertex does not change the body.
    CHECK(general_position_report(with_point_on_side(q1(), 0, 0.3)).is_general_position);
}

TEST_CASE("perturbation")
{
    const auto sq = unit_square();
    const auto out = perturb(sq, 1e-6, 42);
    CHECK(general_position_report(out).is_general_position);
    CHECK(hausdorff_distance(sq, out) <= 1e-6 * sq.diameter());
    CHECK(perturb(q1(), 0.0, 42) == q1());
    CHECK(perturb(sq, 1e-6, 42) == out);

    for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const auto k = perturb(sq, delta, 7);
        CHECK(std::abs(area(k) - area(sq)) <= 10 * delta * perimeter(sq) * sq.diameter());
    }
}

TEST_CASE("random polygons are seeded and in general position")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto k = random_convex_polygon(seed, 5, 12);
        CHECK(k.size() >= 5);
        CHECK(k.size() <= 12);
        CHECK(general_position_report(k).is_general_position);
        CHECK(random_convex_polygon(seed, 5, 12) == k);
    }
}

}  // TEST_SUITE
