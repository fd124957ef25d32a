#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rmb/convexity.hpp"
#include "rmb/error.hpp"
#include "rmb/oracle.hpp"
#include "support.hpp"

using namespace rmb;
using rmb::test::q1;
using rmb::test::t1;
using rmb::test::unit_square;

TEST_SUITE("convexity") {

TEST_CASE("turning test")
{
    std::vector<Vec2> pts;
    for (int i = 0; i < 16; ++i) pts.push_back(unit_from_angle(2 * std::numbers::pi * i / 16));
    const auto ok = turning_test(pts);
    CHECK(ok.min_normalized_cross == doctest::Approx(std::sin(2 * std::numbers::pi / 16)).epsilon(1e-12));

    pts[5] = 0.9 * pts[5];
    const auto dent = turning_test(pts);
    CHECK(dent.min_normalized_cross < 0);
    CHECK(dent.worst_index == 5);

    const std::vector<Vec2> two{{0, 0}, {1, 0}};
    try {
        turning_test(two);
        FAIL("expected TooFewPoints");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooFewPoints);
    }
}

TEST_CASE("hessian harness detects a concave function")
{
    const SmoothPiece piece{0.0, 2 * std::numbers::pi, [](const WideVec2& x) { return -dot(x, x); }, {}};
    const auto r = hessian_scan(std::span<const SmoothPiece>(&piece, 1), 16, 1e-3);
    CHECK(r.min_eigenvalue < -1.0);

    const SmoothPiece bowl{0.0, 2 * std::numbers::pi, [](const WideVec2& x) { return dot(x, x); }, {}};
    CHECK(hessian_scan(std::span<const SmoothPiece>(&bowl, 1), 16, 1e-3).min_eigenvalue > 1.0);
}

TEST_CASE("hessian scan of the norm")
{
    const auto rt = hessian_scan(NormEvaluator(t1(), -0.5), 8, 2e-3);
    CHECK(rt.min_eigenvalue >= -1e-8);
    // Every cone of a triangle has a single weight, so the norm is linear there.
    CHECK(std::abs(rt.min_eigenvalue) <= 1e-8);
    for (double p : {-0.9, -0.5, -0.1}) CHECK(hessian_scan(NormEvaluator(q1(), p), 8, 2e-3).min_eigenvalue >= -1e-7);
}

TEST_CASE("C1 matching and kinks")
{
    const NormEvaluator eq(q1(), -0.5);
    const auto r = c1_boundary_check(eq);
    const Vec2 diag = q1()[2] - q1()[0];
    const Vec2 side = q1()[1] - q1()[0];
    bool saw_diag = false, saw_side = false;
    for (const auto& b : r.boundaries) {
        const Vec2 u = unit_from_angle(b.angle);
        if (std::abs(cross(u, diag)) <= 1e-12 * length(diag)) {
            saw_diag = true;
            CHECK_FALSE(b.side_parallel);
            CHECK(std::abs(b.jump) <= 1e-5);
        }
        if (std::abs(cross(u, side)) <= 1e-12 * length(side)) {
            saw_side = true;
            CHECK(b.side_parallel);
            CHECK(b.jump >= 0);
        }
    }
    CHECK(saw_diag);
    CHECK(saw_side);
    CHECK(r.max_smooth_jump <= 1e-5);
    CHECK(r.min_kink_jump >= 0);

    const auto rt = c1_boundary_check(NormEvaluator(t1(), -0.5));
    CHECK(rt.boundaries.size() == 6);
    for (const auto& b : rt.boundaries) {
        CHECK(b.side_parallel);
        CHECK(b.jump >= 0);
    }
}

TEST_CASE("certify")
{
    const auto cq = certify(q1(), -0.5);
    CHECK(cq.pass);
    CHECK(cq.perturbation_applied == 0.0);
    CHECK(cq.turning_min >= -1e-8);
    CHECK(cq.oracle_max_reldiff <= 1e-9);

    const auto cs = certify(unit_square(), -0.5);
    CHECK(cs.pass);
    CHECK(cs.perturbation_applied == 1e-6);
    CHECK_FALSE(cs.polygon == unit_square());
    // Weights of order 1/delta cancel in the closed form of the perturbed square.
    for (double p : {-0.9, -0.1}) CHECK(certify(unit_square(), p).hessian_min_eig >= -1e-9);

    try {
        certify(q1(), -1.5);
        FAIL("expected InvalidP");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidP);
    }

    CertifyConfig ext;
    ext.extended_range = true;
    CHECK(certify(random_convex_polygon(3, 5, 12), 1.0, ext).pass);
}

TEST_CASE("certificates on random polygons")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        for (double p : {-0.9, -0.5, -0.1}) {
            const auto c = certify(random_convex_polygon(seed, 5, 12), p);
            CHECK(c.pass);
            CHECK(c.turning_min >= -1e-8);
            CHECK(c.boundary_points >= 2048);
        }
}

TEST_CASE("approximation convergence")
{
    const int ms[] = {8, 16, 32, 64};
    const auto disc = disc_convergence(-0.5, ms, 64);
    REQUIRE(disc.rows.size() == 4);
    for (std::size_t i = 1; i < disc.rows.size(); ++i)
        CHECK(disc.rows[i].sup_reldiff < disc.rows[i - 1].sup_reldiff);
    CHECK(disc.non_increasing);
    CHECK(disc.rows.back().sup_reldiff <= 0.01);
    CHECK(disc.rows.back().spread <= 0.01);

    const auto k = q1();
    const auto same = approximation_convergence(
        [&](int) { return k; }, [&](const Vec2& x) { return norm_xray_exact(k, -0.5, x); }, -0.5, ms, 16);
    for (const auto& row : same.rows) CHECK(row.sup_reldiff == 0.0);
}

}  // TEST_SUITE
