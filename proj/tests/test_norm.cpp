#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rmb/decomposition.hpp"
#include "rmb/error.hpp"
#include "rmb/norm_evaluator.hpp"
#include "rmb/oracle.hpp"
#include "rmb/random.hpp"
#include "support.hpp"

using namespace rmb;
using rmb::test::kDiag;
using rmb::test::q1;
using rmb::test::rel;
using rmb::test::t1;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no rmb::Error thrown");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("norm") {

TEST_CASE("cone partition sizes")
{
    CHECK(ConePartition(t1()).sector_count() == 6);
    CHECK(ConePartition(q1()).sector_count() == 12);
    CHECK(code_of([] { ConePartition(rmb::test::unit_square()); }) == ErrorCode::NotGeneralPosition);

    const ConePartition part(q1());
    for (std::size_t k = 0; k < part.sector_count(); ++k) {
        CHECK(part.sector_width(k) > 0);
        CHECK(part.locate(part.sector_mid(k)) == k);
        CHECK(part.locate(part.sector_begin(k)) == k);
    }
}

TEST_CASE("f_Z values")
{
    const double p = -0.5;
    const double ft = f_Z_eval(decompose(t1(), kDiag), p, kDiag);
    CHECK(ft == doctest::Approx(std::pow(2.0, -(2 + p) / 2) / 3).epsilon(1e-14));
    CHECK(ft == doctest::Approx(0.198201).epsilon(1e-6));
    const double fq = f_Z_eval(decompose(q1(), kDiag), p, kDiag);
    CHECK(std::abs(fq - 0.715412970643105) <= 1e-12);

    const auto d = decompose(t1(), kDiag);
    CHECK(code_of([&] { f_Z_eval(d, p, {1, 1}); }) == ErrorCode::OutsideOpenCone);
    CHECK(code_of([&] { f_Z_eval(d, -1.5, kDiag); }) == ErrorCode::InvalidP);
}

TEST_CASE("golden norms")
{
    const NormEvaluator et(t1(), -0.5);
    CHECK(std::abs(et.norm(kDiag) - 0.0392837100659193) <= 1e-12);
    const Vec2 x = Vec2{1, 2} / std::sqrt(5.0);
    CHECK(std::abs(et.norm(x) - 0.0248451997499977) <= 1e-12);
    CHECK(et.norm(-x) == doctest::Approx(et.norm(x)).epsilon(1e-15));

    const NormEvaluator eq(q1(), -0.5);
    CHECK(std::abs(eq.norm(kDiag) - 0.511815718564392) <= 1e-12);
}

TEST_CASE("p validation")
{
    for (double bad : {-1.5, -1.0, 0.0, 0.5, double(NAN), double(INFINITY)})
        CHECK(code_of([&] { validate_p(bad); }) == ErrorCode::InvalidP);
    CHECK_NOTHROW(validate_p(0.5, true));
    CHECK_NOTHROW(validate_p(-0.999));
    CHECK(code_of([] { NormEvaluator(t1(), 1.0); }) == ErrorCode::InvalidP);
    CHECK(code_of([] { NormEvaluator(t1(), -0.5).norm({0, 0}); }) == ErrorCode::ZeroVector);
}

TEST_CASE("boundary sample")
{
    const NormEvaluator ev(t1(), -0.5);
    const auto pts = boundary_sample(ev, 8);
    CHECK(pts.size() == 14);
    std::size_t on_boundary = 0;
    for (const auto& b : pts) {
        CHECK(std::abs(ev.norm(b.point) - 1.0) <= 1e-12);
        on_boundary += b.on_cone_boundary;
    }
    CHECK(on_boundary == 6);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].angle > pts[i - 1].angle);
    CHECK(code_of([&] { boundary_sample(ev, 0); }) == ErrorCode::BadSampleCount);
}

TEST_CASE("closed form agrees with the x-ray oracle")
{
    Rng rng = make_rng(99);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto k = random_convex_polygon(seed, 5, 12);
        for (double p : {-0.9, -0.5, -0.1}) {
            const NormEvaluator ev(k, p);
            for (int j = 0; j < 20; ++j) {
                const Vec2 x = unit_from_angle(2 * std::numbers::pi * uniform01(rng));
                CHECK(rel(ev.norm(x), norm_xray_exact(k, p, x)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("extended range p > 0")
{
    Rng rng = make_rng(17);
    for (double p : {0.5, 1.0}) {
        const auto k = random_convex_polygon(4, 8);
        const NormEvaluator ev(k, p, true);
        for (int j = 0; j < 20; ++j) {
            const Vec2 x = unit_from_angle(2 * std::numbers::pi * uniform01(rng));
            CHECK(rel(ev.norm(x), norm_xray_exact(k, p, x)) <= 1e-10);
        }
        for (const auto& b : ev.partition().boundaries())
            CHECK_NOTHROW(ev.norm(unit_from_angle(b.angle)));
    }
}

TEST_CASE("evenness, homogeneity and continuity")
{
    Rng rng = make_rng(23);
    const auto k = random_convex_polygon(8, 5, 12);
    const NormEvaluator ev(k, -0.5);
    for (int j = 0; j < 50; ++j) {
        const Vec2 x = unit_from_angle(2 * std::numbers::pi * uniform01(rng));
        const double lambda = 0.1 + 5 * uniform01(rng);
        CHECK(rel(ev.norm(-x), ev.norm(x)) <= 1e-12);
        CHECK(rel(ev.norm(lambda * x), lambda * ev.norm(x)) <= 1e-12);
        CHECK(rel(ev.norm(-lambda * x), lambda * ev.norm(x)) <= 1e-12);
    }
    const auto& part = ev.partition();
    const std::size_t n = part.sector_count();
    for (std::size_t k2 = 0; k2 < n; ++k2) {
        const double a = part.sector_begin(k2);
        const WideVec2 u{std::cos(static_cast<wide>(a)), std::sin(static_cast<wide>(a))};
        const double left = static_cast<double>(ev.norm_in_sector((k2 + n - 1) % n, u));
        const double right = static_cast<double>(ev.norm_in_sector(k2, u));
        CHECK(rel(left, right) <= 1e-9);
    }
}

TEST_CASE("monotone in p")
{
    // The power-mean ordering belongs to the radial average, which is the
    // closed form times ((p+1) vol)^{2/p}; that constant depends on p, so the
    // closed form alone is not monotone.
    Rng rng = make_rng(31);
    const auto k = random_convex_polygon(12, 5, 12);
    const double ps[] = {-0.9, -0.7, -0.5, -0.3, -0.1};
    const auto radial = [&](double p, const Vec2& x) {
        return NormEvaluator(k, p).norm(x) * std::pow((p + 1) * area(k), 2 / p);
    };
    for (int j = 0; j < 30; ++j) {
        const Vec2 x = unit_from_angle(2 * std::numbers::pi * uniform01(rng));
        for (std::size_t i = 0; i + 1 < std::size(ps); ++i)
            CHECK(radial(ps[i], x) >= radial(ps[i + 1], x) * (1 - 1e-12));
    }
}

TEST_CASE("scaling law of the implemented normalization")
{
    const auto k = random_convex_polygon(2, 5, 12);
    for (double p : {-0.9, -0.5, -0.1}) {
        for (double lambda : {0.5, 2.0, 3.0}) {
            const NormEvaluator ev(k, p);
            const NormEvaluator es(scaled(k, lambda), p);
            const double expo = (4 + p) / p;  // boundary points scale inversely to the norm
            const auto a = boundary_sample(ev, 64);
            const auto b = boundary_sample(es, 64);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                const Vec2 want = std::pow(lambda, expo) * a[i].point;
                CHECK(length(b[i].point - want) <= 1e-10 * length(want));
            }
        }
    }
}

TEST_CASE("collinear vertices leave the norm unchanged")
{
    const auto k = random_convex_polygon(14, 5, 12);
    const auto k2 = with_point_on_side(k, 0, 0.5);
    const NormEvaluator a(k, -0.5), b(k2, -0.5);
    Rng rng = make_rng(1);
    for (int j = 0; j < 30; ++j) {
        const Vec2 x = unit_from_angle(2 * std::numbers::pi * uniform01(rng));
        CHECK(rel(a.norm(x), b.norm(x)) <= 1e-10);
    }
}

}  // TEST_SUITE
