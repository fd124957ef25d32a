#include "rmb/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rmb/error.hpp"

namespace rmb {

namespace {

enum class Arc { left, right, both };

struct LevelVertex {
    WideVec2 point;
    wide level = 0;
    Arc arc = Arc::both;
};

struct Chain {
    std::vector<WideVec2> points;
    std::vector<bool> synthetic;
    bool leading_insert = false;
};

// Point on a monotone arc (levels strictly increasing) at the given level.
WideVec2 point_on_arc(const std::vector<LevelVertex>& arc, wide level)
{
    for (std::size_t j = 0; j + 1 < arc.size(); ++j) {
        if (arc[j].level <= level && level <= arc[j + 1].level) {
            const wide t = (level - arc[j].level) / (arc[j + 1].level - arc[j].level);
            return arc[j].point + t * (arc[j + 1].point - arc[j].point);
        }
    }
    throw Error(ErrorCode::DegenerateInput, "level outside arc range");
}

Chain build_chain(const ConvexPolygon& polygon, const WideVec2& x)
{
    const WideVec2 d = rot_right(x);
    const std::size_t k = polygon.size();

    std::vector<WideVec2> pts(k);
    std::vector<wide> lv(k);
    for (std::size_t i = 0; i < k; ++i) {
        pts[i] = WideVec2(polygon[i]);
        lv[i] = dot(d, pts[i]);
    }

    // Level ties mean x is parallel to a vertex difference.
    const wide tie_tol = 1e-12L;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::abs(lv[i] - lv[j]) <= tie_tol * length(pts[i] - pts[j]))
                throw Error(ErrorCode::DirectionOnConeBoundary,
                            "direction is parallel to a vertex difference");

    const std::size_t lo = static_cast<std::size_t>(std::min_element(lv.begin(), lv.end()) - lv.begin());
    const std::size_t hi = static_cast<std::size_t>(std::max_element(lv.begin(), lv.end()) - lv.begin());
    const WideVec2 origin = pts[lo];

    // Counter-clockwise from the lowest vertex runs along the right arc (-x side).
    std::vector<LevelVertex> right_arc;
    std::vector<LevelVertex> left_arc;
    for (std::size_t i = lo;; i = (i + 1) % k) {
        right_arc.push_back({pts[i] - origin, lv[i] - lv[lo], Arc::right});
        if (i == hi) break;
    }
    for (std::size_t i = lo;; i = (i + k - 1) % k) {
        left_arc.push_back({pts[i] - origin, lv[i] - lv[lo], Arc::left});
        if (i == hi) break;
    }

    std::vector<LevelVertex> interior;
    for (std::size_t j = 1; j + 1 < right_arc.size(); ++j) interior.push_back(right_arc[j]);
    for (std::size_t j = 1; j + 1 < left_arc.size(); ++j) interior.push_back(left_arc[j]);
    std::sort(interior.begin(), interior.end(),
              [](const LevelVertex& a, const LevelVertex& b) { return a.level < b.level; });

    Chain chain;
    chain.points.push_back({0, 0});
    chain.synthetic.push_back(false);
    wide last_level = 0;
    Arc expected = Arc::left;
    for (const auto& v : interior) {
        if (v.arc != expected) {
            // Two consecutive vertices on one arc: insert a vertex on the other arc between them.
            const wide level = 0.5L * (last_level + v.level);
            const auto& other = expected == Arc::left ? left_arc : right_arc;
            chain.points.push_back(point_on_arc(other, level));
            chain.synthetic.push_back(true);
            if (chain.points.size() == 2) chain.leading_insert = true;
        }
        chain.points.push_back(v.point);
        chain.synthetic.push_back(false);
        last_level = v.level;
        expected = v.arc == Arc::left ? Arc::right : Arc::left;
    }
    chain.points.push_back(pts[hi] - origin);
    chain.synthetic.push_back(false);
    return chain;
}

}  // namespace

bool Decomposition::in_closed_cone(const WideVec2& y, wide tol) const
{
    for (const auto& zi : z)
        if (dot(y, rot_left(zi)) < -tol * length(y) * length(zi)) return false;
    return true;
}

bool Decomposition::in_open_cone(const WideVec2& y) const
{
    return std::all_of(n.begin(), n.end(), [&](const WideVec2& ni) { return dot(y, ni) > 0; });
}

std::pair<WideVec2, WideVec2> Decomposition::closed_cone_normals() const
{
    // All z_i lie in the open half-plane <z, R direction> > 0; the binding
    // constraints come from the most counter-clockwise and most clockwise z_i.
    const WideVec2 d = rot_right(direction);
    auto angle_from_d = [&](const WideVec2& v) { return std::atan2(cross(d, v), dot(d, v)); };
    auto [lo, hi] = std::minmax_element(z.begin(), z.end(), [&](const WideVec2& a, const WideVec2& b) {
        return angle_from_d(a) < angle_from_d(b);
    });
    return {rot_left(*lo), rot_left(*hi)};
}

Decomposition decompose_unchecked(const ConvexPolygon& polygon, const Vec2& x)
{
    const double len = length(x);
    if (!(len > 0.0) || !is_finite(x)) throw Error(ErrorCode::ZeroDirection, "direction must be non-zero");
    WideVec2 u = WideVec2(x) / static_cast<wide>(len);

    Chain chain = build_chain(polygon, u);
    bool flipped = false;
    if (chain.leading_insert) {
        Chain alt = build_chain(polygon, -u);
        if (!alt.leading_insert) {
            chain = std::move(alt);
            u = -u;
            flipped = true;
        }
    }

    Decomposition d;
    d.direction = u;
    d.flipped = flipped;
    d.area = polygon.area();
    {
        const WideVec2 d_dir = rot_right(u);
        std::size_t lo = 0;
        for (std::size_t i = 1; i < polygon.size(); ++i)
            if (dot(d_dir, WideVec2(polygon[i])) < dot(d_dir, WideVec2(polygon[lo]))) lo = i;
        d.translation = -polygon[lo];
    }
    d.vertex_chain = std::move(chain.points);
    d.synthetic = std::move(chain.synthetic);

    const std::size_t m = d.vertex_chain.size() - 1;
    for (std::size_t i = 1; i <= m; ++i) d.z.push_back(d.vertex_chain[i] - d.vertex_chain[i - 1]);
    auto Z = [&](std::size_t i) -> const WideVec2& { return d.z[i - 1]; };
    auto sgn = [](std::size_t i) -> wide { return (i % 2 == 1) ? 1 : -1; };  // (-1)^{i+1}

    const WideVec2 rx = rot_right(u);
    for (std::size_t i = 1; i <= m; ++i)
        if (!(dot(Z(i), rx) > 0)) throw Error(ErrorCode::SignStructureViolated, "chain not oriented with x");
    for (std::size_t i = 1; i < m; ++i)
        if (!(sgn(i) * dot(rot_left(Z(i + 1)), Z(i)) > 0))
            throw Error(ErrorCode::SignStructureViolated, "chain is not alternating");

    for (std::size_t i = 1; i < m; ++i) {
        const WideVec2 wi = Z(i) + Z(i + 1);
        const WideVec2 lw = rot_left(wi);
        d.w.push_back(wi);
        d.n.push_back((sgn(i) / dot(lw, Z(i))) * lw);
    }
    auto N = [&](std::size_t i) -> const WideVec2& { return d.n[i - 1]; };

    for (std::size_t i = 2; i + 1 <= m; ++i) {
        const WideVec2& n1 = N(i - 1);
        const WideVec2& n2 = N(i);
        const wide det = cross(n1, n2);
        if (std::abs(det) <= 1e-15L * length(n1) * length(n2))
            throw Error(ErrorCode::NotGeneralPosition, "consecutive side normals are parallel");
        const WideVec2 t1 = rot_left(Z(i));
        const WideVec2 t2 = rot_left(Z(i + 1));
        Decomposition::Coefficients c;
        c.a = cross(t1, n2) / det;
        c.a_tilde = cross(n1, t1) / det;
        c.b = cross(t2, n2) / det;
        c.c = cross(n1, t2) / det;
        d.coef.push_back(c);
    }
    auto C = [&](std::size_t i) -> const Decomposition::Coefficients& { return d.coef[i - 2]; };

    if (m == 2) {
        d.alpha.push_back(dot(rot_left(Z(2)), Z(1)));
    } else {
        d.alpha.push_back(-C(2).a + dot(rot_left(Z(2)), Z(1)));
        for (std::size_t i = 2; i + 2 <= m; ++i) d.alpha.push_back(C(i + 1).b + C(i).c);
        d.alpha.push_back(C(m - 1).c);
    }
    return d;
}

Decomposition decompose(const ConvexPolygon& polygon, const Vec2& x)
{
    if (!(length(x) > 0.0)) throw Error(ErrorCode::ZeroDirection, "direction must be non-zero");
    if (!general_position_report(polygon).is_general_position)
        throw Error(ErrorCode::NotGeneralPosition, "polygon is not in general position");
    return decompose_unchecked(polygon, x);
}

CoefficientReport verify_coefficient_relations(const Decomposition& d)
{
    CoefficientReport report;
    wide diam = 0;
    for (const auto& p : d.vertex_chain)
        for (const auto& q : d.vertex_chain) diam = std::max(diam, length(p - q));
    report.scale = static_cast<double>(diam * diam);

    const std::size_t m = d.m();
    wide worst = 0;
    for (std::size_t i = 2; i + 1 <= m; ++i) {
        const auto& c = d.coef[i - 2];
        const wide sgn = (i % 2 == 1) ? 1 : -1;
        const wide turn = sgn * dot(rot_left(d.z[i]), d.z[i - 1]);
        worst = std::max({worst, std::abs(c.a_tilde + c.a), std::abs(c.b + c.a), std::abs(c.c - (turn + c.a))});
        ++report.checked;
    }
    report.max_residual = static_cast<double>(worst);
    return report;
}

SignReport sign_report(const Decomposition& d, double rel_tol)
{
    SignReport report;
    report.area2 = 2.0 * d.area;
    const wide tol = static_cast<wide>(rel_tol) * report.area2;
    wide sum = 0;
    wide max_nonpos = -std::numeric_limits<wide>::infinity();
    for (std::size_t i = 0; i < d.alpha.size(); ++i) {
        sum += d.alpha[i];
        if (d.alpha[i] > tol) {
            ++report.positive_count;
            report.i0 = i + 1;
        } else {
            max_nonpos = std::max(max_nonpos, d.alpha[i]);
        }
    }
    report.alpha_sum = static_cast<double>(sum);
    report.max_nonpositive = d.alpha.size() > 1 ? static_cast<double>(max_nonpos) : 0.0;
    if (report.positive_count != 1)
        throw Error(ErrorCode::SignStructureViolated, "expected exactly one positive alpha");
    if (std::abs(report.alpha_sum - report.area2) > rel_tol * report.area2)
        throw Error(ErrorCode::SignStructureViolated, "alpha sum differs from twice the area");
    return report;
}

IntersectionCheckReport intersection_point_check(const Decomposition& d)
{
    IntersectionCheckReport report;
    const std::size_t m = d.m();
    const auto& p = d.vertex_chain;

    // Line carrying w_i: (point, direction) for i = 0..m.
    auto line = [&](std::size_t i) -> std::pair<WideVec2, WideVec2> {
        if (i == 0) return {p[0], d.z[0]};
        if (i == m) return {p[m - 1], d.z[m - 1]};
        return {p[i - 1], d.w[i - 1]};
    };
    for (std::size_t i = 1; i <= m; ++i) {
        const auto [a, u] = line(i - 1);
        const auto [b, v] = line(i);
        const wide den = cross(u, v);
        if (std::abs(den) <= 1e-15L * length(u) * length(v))
            throw Error(ErrorCode::ParallelLines, "side lines do not intersect");
        report.r.push_back(a + (cross(b - a, v) / den) * u);
    }
    const wide area2 = 2 * static_cast<wide>(d.area);
    wide worst = 0;
    for (std::size_t i = 1; i < m; ++i) {
        const wide par = std::abs(cross(report.r[i] - report.r[i - 1], d.z[i - 1]));
        report.parallelogram_areas.push_back(static_cast<double>(par));
        const wide a = std::abs(d.alpha[i - 1]);
        worst = std::max(worst, std::abs(par - a) / std::max(a, area2));
    }
    report.max_mismatch = static_cast<double>(worst);
    return report;
}

}  // namespace rmb
