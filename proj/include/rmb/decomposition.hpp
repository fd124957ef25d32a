#pragma once

#include <cstddef>
#include <vector>

#include "rmb/polygon.hpp"
#include "rmb/vec2.hpp"

namespace rmb {

using wide = long double;

/// Alternating-vector generation of a polygon for one direction class.
///
/// Indices follow the math with 0-based storage: z[i-1] is z_i (i = 1..m),
/// vertex_chain[i] is p_i (i = 0..m), w[i-1] / n[i-1] / alpha[i-1] are
/// w_i / n_i / alpha_i (i = 1..m-1), and coef[i-2] holds a_i, a~_i, b_i, c_i
/// for i = 2..m-1 (a_1 = a_m = 0 by convention).
///
/// All vectors are stored in extended precision: near-parallel sides make the
/// alpha_i large with cancelling signs, and the evaluator relies on them.
struct Decomposition {
    struct Coefficients {
        wide a = 0;
        wide a_tilde = 0;
        wide b = 0;
        wide c = 0;
    };

    std::vector<WideVec2> z;
    std::vector<WideVec2> vertex_chain;
    /// True for vertices inserted on a side to restore alternation.
    std::vector<bool> synthetic;
    std::vector<WideVec2> w;
    std::vector<WideVec2> n;
    std::vector<Coefficients> coef;
    std::vector<wide> alpha;

    /// Direction the chain is oriented with (x, or -x when flipped).
    WideVec2 direction;
    /// Offset added to the polygon so that its lowest vertex sits at the origin.
    Vec2 translation;
    bool flipped = false;
    double area = 0.0;

    std::size_t m() const noexcept { return z.size(); }

    /// Closed cone C_Z: <y, L z_i> >= -tol |y| |z_i| for all i.
    bool in_closed_cone(const WideVec2& y, wide tol = 0) const;
    /// Open cone C_Z': <y, n_i> > 0 for all i.
    bool in_open_cone(const WideVec2& y) const;
    /// The two binding normals L z_i of C_Z (extreme chain directions).
    std::pair<WideVec2, WideVec2> closed_cone_normals() const;
};

/// Builds the decomposition of K oriented with x. K must be in general
/// position and x strictly inside a cone of the partition.
Decomposition decompose(const ConvexPolygon& polygon, const Vec2& x);

/// Same as decompose() but skips the general-position scan (caller has done it).
Decomposition decompose_unchecked(const ConvexPolygon& polygon, const Vec2& x);

struct CoefficientReport {
    /// max over i of |a~_i + a_i|, |b_i + a_i|, |c_i - (-1)^{i+1}<L z_{i+1}, z_i> - a_i|.
    double max_residual = 0.0;
    /// Scale used for relative comparisons: diameter^2 of the chain.
    double scale = 0.0;
    std::size_t checked = 0;
};

CoefficientReport verify_coefficient_relations(const Decomposition& d);

struct SignReport {
    std::size_t i0 = 0;  // 1-based
    std::size_t positive_count = 0;
    double alpha_sum = 0.0;
    double area2 = 0.0;
    double max_nonpositive = 0.0;
};

/// Exactly one alpha_i is positive and the alphas sum to 2 vol K; throws
/// SignStructureViolated otherwise. tolerance is relative to 2 vol K.
SignReport sign_report(const Decomposition& d, double rel_tol = 1e-9);

struct IntersectionCheckReport {
    /// r_1..r_m: intersections of the lines carrying w_{i-1} and w_i (w_0 = z_1, w_m = z_m).
    std::vector<WideVec2> r;
    /// |cross(r_{i+1} - r_i, z_i)| for i = 1..m-1.
    std::vector<double> parallelogram_areas;
    /// max_i | area_i - |alpha_i| | / max(|alpha_i|, 2 vol K).
    double max_mismatch = 0.0;
};

IntersectionCheckReport intersection_point_check(const Decomposition& d);

}  // namespace rmb
