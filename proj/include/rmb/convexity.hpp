#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rmb/norm_evaluator.hpp"
#include "rmb/polygon.hpp"

namespace rmb {

struct TurningResult {
    double min_normalized_cross = 0.0;
    std::size_t worst_index = 0;
};

/// Minimum over cyclic consecutive triples of the cross product of successive
/// edges divided by their lengths. Positive everywhere means convex position.
TurningResult turning_test(std::span<const Vec2> samples);

struct HessianReport {
    double min_eigenvalue = 0.0;
    Vec2 worst_point;
    std::size_t points = 0;
    std::size_t skipped_sectors = 0;
};

/// Angular interval on which a function is smooth; `eval` is used for every
/// stencil point of grid points inside that interval. When `radius` is set,
/// eval is analytic within angular distance radius(x) of x and stencils may
/// extend past the interval.
struct SmoothPiece {
    double begin = 0.0;
    double end = 0.0;
    std::function<wide(const WideVec2&)> eval;
    std::function<double(const WideVec2&)> radius;
};

/// Central-difference Hessian (steps h and h/2, one Richardson step) at `grid`
/// unit-radius points per piece. Without `radius`, points keep 10h from the
/// piece ends and pieces narrower than 40h use h = width/40; with it, the step
/// at x is min(h, radius(x)/20). Eigenvalues are divided by |g(x)|.
HessianReport hessian_scan(std::span<const SmoothPiece> pieces, int grid, double h);
HessianReport hessian_scan(const NormEvaluator& ev, int per_cone_grid, double h);

struct BoundaryJump {
    double angle = 0.0;
    bool side_parallel = false;
    /// Tangential derivative from the counter-clockwise side minus the one
    /// from the clockwise side, divided by the norm at the boundary.
    double jump = 0.0;
};

struct C1Report {
    std::vector<BoundaryJump> boundaries;
    double max_smooth_jump = 0.0;  // max |jump| over non-side-parallel directions
    double min_kink_jump = 0.0;    // min jump over side-parallel directions
};

C1Report c1_boundary_check(const NormEvaluator& ev, double h = 1e-6);

struct CertifyConfig {
    double eps_turn = 1e-8;
    double eps_hess = 1e-7;
    double eps_c1 = 1e-5;
    double eps_oracle = 1e-9;
    int samples = 2048;
    double delta = 1e-6;
    std::uint64_t seed = 20240601;
    int hessian_grid = 8;
    double hessian_h = 2e-3;
    double c1_h = 1e-6;
    bool extended_range = false;
};

struct ConvexityCertificate {
    ConvexPolygon polygon;
    double p = 0.0;
    double perturbation_applied = 0.0;
    std::size_t boundary_points = 0;
    double turning_min = 0.0;
    std::size_t turning_worst_index = 0;
    double hessian_min_eig = 0.0;
    double c1_max_jump = 0.0;
    double kink_min_jump = 0.0;
    bool kink_signs_ok = false;
    double oracle_max_reldiff = 0.0;
    bool pass = false;
    CertifyConfig config;
};

/// Runs the boundary turning test, Hessian scan, C1/kink checks and an oracle
/// agreement pass on R_p K. Perturbs K first (config.delta, config.seed) when it
/// is not in general position.
ConvexityCertificate certify(const ConvexPolygon& polygon, double p, const CertifyConfig& config = {});

struct ConvergenceRow {
    int m = 0;
    double sup_reldiff = 0.0;
    double spread = 0.0;  // (max - min) / max of the m-th polygon's norms
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    /// Each sup difference is at most 1.1 times the previous one.
    bool non_increasing = true;
};

/// Polygons K_m against a target norm, at `directions` angles pi * frac(j / golden
/// ratio), j = 1..directions, in [0, pi) (the norms are even).
/// Polygon norms use norm_xray_exact, which also accepts parallel sides.
ConvergenceTable approximation_convergence(const std::function<ConvexPolygon(int)>& sequence,
                                           const std::function<double(const Vec2&)>& target, double p,
                                           std::span<const int> m_list, int directions);

/// Inscribed regular m-gons of the unit disc against the disc's chord quadrature.
ConvergenceTable disc_convergence(double p, std::span<const int> m_list, int directions);

}  // namespace rmb
