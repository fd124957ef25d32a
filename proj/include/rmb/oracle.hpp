#pragma once

#include <cstdint>
#include <functional>

#include "rmb/polygon.hpp"

namespace rmb {

/// Chord length X_x K(t) of a convex body as a function of the transverse
/// parameter t, zero outside [t_min, t_max].
struct ChordProfile {
    enum class Exactness { piecewise_linear, generic };

    double t_min = 0.0;
    double t_max = 0.0;
    std::function<double(double)> chord;
    Exactness exactness = Exactness::generic;
};

ChordProfile disc_profile(double radius = 1.0);
ChordProfile polygon_profile(const ConvexPolygon& polygon, const Vec2& direction);

/// ((p+1) vol K sum of exact piece integrals)^(-1/p), where the chord profile
/// in direction x is piecewise linear between vertex levels. Valid for any
/// convex polygon, including ones with parallel sides.
double norm_xray_exact(const ConvexPolygon& polygon, double p, const Vec2& x);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    /// Fraction of in-body samples rejected for lying within eps_geom of the
    /// exit boundary; bounds the bias of the estimate.
    double shell_fraction = 0.0;
    std::uint64_t samples = 0;
};

/// Monte-Carlo estimate of (mean over y in K of rho_K(y, x)^p)^(-1/p) with a
/// delta-method standard error. Sharded over 64 fixed streams, so the result
/// does not depend on the thread count.
McEstimate norm_mc_radial(const ConvexPolygon& polygon, double p, const Vec2& x, std::uint64_t n_samples,
                          std::uint64_t seed);

/// Globally adaptive Gauss-Kronrod (7/15) bisection of f on [a, b]; throws
/// QuadratureNoConvergence when abs_tol is not met within max_intervals.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_intervals = 4000, double* error = nullptr);

/// ((p+1) vol integral of chord^(1+p))^(-1/p) by adaptive quadrature.
double norm_chord_quadrature(const ChordProfile& profile, double vol, double p);

}  // namespace rmb
