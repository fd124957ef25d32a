#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "rmb/decomposition.hpp"
#include "rmb/polygon.hpp"

namespace rmb {

/// Throws InvalidP unless p lies in (-1, 0), or in (-1, 0) ∪ (0, inf) when extended_range.
void validate_p(double p, bool extended_range = false);

/// Sectors of the plane cut by every line through a vertex difference p_i - p_j.
class ConePartition {
public:
    struct Boundary {
        double angle = 0.0;            // in [0, 2pi)
        std::size_t vertex_a = 0;      // indices into polygon.vertices()
        std::size_t vertex_b = 0;
        bool side_parallel = false;    // p_a, p_b are adjacent extremal vertices
    };

    explicit ConePartition(const ConvexPolygon& polygon);

    const ConvexPolygon& polygon() const noexcept { return polygon_; }
    /// One unit vector per line, angles in [0, pi), increasing.
    const std::vector<Vec2>& directions() const noexcept { return directions_; }
    /// Sector boundaries in increasing angle; sector k is [angle_k, angle_{k+1}).
    const std::vector<Boundary>& boundaries() const noexcept { return boundaries_; }
    std::size_t sector_count() const noexcept { return boundaries_.size(); }

    double sector_begin(std::size_t k) const;
    /// End angle of sector k; may exceed 2pi for the wrapping sector.
    double sector_end(std::size_t k) const;
    double sector_width(std::size_t k) const { return sector_end(k) - sector_begin(k); }
    /// Angular midpoint, used as the representative direction of the sector.
    double sector_mid(std::size_t k) const { return 0.5 * (sector_begin(k) + sector_end(k)); }
    /// Sector owning `angle` (lower sector owns its left endpoint).
    std::size_t locate(double angle) const;

private:
    ConvexPolygon polygon_;
    std::vector<Vec2> directions_;
    std::vector<Boundary> boundaries_;
};

/// (p+1)/(p+2) vol K sum_i alpha_i <n_i, x>^{-p}; x must lie in C_Z' of d.
double f_Z_eval(const Decomposition& d, double p, const Vec2& x, bool extended_range = false);

/// Closed-form evaluation of ||x||_{R_p K} over the whole plane.
///
/// Decompositions are built per sector on first use (thread-safe) or all at
/// once through prebuild(). Copies share the cache.
class NormEvaluator {
public:
    NormEvaluator(const ConvexPolygon& polygon, double p, bool extended_range = false);

    const ConvexPolygon& polygon() const noexcept { return partition_->polygon(); }
    const ConePartition& partition() const noexcept { return *partition_; }
    double p() const noexcept { return p_; }
    bool extended_range() const noexcept { return extended_; }

    double norm(const Vec2& x) const;
    /// Extended-precision evaluation, used by the finite-difference harnesses.
    wide norm_wide(const WideVec2& x) const;
    /// f_Z of the sector owning x, evaluated at x (or -x for flipped sectors).
    wide f_value(const WideVec2& x) const;

    /// Norm computed with the decomposition of sector k, at any x in (or on the
    /// closure of) that sector; used for one-sided limits at sector boundaries.
    wide norm_in_sector(std::size_t k, const WideVec2& x) const;

    /// Closed form of sector k with its zero-weight terms dropped. It is
    /// analytic on a cone that contains the closed sector, so finite-difference
    /// stencils may leave the sector.
    wide extension_in_sector(std::size_t k, const WideVec2& x) const;
    /// Sine of the angular distance from x to the nearest line where a term of
    /// extension_in_sector(k, .) vanishes (capped at 1).
    double analytic_radius(std::size_t k, const WideVec2& x) const;

    const Decomposition& decomposition(std::size_t sector) const;
    void prebuild() const;

private:
    struct Cache;

    std::shared_ptr<const ConePartition> partition_;
    std::shared_ptr<Cache> cache_;
    double p_;
    bool extended_;
};

struct BoundaryPoint {
    double angle = 0.0;
    Vec2 point;
    bool on_cone_boundary = false;
};

/// Points u/||u|| for N uniformly spaced angles (offset by half a step) plus
/// one point on every cone-boundary angle, in increasing angle. Uniform angles
/// within 1e-6 rad of a cone boundary are dropped in favour of the boundary.
std::vector<BoundaryPoint> boundary_sample(const NormEvaluator& ev, int n);

}  // namespace rmb
