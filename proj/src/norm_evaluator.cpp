#include "rmb/norm_evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>

#ifdef RMB_HAVE_QUADMATH
#include <quadmath.h>
#endif

#include "rmb/error.hpp"
#include "rmb/parallel.hpp"

namespace rmb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angles closer than this to a sector boundary are treated as boundary directions.
constexpr double kBoundarySnap = 1e-12;
constexpr double kContinuityRelTol = 1e-9;
// Sums whose terms cancel by more than this factor are redone in binary128.
constexpr long double kCancellationLimit = 1e2;

double wrap_angle(double a)
{
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

double circular_distance(double a, double b)
{
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

// Sum with terms where <n_i, y> vanishes handled as limits; `lenient` allows
// y on the boundary of C_Z' (tiny negative inner products count as zero).
wide f_sum(const Decomposition& d, wide p, const WideVec2& y, bool lenient)
{
    const wide area2 = 2 * static_cast<wide>(d.area);
    wide sum = 0;
    for (std::size_t i = 0; i < d.n.size(); ++i) {
        const wide t = dot(d.n[i], y);
        if (t <= 0 && (!lenient || t < -1e-10L * length(d.n[i]) * length(y)))
            throw Error(ErrorCode::OutsideOpenCone, "direction outside the open cone C_Z'");
        // Weights of inserted vertices vanish up to rounding; with p > 0 and
        // t -> 0 their rounding residue would be amplified by t^{-p}.
        if (std::abs(d.alpha[i]) <= 1e-9L * area2) continue;
        if (t <= 0) {
            if (p < 0) continue;
            throw Error(ErrorCode::OutsideOpenCone, "direction on the boundary of C_Z'");
        }
        sum += d.alpha[i] * std::pow(t, -p);
    }
    return (p + 1) / (p + 2) * static_cast<wide>(d.area) * sum;
}

}  // namespace

void validate_p(double p, bool extended_range)
{
    const bool ok = std::isfinite(p) && p > -1.0 && p != 0.0 && (extended_range || p < 0.0);
    if (!ok)
        throw Error(ErrorCode::InvalidP,
                    extended_range ? "p must lie in (-1,0) or (0,inf)" : "p must lie in (-1,0)");
}

ConePartition::ConePartition(const ConvexPolygon& polygon) : polygon_(polygon)
{
    if (!general_position_report(polygon).is_general_position)
        throw Error(ErrorCode::NotGeneralPosition, "cone partition needs a polygon in general position");
    const auto idx = extremal_vertex_indices(polygon);
    const std::size_t k = idx.size();

    std::vector<std::pair<double, Boundary>> lines;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            Vec2 d = polygon[idx[j]] - polygon[idx[i]];
            double a = angle_of(d);
            if (a >= std::numbers::pi) {
                a -= std::numbers::pi;
                d = -d;
            }
            const bool side = (j == i + 1) || (i == 0 && j == k - 1);
            lines.push_back({a, Boundary{a, idx[i], idx[j], side}});
        }
    }
    std::sort(lines.begin(), lines.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [a, b] : lines) directions_.push_back(unit_from_angle(a));
    for (const auto& [a, b] : lines) boundaries_.push_back(b);
    for (const auto& [a, b] : lines) {
        Boundary opposite = b;
        opposite.angle = a + std::numbers::pi;
        boundaries_.push_back(opposite);
    }
}

double ConePartition::sector_begin(std::size_t k) const { return boundaries_.at(k).angle; }

double ConePartition::sector_end(std::size_t k) const
{
    return k + 1 < boundaries_.size() ? boundaries_[k + 1].angle : boundaries_.front().angle + kTwoPi;
}

std::size_t ConePartition::locate(double angle) const
{
    angle = wrap_angle(angle);
    auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), angle,
                               [](double a, const Boundary& b) { return a < b.angle; });
    if (it == boundaries_.begin()) return boundaries_.size() - 1;
    return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

double f_Z_eval(const Decomposition& d, double p, const Vec2& x, bool extended_range)
{
    validate_p(p, extended_range);
    return static_cast<double>(f_sum(d, p, WideVec2(x), false));
}

struct NormEvaluator::Cache {
    explicit Cache(std::size_t n) : slots(n), flags(std::make_unique<std::once_flag[]>(n)) {}
    std::vector<std::optional<Decomposition>> slots;
    std::unique_ptr<std::once_flag[]> flags;
};

NormEvaluator::NormEvaluator(const ConvexPolygon& polygon, double p, bool extended_range)
    : p_(p), extended_(extended_range)
{
    validate_p(p, extended_range);
    partition_ = std::make_shared<const ConePartition>(polygon);
    cache_ = std::make_shared<Cache>(partition_->sector_count());
}

const Decomposition& NormEvaluator::decomposition(std::size_t sector) const
{
    if (sector >= partition_->sector_count()) throw Error(ErrorCode::InvalidArgument, "sector index");
    std::call_once(cache_->flags[sector], [&] {
        const Vec2 mid = unit_from_angle(partition_->sector_mid(sector));
        cache_->slots[sector] = decompose_unchecked(partition_->polygon(), mid);
    });
    return *cache_->slots[sector];
}

void NormEvaluator::prebuild() const
{
    parallel_for(partition_->sector_count(), [&](std::size_t k) { (void)decomposition(k); });
}

wide NormEvaluator::norm_in_sector(std::size_t k, const WideVec2& x) const
{
    const Decomposition& d = decomposition(k);
    const WideVec2 y = d.flipped ? -x : x;
    const wide f = f_sum(d, p_, y, true);
    if (!(f > 0)) throw Error(ErrorCode::SignStructureViolated, "closed form is not positive");
    return std::pow(f, -1 / static_cast<wide>(p_));
}

wide NormEvaluator::extension_in_sector(std::size_t k, const WideVec2& x) const
{
    const Decomposition& d = decomposition(k);
    const WideVec2 y = d.flipped ? -x : x;
    const wide area2 = 2 * static_cast<wide>(d.area);
    const wide p = p_;
    wide sum = 0, magnitude = 0;
    for (std::size_t i = 0; i < d.n.size(); ++i) {
        if (std::abs(d.alpha[i]) <= 1e-9L * area2) continue;
        const wide t = dot(d.n[i], y);
        if (!(t > 0)) throw Error(ErrorCode::OutsideOpenCone, "direction outside the analytic region");
        const wide term = d.alpha[i] * std::pow(t, -p);
        sum += term;
        magnitude += std::abs(term);
    }
#ifdef RMB_HAVE_QUADMATH
    // Near-parallel sides give large weights of both signs; finite-difference
    // stencils divide the resulting cancellation error by h^2.
    if (magnitude > kCancellationLimit * std::abs(sum)) {
        using quad = __float128;
        const quad yx = y.x, yy = y.y, qp = p;
        quad qsum = 0;
        for (std::size_t i = 0; i < d.n.size(); ++i) {
            if (std::abs(d.alpha[i]) <= 1e-9L * area2) continue;
            const quad t = static_cast<quad>(d.n[i].x) * yx + static_cast<quad>(d.n[i].y) * yy;
            qsum += static_cast<quad>(d.alpha[i]) * powq(t, -qp);
        }
        sum = static_cast<wide>(qsum);
    }
#endif
    const wide f = (p + 1) / (p + 2) * static_cast<wide>(d.area) * sum;
    if (!(f > 0)) throw Error(ErrorCode::SignStructureViolated, "closed form is not positive");
    return std::pow(f, -1 / p);
}

double NormEvaluator::analytic_radius(std::size_t k, const WideVec2& x) const
{
    const Decomposition& d = decomposition(k);
    const WideVec2 y = d.flipped ? -x : x;
    const wide area2 = 2 * static_cast<wide>(d.area);
    wide r = 1;
    for (std::size_t i = 0; i < d.n.size(); ++i) {
        if (std::abs(d.alpha[i]) <= 1e-9L * area2) continue;
        r = std::min(r, dot(d.n[i], y) / (length(d.n[i]) * length(y)));
    }
    return static_cast<double>(std::max<wide>(r, 0));
}

wide NormEvaluator::f_value(const WideVec2& x) const
{
    const std::size_t k = partition_->locate(angle_of(Vec2(x)));
    const Decomposition& d = decomposition(k);
    return f_sum(d, p_, d.flipped ? -x : x, true);
}

wide NormEvaluator::norm_wide(const WideVec2& x) const
{
    if (!(length(x) > 0)) throw Error(ErrorCode::ZeroVector, "norm of the zero vector");
    const double angle = angle_of(Vec2(x));
    const std::size_t k = partition_->locate(angle);
    const wide value = norm_in_sector(k, x);

    const std::size_t count = partition_->sector_count();
    std::optional<std::size_t> neighbour;
    if (circular_distance(angle, partition_->sector_begin(k)) <= kBoundarySnap)
        neighbour = (k + count - 1) % count;
    else if (circular_distance(angle, partition_->sector_end(k)) <= kBoundarySnap)
        neighbour = (k + 1) % count;
    if (neighbour) {
        const wide other = norm_in_sector(*neighbour, x);
        if (std::abs(other - value) > kContinuityRelTol * std::abs(value))
            throw Error(ErrorCode::ContinuityViolation, "one-sided limits disagree at a cone boundary");
    }
    return value;
}

double NormEvaluator::norm(const Vec2& x) const { return static_cast<double>(norm_wide(WideVec2(x))); }

std::vector<BoundaryPoint> boundary_sample(const NormEvaluator& ev, int n)
{
    if (n < 3) throw Error(ErrorCode::BadSampleCount, "boundary sample needs N >= 3");
    const auto& bounds = ev.partition().boundaries();

    std::vector<BoundaryPoint> out;
    for (const auto& b : bounds) out.push_back({b.angle, {}, true});
    for (int j = 0; j < n; ++j) {
        const double a = kTwoPi * (j + 0.5) / n;
        const bool near = std::any_of(bounds.begin(), bounds.end(), [&](const ConePartition::Boundary& b) {
            return circular_distance(a, b.angle) <= 1e-6;
        });
        if (!near) out.push_back({a, {}, false});
    }
    std::sort(out.begin(), out.end(), [](const BoundaryPoint& l, const BoundaryPoint& r) { return l.angle < r.angle; });

    parallel_for(out.size(), [&](std::size_t i) {
        const WideVec2 u{std::cos(static_cast<wide>(out[i].angle)), std::sin(static_cast<wide>(out[i].angle))};
        const wide r = ev.norm_wide(u);
        out[i].point = Vec2(u / r);
    });
    return out;
}

}  // namespace rmb
