#include "rmb/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmb/error.hpp"
#include "rmb/oracle.hpp"
#include "rmb/parallel.hpp"

namespace rmb {

namespace {

struct PointEig {
    double eig = std::numeric_limits<double>::infinity();
    Vec2 point;
};

wide min_eigenvalue(wide a, wide b, wide c)
{
    const wide mean = (a + c) / 2;
    const wide dev = std::hypot((a - c) / 2, b);
    return mean - dev;
}

struct Hessian {
    wide xx, xy, yy;
};

Hessian central_hessian(const std::function<wide(const WideVec2&)>& g, const WideVec2& x, wide f0, wide h)
{
    const WideVec2 ex{h, 0}, ey{0, h};
    return {(g(x + ex) - 2 * f0 + g(x - ex)) / (h * h),
            (g(x + ex + ey) - g(x + ex - ey) - g(x - ex + ey) + g(x - ex - ey)) / (4 * h * h),
            (g(x + ey) - 2 * f0 + g(x - ey)) / (h * h)};
}

// Central differences at h and h/2 combined by one Richardson step (O(h^4)).
PointEig hessian_at(const std::function<wide(const WideVec2&)>& g, const WideVec2& x, wide h)
{
    const wide f0 = g(x);
    const Hessian coarse = central_hessian(g, x, f0, h);
    const Hessian fine = central_hessian(g, x, f0, h / 2);
    auto extrapolate = [](wide c, wide f) { return (4 * f - c) / 3; };
    const wide scale = std::abs(f0);
    const wide eig = min_eigenvalue(extrapolate(coarse.xx, fine.xx), extrapolate(coarse.xy, fine.xy),
                                    extrapolate(coarse.yy, fine.yy));
    return {static_cast<double>(eig / scale), Vec2(x)};
}

}  // namespace

TurningResult turning_test(std::span<const Vec2> samples)
{
    const std::size_t n = samples.size();
    if (n < 3) throw Error(ErrorCode::TooFewPoints, "turning test needs at least 3 points");
    TurningResult out{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 e1 = samples[(j + 1) % n] - samples[j];
        const Vec2 e2 = samples[(j + 2) % n] - samples[(j + 1) % n];
        const double denom = length(e1) * length(e2);
        const double value = denom > 0.0 ? cross(e1, e2) / denom : 0.0;
        if (value < out.min_normalized_cross) out = {value, (j + 1) % n};
    }
    return out;
}

HessianReport hessian_scan(std::span<const SmoothPiece> pieces, int grid, double h)
{
    if (grid < 1) throw Error(ErrorCode::InvalidArgument, "grid must be positive");
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be positive");

    std::vector<std::vector<PointEig>> results(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t k) {
        const SmoothPiece& piece = pieces[k];
        const double width = piece.end - piece.begin;
        // Narrow pieces get a proportionally smaller step so the stencil fits.
        const double step = std::min(h, width / 40.0);
        const double margin = piece.radius ? 0.0 : 10.0 * step;
        const double usable = width - 2.0 * margin;
        if (usable <= 0.0 || (!piece.radius && !(step > 1e-3 * h))) return;
        for (int j = 0; j < grid; ++j) {
            const wide a = piece.begin + margin + usable * (j + 0.5) / grid;
            const WideVec2 x{std::cos(a), std::sin(a)};
            const double local = piece.radius ? std::min(h, piece.radius(x) / 20.0) : step;
            if (!(local > 0.0)) continue;
            results[k].push_back(hessian_at(piece.eval, x, local));
        }
    });

    HessianReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
        if (r.empty()) ++report.skipped_sectors;
        for (const auto& pe : r) {
            ++report.points;
            if (pe.eig < report.min_eigenvalue) {
                report.min_eigenvalue = pe.eig;
                report.worst_point = pe.point;
            }
        }
    }
    return report;
}

HessianReport hessian_scan(const NormEvaluator& ev, int per_cone_grid, double h)
{
    const ConePartition& part = ev.partition();
    std::vector<SmoothPiece> pieces;
    for (std::size_t k = 0; k < part.sector_count(); ++k)
        pieces.push_back({part.sector_begin(k), part.sector_end(k),
                          [&ev, k](const WideVec2& x) { return ev.extension_in_sector(k, x); },
                          [&ev, k](const WideVec2& x) { return ev.analytic_radius(k, x); }});
    return hessian_scan(pieces, per_cone_grid, h);
}

C1Report c1_boundary_check(const NormEvaluator& ev, double h)
{
    const ConePartition& part = ev.partition();
    const std::size_t count = part.sector_count();
    C1Report report;
    report.boundaries.resize(count);

    parallel_for(count, [&](std::size_t k) {
        const auto& b = part.boundaries()[k];
        const std::size_t ccw = k;
        const std::size_t cw = (k + count - 1) % count;
        const wide a = b.angle;
        const WideVec2 u{std::cos(a), std::sin(a)};
        const WideVec2 tangent = rot_left(u);
        // Each side uses its own closed form, continued analytically so the
        // stencil may cross sectors narrower than 2h.
        auto g_ccw = [&](const WideVec2& x) { return ev.extension_in_sector(ccw, x); };
        auto g_cw = [&](const WideVec2& x) { return ev.extension_in_sector(cw, x); };

        // Second-order one-sided differences at h and h/2, one Richardson step.
        auto one_sided = [&](auto&& g, wide sign) {
            auto d = [&](wide step) {
                const WideVec2 t = tangent * (sign * step);
                return sign * (-3 * g(u) + 4 * g(u + t) - g(u + 2 * t)) / (2 * step);
            };
            const wide hw = h;
            return (4 * d(hw / 2) - d(hw)) / 3;
        };
        const wide value = (ev.norm_in_sector(ccw, u) + ev.norm_in_sector(cw, u)) / 2;
        const wide d_ccw = one_sided(g_ccw, 1);
        const wide d_cw = one_sided(g_cw, -1);
        report.boundaries[k] = {b.angle, b.side_parallel, static_cast<double>((d_ccw - d_cw) / value)};
    });

    report.min_kink_jump = std::numeric_limits<double>::infinity();
    for (const auto& bj : report.boundaries) {
        if (bj.side_parallel)
            report.min_kink_jump = std::min(report.min_kink_jump, bj.jump);
        else
            report.max_smooth_jump = std::max(report.max_smooth_jump, std::abs(bj.jump));
    }
    return report;
}

ConvexityCertificate certify(const ConvexPolygon& polygon, double p, const CertifyConfig& config)
{
    validate_p(p, config.extended_range);

    ConvexityCertificate cert{.polygon = polygon, .p = p, .config = config};
    if (!general_position_report(polygon).is_general_position) {
        cert.polygon = perturb(polygon, config.delta, config.seed);
        cert.perturbation_applied = config.delta;
    }

    const NormEvaluator ev(cert.polygon, p, config.extended_range);
    ev.prebuild();

    const auto sample = boundary_sample(ev, config.samples);
    std::vector<Vec2> points;
    for (const auto& bp : sample) points.push_back(bp.point);
    cert.boundary_points = points.size();
    const TurningResult turning = turning_test(points);
    cert.turning_min = turning.min_normalized_cross;
    cert.turning_worst_index = turning.worst_index;

    cert.hessian_min_eig = hessian_scan(ev, config.hessian_grid, config.hessian_h).min_eigenvalue;

    const C1Report c1 = c1_boundary_check(ev, config.c1_h);
    cert.c1_max_jump = c1.max_smooth_jump;
    cert.kink_min_jump = c1.min_kink_jump;
    cert.kink_signs_ok = c1.min_kink_jump >= -config.eps_c1;

    std::vector<double> reldiff(sample.size());
    parallel_for(sample.size(), [&](std::size_t i) {
        const Vec2 u = unit_from_angle(sample[i].angle);
        const double oracle = norm_xray_exact(cert.polygon, p, u);
        reldiff[i] = std::abs(ev.norm(u) - oracle) / oracle;
    });
    for (double r : reldiff) cert.oracle_max_reldiff = std::max(cert.oracle_max_reldiff, r);

    cert.pass = cert.turning_min >= -config.eps_turn && cert.hessian_min_eig >= -config.eps_hess &&
                cert.c1_max_jump <= config.eps_c1 && cert.kink_signs_ok &&
                cert.oracle_max_reldiff <= config.eps_oracle;
    return cert;
}

ConvergenceTable approximation_convergence(const std::function<ConvexPolygon(int)>& sequence,
                                           const std::function<double(const Vec2&)>& target, double p,
                                           std::span<const int> m_list, int directions)
{
    validate_p(p);
    if (directions < 1) throw Error(ErrorCode::BadSampleCount, "need at least one direction");

    std::vector<Vec2> dirs;
    std::vector<double> target_values;
    // Golden-ratio sequence: never commensurate with the symmetry of a regular
    // polygon, so the spread column measures the actual anisotropy.
    constexpr double kGolden = 0.6180339887498949;
    for (int j = 0; j < directions; ++j) {
        const double u = std::fmod((j + 1) * kGolden, 1.0);
        dirs.push_back(unit_from_angle(std::numbers::pi * u));
        target_values.push_back(target(dirs.back()));
    }

    ConvergenceTable table;
    table.rows.resize(m_list.size());
    parallel_for(m_list.size(), [&](std::size_t r) {
        const ConvexPolygon km = sequence(m_list[r]);
        double sup = 0.0, lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            const double v = norm_xray_exact(km, p, dirs[j]);
            sup = std::max(sup, std::abs(v - target_values[j]) / target_values[j]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        table.rows[r] = {m_list[r], sup, (hi - lo) / hi};
    });
    for (std::size_t r = 1; r < table.rows.size(); ++r)
        if (table.rows[r].sup_reldiff > 1.1 * table.rows[r - 1].sup_reldiff) table.non_increasing = false;
    return table;
}

ConvergenceTable disc_convergence(double p, std::span<const int> m_list, int directions)
{
    validate_p(p);
    const double disc = norm_chord_quadrature(disc_profile(1.0), std::numbers::pi, p);
    return approximation_convergence([](int m) { return regular_polygon(m, 1.0); },
                                     [disc](const Vec2&) { return disc; }, p, m_list, directions);
}

}  // namespace rmb
