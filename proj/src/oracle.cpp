#include "rmb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rmb/error.hpp"
#include "rmb/parallel.hpp"
#include "rmb/random.hpp"

namespace rmb {

namespace {

void require_oracle_p(double p)
{
    if (!std::isfinite(p) || !(p > -1.0) || p == 0.0)
        throw Error(ErrorCode::InvalidP, "p must satisfy p > -1 and p != 0");
}

// (b^q - a^q) / (q (b - a)) for 0 <= a <= b, stable as b -> a.
double mean_power(double a, double b, double q)
{
    if (b < a) std::swap(a, b);
    if (a == 0.0) return b == 0.0 ? 0.0 : std::pow(b, q - 1.0) / q;
    if (b - a <= 1e-12 * b) return std::pow(0.5 * (a + b), q - 1.0);
    const double delta = (b - a) / a;
    return std::pow(a, q - 1.0) * std::expm1(q * std::log1p(delta)) / (q * delta);
}

}  // namespace

ChordProfile disc_profile(double radius)
{
    ChordProfile prof;
    prof.t_min = -radius;
    prof.t_max = radius;
    prof.chord = [radius](double t) {
        const double s = radius * radius - t * t;
        return s > 0.0 ? 2.0 * std::sqrt(s) : 0.0;
    };
    return prof;
}

ChordProfile polygon_profile(const ConvexPolygon& polygon, const Vec2& direction)
{
    const Vec2 u = direction / length(direction);
    const Vec2 d = rot_right(u);
    ChordProfile prof;
    prof.t_min = prof.t_max = dot(d, polygon[0]);
    for (const auto& v : polygon.vertices()) {
        prof.t_min = std::min(prof.t_min, dot(d, v));
        prof.t_max = std::max(prof.t_max, dot(d, v));
    }
    prof.chord = [polygon, u](double t) { return xray_length(polygon, u, t); };
    prof.exactness = ChordProfile::Exactness::piecewise_linear;
    return prof;
}

double norm_xray_exact(const ConvexPolygon& polygon, double p, const Vec2& x)
{
    require_oracle_p(p);
    const double len = length(x);
    if (!(len > 0.0)) throw Error(ErrorCode::ZeroDirection, "direction must be non-zero");
    const Vec2 u = x / len;
    const Vec2 d = rot_right(u);

    std::vector<double> levels;
    for (const auto& v : polygon.vertices()) levels.push_back(dot(d, v));
    std::sort(levels.begin(), levels.end());

    // The chord is linear between consecutive vertex levels. Its end values are
    // extrapolated from two interior points: at a level shared by a side
    // parallel to x, the line through the side gives no usable chord.
    const double q = 2.0 + p;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const double width = levels[i + 1] - levels[i];
        if (width <= 0.0) continue;
        const double c1 = xray_length(polygon, u, levels[i] + 0.25 * width);
        const double c3 = xray_length(polygon, u, levels[i] + 0.75 * width);
        const double lo = std::max(0.0, 1.5 * c1 - 0.5 * c3);
        const double hi = std::max(0.0, 1.5 * c3 - 0.5 * c1);
        sum += width * mean_power(lo, hi, q);
    }
    return std::pow((p + 1.0) * polygon.area() * sum, -1.0 / p) * len;
}

McEstimate norm_mc_radial(const ConvexPolygon& polygon, double p, const Vec2& x, std::uint64_t n_samples,
                          std::uint64_t seed)
{
    require_oracle_p(p);
    if (n_samples < 1) throw Error(ErrorCode::BadSampleCount, "need at least one sample");
    if (!(length(x) > 0.0)) throw Error(ErrorCode::ZeroDirection, "direction must be non-zero");

    double minx = polygon[0].x, maxx = minx, miny = polygon[0].y, maxy = miny;
    for (const auto& v : polygon.vertices()) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }
    const double shell = polygon.eps_geom();
    const double xlen = length(x);

    constexpr std::size_t kShards = 64;
    struct Shard {
        long double sum = 0, sum_sq = 0;
        std::uint64_t accepted = 0, rejected = 0;
    };
    std::vector<Shard> shards(kShards);
    parallel_for(kShards, [&](std::size_t s) {
        const std::uint64_t count = n_samples / kShards + (s < n_samples % kShards ? 1 : 0);
        Rng rng = make_rng(seed, s);
        Shard& acc = shards[s];
        while (acc.accepted < count) {
            const Vec2 y{minx + (maxx - minx) * uniform01(rng), miny + (maxy - miny) * uniform01(rng)};
            double rho = std::numeric_limits<double>::infinity();
            bool inside = true;
            for (std::size_t i = 0; i < polygon.size() && inside; ++i) {
                const Vec2 e = polygon.side(i);
                const double slack = cross(e, y - polygon[i]);
                if (slack < 0.0) inside = false;
                const double rate = cross(e, x);
                if (rate < 0.0) rho = std::min(rho, slack / -rate);
            }
            if (!inside) continue;
            if (rho * xlen < shell) {
                ++acc.rejected;
                continue;
            }
            const long double v = std::pow(static_cast<long double>(rho), static_cast<long double>(p));
            acc.sum += v;
            acc.sum_sq += v * v;
            ++acc.accepted;
        }
    });

    long double sum = 0, sum_sq = 0;
    std::uint64_t accepted = 0, rejected = 0;
    for (const auto& s : shards) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        accepted += s.accepted;
        rejected += s.rejected;
    }
    const long double n = static_cast<long double>(accepted);
    const long double mean = sum / n;
    const long double var = n > 1 ? std::max<long double>(0, (sum_sq / n - mean * mean) * n / (n - 1)) : 0;
    const long double se_mean = std::sqrt(var / n);

    McEstimate out;
    out.samples = accepted;
    out.estimate = static_cast<double>(std::pow(mean, -1.0L / p));
    out.stderr_ = static_cast<double>(std::abs(1.0L / p) * std::pow(mean, -1.0L / p - 1.0L) * se_mean);
    out.shell_fraction = static_cast<double>(rejected) / static_cast<double>(accepted + rejected);
    return out;
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_intervals, double* error)
{
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    // Node 0 is the centre; odd nodes are Kronrod-only, even nodes are shared
    // with the 7-point Gauss rule.
    auto panel = [&](double lo, double hi) {
        const auto& x = Kronrod::abscissa();
        const auto& wk = Kronrod::weights();
        const auto& wg = Gauss::weights();
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        const double f0 = f(mid);
        double k = f0 * wk[0];
        double g = f0 * wg[0];
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double pair = f(mid - half * x[i]) + f(mid + half * x[i]);
            k += pair * wk[i];
            if (i % 2 == 0) g += pair * wg[i / 2];
        }
        const double err = std::max(std::abs(k - g), 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
        return Panel{lo, hi, half * k, half * err};
    };

    std::priority_queue<Panel> heap;
    Panel first = panel(a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int intervals = 1;
    while (total_err > abs_tol) {
        if (intervals >= max_intervals)
            throw Error(ErrorCode::QuadratureNoConvergence, "adaptive quadrature did not reach tolerance");
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw Error(ErrorCode::QuadratureNoConvergence, "interval cannot be bisected further");
        const Panel left = panel(worst.a, mid);
        const Panel right = panel(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift of the running update.
    total = 0.0;
    total_err = 0.0;
    std::vector<Panel> panels;
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const auto& pnl : panels) {
        total += pnl.value;
        total_err += pnl.error;
    }
    if (error) *error = total_err;
    return total;
}

double norm_chord_quadrature(const ChordProfile& profile, double vol, double p)
{
    require_oracle_p(p);
    if (!(vol > 0.0)) throw Error(ErrorCode::InvalidArgument, "volume must be positive");
    if (!(profile.t_max > profile.t_min))
        throw Error(ErrorCode::QuadratureNoConvergence, "empty chord support");

    const double width = profile.t_max - profile.t_min;
    double max_chord = 0.0;
    for (int j = 0; j <= 256; ++j)
        max_chord = std::max(max_chord, profile.chord(profile.t_min + width * j / 256.0));
    const double exponent = 1.0 + p;
    const double tol = 1e-12 * width * std::pow(max_chord, exponent);

    auto integrand = [&](double t) {
        const double c = profile.chord(t);
        return c > 0.0 ? std::pow(c, exponent) : 0.0;
    };
    const double integral = adaptive_integrate(integrand, profile.t_min, profile.t_max, tol);
    return std::pow((p + 1.0) * vol * integral, -1.0 / p);
}

}  // namespace rmb
