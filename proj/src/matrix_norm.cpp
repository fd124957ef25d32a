#include "rmb/matrix_norm.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rmb/error.hpp"
#include "rmb/parallel.hpp"

namespace rmb {

namespace {

constexpr int kMaxNodes = 1 << 22;

void check_input(const DiagonalPoint& pt, double p)
{
    if (!std::isfinite(p) || p == 0.0) throw Error(ErrorCode::InvalidP, "p must be finite and non-zero");
    if (!std::isfinite(pt.x1) || !std::isfinite(pt.x2))
        throw Error(ErrorCode::NonFiniteInput, "non-finite matrix entry");
}

// Trapezoid rule on the quarter circle; the integrand is even and pi-periodic.
long double trapezoid_mean(long double x1, long double x2, long double p, int nodes)
{
    const long double a = x1 * x1, b = x2 * x2;
    long double sum = 0;
    for (int j = 0; j < nodes; ++j) {
        const long double t = std::numbers::pi_v<long double> * (j + 0.5L) / (2 * nodes);
        const long double c = std::cos(t), s = std::sin(t);
        sum += std::pow(a * c * c + b * s * s, p / 2);
    }
    return sum / nodes;
}

// Smallest node count whose mean agrees with the doubled count to 1e-13.
int converged_nodes(double x1, double x2, double p)
{
    int nodes = 8;
    long double prev = trapezoid_mean(x1, x2, p, nodes);
    while (nodes < kMaxNodes) {
        const long double next = trapezoid_mean(x1, x2, p, 2 * nodes);
        if (std::abs(next - prev) <= 1e-13L * std::abs(next)) return 2 * nodes;
        prev = next;
        nodes *= 2;
    }
    throw Error(ErrorCode::QuadratureNoConvergence, "trapezoid rule did not converge");
}

// Mean of |cos t|^p over the circle, p > -1.
double mean_abs_cos_power(double p)
{
    return std::tgamma((p + 1.0) / 2.0) / (std::sqrt(std::numbers::pi) * std::tgamma(p / 2.0 + 1.0));
}

}  // namespace

double matrix_pnorm(const DiagonalPoint& pt, double p)
{
    check_input(pt, p);
    const double a = std::abs(pt.x1), b = std::abs(pt.x2);
    if (a == 0.0 || b == 0.0) {
        const double m = std::max(a, b);
        // With a zero entry the integrand is m^p |cos|^p, which is not
        // integrable for p <= -1 (the mean is infinite, the norm 0).
        if (m == 0.0 || p <= -1.0) return 0.0;
        return m * std::pow(mean_abs_cos_power(p), 1.0 / p);
    }
    const int nodes = converged_nodes(a, b, p);
    return static_cast<double>(std::pow(trapezoid_mean(a, b, p, nodes), 1.0L / p));
}

MatrixScanReport matrix_norm_convexity_scan(double p, double a, double b, int n, double h)
{
    if (!std::isfinite(p) || p == 0.0) throw Error(ErrorCode::InvalidP, "p must be finite and non-zero");
    if (n < 1 || !(h > 0.0) || !(a > 0.0) || !(b >= a))
        throw Error(ErrorCode::InvalidArgument, "grid must lie in the open positive quadrant");

    MatrixScanReport report;
    report.rows.resize(static_cast<std::size_t>(n) * n);
    parallel_for(report.rows.size(), [&](std::size_t idx) {
        const std::size_t i = idx / n, j = idx % n;
        const double x1 = n == 1 ? a : a + (b - a) * i / (n - 1);
        const double x2 = n == 1 ? a : a + (b - a) * j / (n - 1);
        // One node count for the whole stencil keeps the discretized norm smooth.
        const int nodes = converged_nodes(x1, x2, p);
        const long double lp = p;
        auto g = [&](long double u, long double v) { return std::pow(trapezoid_mean(u, v, lp, nodes), 1 / lp); };
        const long double s = h * std::hypot(x1, x2);
        const long double f0 = g(x1, x2);
        const long double fxx = (g(x1 + s, x2) - 2 * f0 + g(x1 - s, x2)) / (s * s);
        const long double fyy = (g(x1, x2 + s) - 2 * f0 + g(x1, x2 - s)) / (s * s);
        const long double fxy =
            (g(x1 + s, x2 + s) - g(x1 + s, x2 - s) - g(x1 - s, x2 + s) + g(x1 - s, x2 - s)) / (4 * s * s);
        const long double eig = (fxx + fyy) / 2 - std::hypot((fxx - fyy) / 2, fxy);
        report.rows[idx] = {{x1, x2}, static_cast<double>(eig)};
    });

    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows)
        if (row.min_eigenvalue < report.min_eigenvalue) {
            report.min_eigenvalue = row.min_eigenvalue;
            report.worst_point = row.point;
        }
    return report;
}

}  // namespace rmb
