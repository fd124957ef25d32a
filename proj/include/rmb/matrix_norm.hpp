#pragma once

#include <cstddef>
#include <vector>

namespace rmb {

/// Diagonal entries (singular values) of a 2x2 matrix.
struct DiagonalPoint {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// (mean over the unit circle of (x1^2 v1^2 + x2^2 v2^2)^(p/2))^(1/p), p != 0.
double matrix_pnorm(const DiagonalPoint& pt, double p);

struct MatrixScanRow {
    DiagonalPoint point;
    double min_eigenvalue = 0.0;
};

struct MatrixScanReport {
    std::vector<MatrixScanRow> rows;  // row-major over (x1, x2)
    double min_eigenvalue = 0.0;
    DiagonalPoint worst_point;
};

/// Central-difference Hessian of matrix_pnorm on an n x n grid over [a, b]^2,
/// step h * |x| at each point.
MatrixScanReport matrix_norm_convexity_scan(double p, double a, double b, int n, double h);

}  // namespace rmb
