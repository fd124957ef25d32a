#pragma once

#include <cmath>
#include <numbers>

#include "rmb/polygon.hpp"

namespace rmb::test {

inline ConvexPolygon t1() { return polygon_normalize({{0, 0}, {0, 1}, {1, 1}}); }
inline ConvexPolygon q1() { return polygon_normalize({{0, 0}, {0, 1}, {1.2, 2}, {1, 1}}); }
inline ConvexPolygon unit_square() { return polygon_normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline const Vec2 kDiag{-std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace rmb::test
