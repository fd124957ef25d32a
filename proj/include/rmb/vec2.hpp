#pragma once

#include <cmath>

namespace rmb {

template <typename T>
struct BasicVec2 {
    T x{};
    T y{};

    constexpr BasicVec2() = default;
    constexpr BasicVec2(T x_, T y_) : x(x_), y(y_) {}

    template <typename U>
    constexpr explicit BasicVec2(const BasicVec2<U>& other)
        : x(static_cast<T>(other.x)), y(static_cast<T>(other.y))
    {
    }

    constexpr BasicVec2& operator+=(const BasicVec2& o) { x += o.x; y += o.y; return *this; }
    constexpr BasicVec2& operator-=(const BasicVec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr BasicVec2& operator*=(T s) { x *= s; y *= s; return *this; }

    friend constexpr BasicVec2 operator+(BasicVec2 a, const BasicVec2& b) { return a += b; }
    friend constexpr BasicVec2 operator-(BasicVec2 a, const BasicVec2& b) { return a -= b; }
    friend constexpr BasicVec2 operator-(const BasicVec2& a) { return {-a.x, -a.y}; }
    friend constexpr BasicVec2 operator*(BasicVec2 a, T s) { return a *= s; }
    friend constexpr BasicVec2 operator*(T s, BasicVec2 a) { return a *= s; }
    friend constexpr BasicVec2 operator/(const BasicVec2& a, T s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const BasicVec2&, const BasicVec2&) = default;
};

using Vec2 = BasicVec2<double>;
/// Extended-precision vector used where cancellation-heavy sums are evaluated.
using WideVec2 = BasicVec2<long double>;

template <typename T>
constexpr T dot(const BasicVec2<T>& a, const BasicVec2<T>& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive when b is counter-clockwise from a.
template <typename T>
constexpr T cross(const BasicVec2<T>& a, const BasicVec2<T>& b) { return a.x * b.y - a.y * b.x; }

template <typename T>
T length(const BasicVec2<T>& a) { using std::hypot; return hypot(a.x, a.y); }

template <typename T>
bool is_finite(const BasicVec2<T>& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

enum class Orientation { left, right };

/// Quarter turn: left is counter-clockwise (L), right is clockwise (R = L^-1).
template <typename T>
constexpr BasicVec2<T> rotate(const BasicVec2<T>& v, Orientation o)
{
    return o == Orientation::left ? BasicVec2<T>{-v.y, v.x} : BasicVec2<T>{v.y, -v.x};
}

template <typename T>
constexpr BasicVec2<T> rot_left(const BasicVec2<T>& v) { return {-v.y, v.x}; }

template <typename T>
constexpr BasicVec2<T> rot_right(const BasicVec2<T>& v) { return {v.y, -v.x}; }

inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Angle of v in [0, 2pi).
double angle_of(const Vec2& v);

}  // namespace rmb
