#pragma once

#include <cmath>

namespace legendre {

/// Plane vector in the standard basis. The plane carries no inner product of
/// its own; dot() and euclid() are coordinate conveniences only.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

/// The fixed symplectic form [a, b] = a.x b.y - a.y b.x.
constexpr double bracket(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double euclid(Vec2 v) { return std::hypot(v.x, v.y); }
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

/// Counterclockwise quarter turn.
constexpr Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 polar(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    constexpr Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    constexpr Mat2 operator*(const Mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    constexpr double det() const { return a * d - b * c; }

    static Mat2 rotation(double angle) {
        const double cs = std::cos(angle), sn = std::sin(angle);
        return {cs, -sn, sn, cs};
    }
    /// Symmetric rank-one matrix s * u u^T.
    static constexpr Mat2 outer(Vec2 u, double s = 1.0) {
        return {s * u.x * u.x, s * u.x * u.y, s * u.y * u.x, s * u.y * u.y};
    }
};

}  // namespace legendre
