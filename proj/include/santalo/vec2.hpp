#pragma once

#include <array>
#include <cmath>

namespace santalo {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double norm_sq(const Vec2& a) { return a.x * a.x + a.y * a.y; }
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }  // CCW rotation by 90 degrees
inline Vec2 normalized(const Vec2& a) { double n = norm(a); return {a.x / n, a.y / n}; }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Direction of the k-th of m evenly spaced rays, starting at angle 0.
inline Vec2 unit_dir(int k, int m) {
    double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
    return {std::cos(ang), std::sin(ang)};
}

// Symmetric 2x2 matrix, used for Gaussian kernels and Hessians.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a22 = 1.0;

    Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y}; }
    double quad(const Vec2& v) const { return a11 * v.x * v.x + 2.0 * a12 * v.x * v.y + a22 * v.y * v.y; }
    double det() const { return a11 * a22 - a12 * a12; }
    Mat2 inverse() const {
        double d = det();
        return {a22 / d, -a12 / d, a11 / d};
    }
    bool positive_definite() const { return a11 > 0.0 && det() > 0.0; }
};

}  // namespace santalo
