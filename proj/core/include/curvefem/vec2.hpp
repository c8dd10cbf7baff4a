#pragma once

#include <cmath>

namespace curvefem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 normalized(Vec2 a) {
    double n = norm(a);
    return n > 0.0 ? a / n : Vec2{0.0, 0.0};
}

// 90 degree rotations; for a ccw tangent, rotate_cw gives the outward normal.
inline Vec2 rotate_ccw(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 rotate_cw(Vec2 a) { return {a.y, -a.x}; }

/// Dense 2x2 matrix, row major.
struct Matrix2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    static Matrix2 identity() { return {}; }

    Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

    /// xi^T A xi
    double quad(Vec2 xi) const { return dot(xi, (*this) * xi); }

    double symmetry_defect() const { return std::fabs(a12 - a21); }

    // Eigenvalues of the symmetrized matrix, closed form.
    double min_eigenvalue() const {
        double m = 0.5 * (a11 + a22);
        double off = 0.5 * (a12 + a21);
        double d = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + off * off);
        return m - d;
    }
    double max_eigenvalue() const {
        double m = 0.5 * (a11 + a22);
        double off = 0.5 * (a12 + a21);
        double d = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + off * off);
        return m + d;
    }
};

} // namespace curvefem
