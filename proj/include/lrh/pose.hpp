#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace lrh {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Per-image pose: rotation vector (angle = |theta|, axis = theta/|theta|),
/// in-plane offset in pixels, multiplicative contrast.
struct Pose {
    Vec3 theta{0, 0, 0};
    std::array<double, 2> offset{0, 0};
    double contrast = 1.0;
};

inline double vnorm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Mat3 mat_identity() {
    return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

inline Mat3 mat_transpose(const Mat3& a) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
    return t;
}

inline Vec3 mat_vec(const Mat3& a, const Vec3& v) {
    return {a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
            a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
            a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2]};
}

inline Mat3 skew(const Vec3& v) {
    return {{{0, -v[2], v[1]}, {v[2], 0, -v[0]}, {-v[1], v[0], 0}}};
}

/// Rodrigues map: R = I + sin(a)K + (1-cos(a))K^2 with K = skew(theta/a).
inline Mat3 rotation_matrix(const Vec3& theta) {
    const double a = vnorm(theta);
    Mat3 r = mat_identity();
    if (a < 1e-12) {
        // first order is exact enough below the series threshold
        const Mat3 k = skew(theta);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] += k[i][j];
        return r;
    }
    const Vec3 axis = {theta[0] / a, theta[1] / a, theta[2] / a};
    const Mat3 k = skew(axis);
    const Mat3 k2 = mat_mul(k, k);
    const double s = std::sin(a), c = 1.0 - std::cos(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] += s * k[i][j] + c * k2[i][j];
    return r;
}

/// dR/dtheta_d (Gallego-Yezzi closed form), with the small-angle limit
/// dR/dtheta_d -> skew(e_d) below 1e-6.
inline std::array<Mat3, 3> rotation_jacobian(const Vec3& theta) {
    const double a = vnorm(theta);
    std::array<Mat3, 3> out{};
    if (a < 1e-6) {
        for (int d = 0; d < 3; ++d) {
            Vec3 e{0, 0, 0};
            e[d] = 1;
            out[d] = skew(e);
        }
        return out;
    }
    const Mat3 r = rotation_matrix(theta);
    const double a2 = a * a;
    for (int d = 0; d < 3; ++d) {
        Vec3 e{0, 0, 0};
        e[d] = 1;
        // v = theta x (I - R) e_d
        const Vec3 ime = {e[0] - r[0][d], e[1] - r[1][d], e[2] - r[2][d]};
        const Vec3 v = cross(theta, ime);
        Mat3 m = skew({theta[d] * theta[0] / a2 + v[0] / a2,
                       theta[d] * theta[1] / a2 + v[1] / a2,
                       theta[d] * theta[2] / a2 + v[2] / a2});
        out[d] = mat_mul(m, r);
    }
    return out;
}

/// Map theta back into ||theta|| <= pi (equivalent rotation vector).
inline Vec3 rewrap(const Vec3& theta) {
    double a = vnorm(theta);
    if (a <= std::numbers::pi || a == 0) return theta;
    // reduce the angle mod 2*pi, flipping the axis when needed
    double ang = std::fmod(a, 2.0 * std::numbers::pi);
    double scale;
    if (ang > std::numbers::pi)
        scale = (ang - 2.0 * std::numbers::pi) / a;
    else
        scale = ang / a;
    return {theta[0] * scale, theta[1] * scale, theta[2] * scale};
}

/// Geodesic distance between two rotations, radians.
inline double geodesic_distance(const Mat3& a, const Mat3& b) {
    const Mat3 rel = mat_mul(mat_transpose(a), b);
    const double tr = rel[0][0] + rel[1][1] + rel[2][2];
    const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
    return std::acos(c);
}

} // namespace lrh
