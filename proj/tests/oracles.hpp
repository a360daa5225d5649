#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include <Eigen/Dense>
#include <random>

#include "lrh/fft.hpp"
#include "lrh/filters.hpp"
#include "lrh/grid.hpp"
#include "lrh/projection.hpp"

namespace oracles {

using lrh::cplx;

/// Axis-angle to rotation matrix via unit quaternion (independent of the
/// Rodrigues path in the library).
inline lrh::Mat3 quaternion_rotation(const lrh::Vec3& theta) {
    const double a = lrh::vnorm(theta);
    double w = std::cos(a / 2), x = 0, y = 0, z = 0;
    if (a > 0) {
        const double s = std::sin(a / 2) / a;
        x = theta[0] * s;
        y = theta[1] * s;
        z = theta[2] * s;
    }
    lrh::Mat3 r;
    r[0] = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)};
    r[1] = {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)};
    r[2] = {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)};
    return r;
}

inline lrh::Vec3 random_theta(std::mt19937_64& rng, double max_angle = 3.0) {
    std::normal_distribution<double> g;
    lrh::Vec3 ax{g(rng), g(rng), g(rng)};
    const double n = lrh::vnorm(ax);
    std::uniform_real_distribution<double> u(0.05, max_angle);
    const double ang = u(rng);
    return {ax[0] / n * ang, ax[1] / n * ang, ax[2] / n * ang};
}

inline lrh::FourierVolume random_volume(int n, uint64_t seed) {
    lrh::FourierVolume v(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (auto& x : v.raw()) x = cplx(g(rng), g(rng));
    return v;
}

/// Hermitian-symmetric volume, energy confined inside radius `rmax` with a
/// smooth Gaussian falloff.
inline lrh::FourierVolume band_limited_volume(int n, uint64_t seed, double rmax, double width = 0) {
    lrh::RealVolume real(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (auto& x : real.data) x = g(rng);
    auto vol = lrh::forward_fft_3d(real);
    if (width <= 0) width = rmax / 2.0;
    const int c = lrh::center_index(n);
    size_t idx = 0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x, ++idx) {
                const double r = std::sqrt(double((x - c) * (x - c) + (y - c) * (y - c) + (z - c) * (z - c)));
                vol.raw()[idx] *= std::exp(-r * r / (2.0 * width * width));
                if (r > rmax) vol.raw()[idx] = 0;
            }
    return vol;
}

/// Compact real-space phantom (sum of Gaussian blobs inside radius extent),
/// so the Fourier data is smooth on the grid scale and interpolation error
/// statements are meaningful.
inline lrh::FourierVolume blob_volume(int n, uint64_t seed, int nblobs = 4,
                                      double extent = 0.25, double width = 1.6) {
    lrh::RealVolume real(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-extent * n, extent * n);
    std::uniform_real_distribution<double> amp(0.5, 1.5);
    const double c = lrh::center_index(n);
    for (int b = 0; b < nblobs; ++b) {
        const double bx = u(rng), by = u(rng), bz = u(rng), a = amp(rng);
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    const double dx = x - c - bx, dy = y - c - by, dz = z - c - bz;
                    real.at(x, y, z) += a * std::exp(-(dx * dx + dy * dy + dz * dz) / (2 * width * width));
                }
    }
    return lrh::forward_fft_3d(real);
}

/// Resample a volume under rotation: out(f) = vol(R^T f), trilinear on the
/// oversampled grid.
inline lrh::FourierVolume rotate_volume(const lrh::FourierVolume& vol, const lrh::Mat3& rot, int os = 2) {
    const int n = vol.size();
    const lrh::PreparedVolume prep(vol, lrh::InterpolationScheme::trilinear(os));
    const int m = prep.grid_size();
    const int c = lrh::center_index(n), cm = lrh::center_index(m);
    lrh::FourierVolume out(n, vol.voxel_size());
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double f[3] = {double(x - c), double(y - c), double(z - c)};
                double q[3];
                for (int d = 0; d < 3; ++d)
                    q[d] = os * (f[0] * rot[0][d] + f[1] * rot[1][d] + f[2] * rot[2][d]) + cm;
                const auto taps =
                    lrh::proj_detail::taps_at(q, m, lrh::proj_detail::support_lo(m, os), lrh::Interp::Trilinear);
                cplx v = 0;
                for (int t = 0; t < taps.count; ++t) v += taps.weight[t] * prep.grid().data()[taps.index[t]];
                out.at(x, y, z) = v;
            }
    return out;
}

/// Dense matrix of the projection operator, built column by column from
/// basis volumes.
inline Eigen::MatrixXcd dense_operator(int n, const lrh::Pose& pose, const lrh::CtfParams& ctf,
                                       const lrh::InterpolationScheme& scheme) {
    const size_t rows = static_cast<size_t>(n) * n;
    const size_t cols = static_cast<size_t>(n) * n * n;
    Eigen::MatrixXcd p(rows, cols);
    for (size_t k = 0; k < cols; ++k) {
        lrh::FourierVolume basis(n);
        basis.raw()[k] = 1.0;
        const auto img = lrh::project(basis, pose, ctf, scheme);
        for (size_t i = 0; i < rows; ++i) p(i, k) = img.raw()[i];
    }
    return p;
}

inline Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
    Eigen::VectorXcd out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

} // namespace oracles
