#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lrh/ctf.hpp"
#include "lrh/fft.hpp"
#include "lrh/filters.hpp"
#include "lrh/grid.hpp"
#include "lrh/pose.hpp"

// Fourier-slice projection. An image frequency (fx, fy) reads the volume at
// the rotated plane coordinate p = R^T (fx, fy, 0); with oversampling the
// lookup happens at os*p on the zero-padded grid prepared by oversample().
// Samples whose interpolation support leaves the grid are zero in project
// and skipped in the adjoint, which keeps the operator pair exactly adjoint.

namespace lrh {

enum class Interp { Nearest, Trilinear };

struct InterpolationScheme {
    Interp kind = Interp::Trilinear;
    int oversampling = 2;

    static InterpolationScheme nearest(int os = 1) { return {Interp::Nearest, os}; }
    static InterpolationScheme trilinear(int os = 2) { return {Interp::Trilinear, os}; }
};

/// Volume readied for slicing: the oversampled grid plus its provenance.
class PreparedVolume {
public:
    PreparedVolume() = default;
    PreparedVolume(const FourierVolume& vol, const InterpolationScheme& scheme)
        : n_(vol.size()), scheme_(scheme), big_(oversample(vol, scheme.oversampling)) {}

    int source_size() const { return n_; }
    int grid_size() const { return big_.size(); }
    const InterpolationScheme& scheme() const { return scheme_; }
    const FourierVolume& grid() const { return big_; }

private:
    int n_ = 0;
    InterpolationScheme scheme_{};
    FourierVolume big_;
};

namespace proj_detail {

struct Taps {
    int count = 0;           // 0 when the support leaves the grid
    size_t index[8];
    double weight[8];
};

// Lowest usable index. On an even oversampled grid the index-0 planes have
// no Friedel partner and hold only padding ripple beyond the source Nyquist,
// so they are excluded; with no oversampling they carry the -N/2 signal row
// and stay in.
inline int support_lo(int m, int os) { return (os > 1 && m % 2 == 0) ? 1 : 0; }

inline Taps taps_at(const double q[3], int m, int lo, Interp kind) {
    Taps t;
    if (kind == Interp::Nearest) {
        int k[3];
        for (int d = 0; d < 3; ++d) {
            k[d] = static_cast<int>(std::floor(q[d] + 0.5));
            if (k[d] < lo || k[d] > m - 1) return t;
        }
        t.count = 1;
        t.index[0] = (static_cast<size_t>(k[2]) * m + k[1]) * m + k[0];
        t.weight[0] = 1.0;
        return t;
    }
    int i0[3];
    double fr[3];
    for (int d = 0; d < 3; ++d) {
        const double fl = std::floor(q[d]);
        i0[d] = static_cast<int>(fl);
        fr[d] = q[d] - fl;
        if (i0[d] < lo || i0[d] + 1 > m - 1) return t;
    }
    const double wx[2] = {1.0 - fr[0], fr[0]};
    const double wy[2] = {1.0 - fr[1], fr[1]};
    const double wz[2] = {1.0 - fr[2], fr[2]};
    int c = 0;
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) {
                t.index[c] = (static_cast<size_t>(i0[2] + dz) * m + (i0[1] + dy)) * m + (i0[0] + dx);
                t.weight[c] = wx[dx] * wy[dy] * wz[dz];
                ++c;
            }
    t.count = 8;
    return t;
}

// trilinear value and its gradient w.r.t. the continuous coordinate
inline bool grad_at(const double q[3], int m, int lo, const cplx* grid, cplx& value, cplx grad[3]) {
    int i0[3];
    double fr[3];
    for (int d = 0; d < 3; ++d) {
        const double fl = std::floor(q[d]);
        i0[d] = static_cast<int>(fl);
        fr[d] = q[d] - fl;
        if (i0[d] < lo || i0[d] + 1 > m - 1) return false;
    }
    cplx c[2][2][2];
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx)
                c[dz][dy][dx] = grid[(static_cast<size_t>(i0[2] + dz) * m + (i0[1] + dy)) * m + (i0[0] + dx)];
    const double tx = fr[0], ty = fr[1], tz = fr[2];
    auto lerp = [](cplx a, cplx b, double t) { return a + (b - a) * t; };
    // collapse x, then y, then z; gradients by differentiating each stage
    cplx cx[2][2], gx[2][2];
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy) {
            cx[dz][dy] = lerp(c[dz][dy][0], c[dz][dy][1], tx);
            gx[dz][dy] = c[dz][dy][1] - c[dz][dy][0];
        }
    cplx cy[2], gy_x[2], gy_y[2];
    for (int dz = 0; dz < 2; ++dz) {
        cy[dz] = lerp(cx[dz][0], cx[dz][1], ty);
        gy_x[dz] = lerp(gx[dz][0], gx[dz][1], ty);
        gy_y[dz] = cx[dz][1] - cx[dz][0];
    }
    value = lerp(cy[0], cy[1], tz);
    grad[0] = lerp(gy_x[0], gy_x[1], tz);
    grad[1] = lerp(gy_y[0], gy_y[1], tz);
    grad[2] = cy[1] - cy[0];
    return true;
}

} // namespace proj_detail

/// Bare interpolating slice through the prepared grid, no CTF/phase/contrast.
inline FourierImage slice(const PreparedVolume& prep, const Mat3& rot) {
    const int n = prep.source_size();
    const int m = prep.grid_size();
    const int os = prep.scheme().oversampling;
    const int c = center_index(n), cm = center_index(m);
    const int lo = proj_detail::support_lo(m, os);
    const cplx* grid = prep.grid().data();
    FourierImage out(n);
    for (int iy = 0; iy < n; ++iy) {
        const double fy = iy - c;
        for (int ix = 0; ix < n; ++ix) {
            const double fx = ix - c;
            double q[3];
            for (int d = 0; d < 3; ++d) q[d] = os * (fx * rot[0][d] + fy * rot[1][d]) + cm;
            const auto taps = proj_detail::taps_at(q, m, lo, prep.scheme().kind);
            cplx v = 0;
            for (int t = 0; t < taps.count; ++t) v += taps.weight[t] * grid[taps.index[t]];
            out.at(ix, iy) = v;
        }
    }
    return out;
}

/// Per-pixel diagonal factor a * C(|f|) * exp(-2*pi*i f.t / N).
inline std::vector<cplx> diag_weights(int n, const Pose& pose, const CtfParams& ctf,
                                      double voxel_size, bool with_phase = true) {
    const int c = center_index(n);
    std::vector<cplx> w(static_cast<size_t>(n) * n);
    size_t idx = 0;
    for (int iy = 0; iy < n; ++iy) {
        const double fy = iy - c;
        for (int ix = 0; ix < n; ++ix, ++idx) {
            const double fx = ix - c;
            const double k = std::sqrt(fx * fx + fy * fy) / (n * voxel_size);
            double re = pose.contrast * ctf.eval(k);
            if (with_phase) {
                const double ph = -2.0 * kPi * (fx * pose.offset[0] + fy * pose.offset[1]) / n;
                w[idx] = std::polar(re, ph);
            } else {
                w[idx] = re;
            }
        }
    }
    return w;
}

/// Full forward operator P = a C T_t P_phi applied to a prepared volume.
inline FourierImage project(const PreparedVolume& prep, const Pose& pose, const CtfParams& ctf) {
    FourierImage img = slice(prep, rotation_matrix(pose.theta));
    const auto w = diag_weights(prep.source_size(), pose, ctf, prep.grid().voxel_size());
    for (size_t i = 0; i < img.raw().size(); ++i) img.raw()[i] *= w[i];
    return img;
}

inline FourierImage project(const FourierVolume& vol, const Pose& pose, const CtfParams& ctf,
                            const InterpolationScheme& scheme) {
    return project(PreparedVolume(vol, scheme), pose, ctf);
}

/// Accumulates slice adjoints on the oversampled grid; collapse() applies
/// the oversampling adjoint once for the whole batch.
class SliceAdjointAccumulator {
public:
    SliceAdjointAccumulator(int n, const InterpolationScheme& scheme, double voxel_size = 1.0)
        : n_(n), scheme_(scheme), voxel_size_(voxel_size),
          grid_(static_cast<size_t>(scheme.oversampling) * n * scheme.oversampling * n *
                    scheme.oversampling * n,
                cplx(0)) {}

    int source_size() const { return n_; }

    /// y -> scatter of conj(diag) * y at the slice taps (exact adjoint of project)
    void add(const FourierImage& img, const Pose& pose, const CtfParams& ctf) {
        check_same_size(img.size(), n_);
        const auto w = diag_weights(n_, pose, ctf, voxel_size_);
        add_weighted(img, rotation_matrix(pose.theta), w);
    }

    /// variant with caller-supplied diagonal weights (already conjugated upstream? no:
    /// weights given as the forward diag; conjugation happens here)
    void add_weighted(const FourierImage& img, const Mat3& rot, const std::vector<cplx>& fwd_diag) {
        const int n = n_;
        const int os = scheme_.oversampling;
        const int m = os * n;
        const int c = center_index(n), cm = center_index(m);
        const int lo = proj_detail::support_lo(m, os);
        size_t idx = 0;
        for (int iy = 0; iy < n; ++iy) {
            const double fy = iy - c;
            for (int ix = 0; ix < n; ++ix, ++idx) {
                const cplx val = std::conj(fwd_diag[idx]) * img.raw()[idx];
                if (val == cplx(0)) continue;
                const double fx = ix - c;
                double q[3];
                for (int d = 0; d < 3; ++d) q[d] = os * (fx * rot[0][d] + fy * rot[1][d]) + cm;
                const auto taps = proj_detail::taps_at(q, m, lo, scheme_.kind);
                for (int t = 0; t < taps.count; ++t) grid_[taps.index[t]] += taps.weight[t] * val;
            }
        }
    }

    void merge(const SliceAdjointAccumulator& other) {
        for (size_t i = 0; i < grid_.size(); ++i) grid_[i] += other.grid_[i];
    }

    void reset() { std::fill(grid_.begin(), grid_.end(), cplx(0)); }

    FourierVolume collapse() const {
        const int m = scheme_.oversampling * n_;
        FourierVolume big(m, voxel_size_);
        big.raw() = grid_;
        return oversample_adjoint(big, scheme_.oversampling, n_);
    }

private:
    int n_;
    InterpolationScheme scheme_;
    double voxel_size_;
    std::vector<cplx> grid_;
};

/// Exact adjoint of project for a single image.
inline FourierVolume backproject(const FourierImage& img, const Pose& pose, const CtfParams& ctf,
                                 const InterpolationScheme& scheme, double voxel_size = 1.0) {
    SliceAdjointAccumulator acc(img.size(), scheme, voxel_size);
    acc.add(img, pose, ctf);
    return acc.collapse();
}

/// d project / d theta_d for d = 0,1,2, trilinear only (nearest is not
/// differentiable in the rotation).
inline std::array<FourierImage, 3> project_jacobian_theta(const PreparedVolume& prep,
                                                          const Pose& pose, const CtfParams& ctf) {
    if (prep.scheme().kind != Interp::Trilinear)
        throw std::invalid_argument("project_jacobian_theta: trilinear scheme required");
    const int n = prep.source_size();
    const int m = prep.grid_size();
    const int os = prep.scheme().oversampling;
    const int c = center_index(n), cm = center_index(m);
    const int lo = proj_detail::support_lo(m, os);
    const cplx* grid = prep.grid().data();
    const Mat3 rot = rotation_matrix(pose.theta);
    const auto drot = rotation_jacobian(pose.theta);
    const auto w = diag_weights(n, pose, ctf, prep.grid().voxel_size());

    std::array<FourierImage, 3> out{FourierImage(n), FourierImage(n), FourierImage(n)};
    size_t idx = 0;
    for (int iy = 0; iy < n; ++iy) {
        const double fy = iy - c;
        for (int ix = 0; ix < n; ++ix, ++idx) {
            const double fx = ix - c;
            double q[3];
            for (int d = 0; d < 3; ++d) q[d] = os * (fx * rot[0][d] + fy * rot[1][d]) + cm;
            cplx value, grad[3];
            if (!proj_detail::grad_at(q, m, lo, grid, value, grad)) continue;
            for (int d = 0; d < 3; ++d) {
                // dq/dtheta_d = os * (dR/dtheta_d)^T (fx, fy, 0)
                cplx s = 0;
                for (int a = 0; a < 3; ++a)
                    s += grad[a] * (os * (fx * drot[d][0][a] + fy * drot[d][1][a]));
                out[d].raw()[idx] = w[idx] * s;
            }
        }
    }
    return out;
}

} // namespace lrh
