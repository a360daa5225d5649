#pragma once

#include <cassert>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Centered complex grids. Fourier-domain data is stored with the DC
// coefficient at index floor(N/2) on each axis; the frequency of index i
// is f = i - floor(N/2). The same centering is used in real space (the
// signal's origin sits at the center voxel), which keeps zero-padding
// origin-preserving.

namespace lrh {

using cplx = std::complex<double>;

inline int center_index(int n) { return n / 2; }

/// Square complex image, N x N, centered.
class FourierImage {
public:
    FourierImage() = default;
    explicit FourierImage(int n) : n_(n), data_(static_cast<size_t>(n) * n) {}

    int size() const { return n_; }
    size_t num_elements() const { return data_.size(); }

    cplx& at(int ix, int iy) { return data_[idx(ix, iy)]; }
    const cplx& at(int ix, int iy) const { return data_[idx(ix, iy)]; }

    // frequency-indexed access, f in [-floor(N/2), ceil(N/2)-1]
    cplx& atf(int fx, int fy) { return at(fx + center_index(n_), fy + center_index(n_)); }
    const cplx& atf(int fx, int fy) const { return at(fx + center_index(n_), fy + center_index(n_)); }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::vector<cplx>& raw() { return data_; }
    const std::vector<cplx>& raw() const { return data_; }

    size_t idx(int ix, int iy) const {
        assert(ix >= 0 && ix < n_ && iy >= 0 && iy < n_);
        return static_cast<size_t>(iy) * n_ + ix;
    }

private:
    int n_ = 0;
    std::vector<cplx> data_;
};

/// Cubic complex volume, N x N x N, centered.
class FourierVolume {
public:
    FourierVolume() = default;
    explicit FourierVolume(int n, double voxel_size = 1.0)
        : n_(n), voxel_size_(voxel_size),
          data_(static_cast<size_t>(n) * n * n) {}

    int size() const { return n_; }
    double voxel_size() const { return voxel_size_; }
    void set_voxel_size(double v) { voxel_size_ = v; }
    size_t num_elements() const { return data_.size(); }

    cplx& at(int ix, int iy, int iz) { return data_[idx(ix, iy, iz)]; }
    const cplx& at(int ix, int iy, int iz) const { return data_[idx(ix, iy, iz)]; }

    cplx& atf(int fx, int fy, int fz) {
        const int c = center_index(n_);
        return at(fx + c, fy + c, fz + c);
    }
    const cplx& atf(int fx, int fy, int fz) const {
        const int c = center_index(n_);
        return at(fx + c, fy + c, fz + c);
    }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::vector<cplx>& raw() { return data_; }
    const std::vector<cplx>& raw() const { return data_; }

    size_t idx(int ix, int iy, int iz) const {
        assert(ix >= 0 && ix < n_ && iy >= 0 && iy < n_ && iz >= 0 && iz < n_);
        return (static_cast<size_t>(iz) * n_ + iy) * n_ + ix;
    }

private:
    int n_ = 0;
    double voxel_size_ = 1.0;
    std::vector<cplx> data_;
};

/// Real-space square image, same centering as FourierImage.
struct RealImage {
    int n = 0;
    std::vector<double> data;
    RealImage() = default;
    explicit RealImage(int n_) : n(n_), data(static_cast<size_t>(n_) * n_) {}
    double& at(int ix, int iy) { return data[static_cast<size_t>(iy) * n + ix]; }
    double at(int ix, int iy) const { return data[static_cast<size_t>(iy) * n + ix]; }
};

/// Real-space cubic volume.
struct RealVolume {
    int n = 0;
    std::vector<double> data;
    RealVolume() = default;
    explicit RealVolume(int n_) : n(n_), data(static_cast<size_t>(n_) * n_ * n_) {}
    double& at(int ix, int iy, int iz) { return data[(static_cast<size_t>(iz) * n + iy) * n + ix]; }
    double at(int ix, int iy, int iz) const { return data[(static_cast<size_t>(iz) * n + iy) * n + ix]; }
};

// elementwise helpers shared by the optimizer and tests

inline double norm2(const std::vector<cplx>& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}
inline double norm2(const FourierImage& a) { return norm2(a.raw()); }
inline double norm2(const FourierVolume& a) { return norm2(a.raw()); }

/// <a,b> = sum conj(a) * b
inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    assert(a.size() == b.size());
    cplx s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}
inline cplx inner(const FourierImage& a, const FourierImage& b) { return inner(a.raw(), b.raw()); }
inline cplx inner(const FourierVolume& a, const FourierVolume& b) { return inner(a.raw(), b.raw()); }

inline void axpy(cplx alpha, const std::vector<cplx>& x, std::vector<cplx>& y) {
    assert(x.size() == y.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void check_same_size(int a, int b) {
    if (a != b) throw std::invalid_argument("grid sizes do not match");
}

/// Max relative deviation from Hermitian symmetry over in-grid (f, -f) pairs.
inline double hermitian_deviation(const FourierVolume& v) {
    const int n = v.size();
    const int c = center_index(n);
    const int lo = -c, hi = n - 1 - c;
    double worst = 0, scale = 0;
    for (int fz = lo; fz <= hi; ++fz)
        for (int fy = lo; fy <= hi; ++fy)
            for (int fx = lo; fx <= hi; ++fx) {
                scale = std::max(scale, std::abs(v.atf(fx, fy, fz)));
                if (-fx < lo || -fx > hi || -fy < lo || -fy > hi || -fz < lo || -fz > hi) continue;
                const cplx d = v.atf(fx, fy, fz) - std::conj(v.atf(-fx, -fy, -fz));
                worst = std::max(worst, std::abs(d));
            }
    return scale > 0 ? worst / scale : 0.0;
}

inline double hermitian_deviation(const FourierImage& v) {
    const int n = v.size();
    const int c = center_index(n);
    const int lo = -c, hi = n - 1 - c;
    double worst = 0, scale = 0;
    for (int fy = lo; fy <= hi; ++fy)
        for (int fx = lo; fx <= hi; ++fx) {
            scale = std::max(scale, std::abs(v.atf(fx, fy)));
            if (-fx < lo || -fx > hi || -fy < lo || -fy > hi) continue;
            const cplx d = v.atf(fx, fy) - std::conj(v.atf(-fx, -fy));
            worst = std::max(worst, std::abs(d));
        }
    return scale > 0 ? worst / scale : 0.0;
}

} // namespace lrh
