#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "lrh/grid.hpp"

// Centered, unitarily normalized transforms on top of FFTW. The centered
// convention is fftshift(FFT(ifftshift(x))) so that the stored array is
// centered on both sides; unitary scaling makes Parseval hold exactly and
// the inverse equal the adjoint.
//
// Plans are cached per (rank, size, direction) with FFTW_ESTIMATE (planning
// is deterministic) and FFTW_UNALIGNED, and executed with the new-array
// interface, which is safe to call concurrently on distinct buffers.

namespace lrh {

namespace fftdetail {

inline fftw_plan get_plan(int rank, int n, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_tuple(rank, n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    size_t total = 1;
    for (int d = 0; d < rank; ++d) total *= static_cast<size_t>(n);
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan = rank == 2
        ? fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

// dst[i] = src[(i + c) mod n] per axis (ifftshift); fftshift is the inverse.
template <int Rank>
inline void shift_copy(const cplx* src, cplx* dst, int n, bool inverse_shift) {
    const int c = center_index(n);
    const int off = inverse_shift ? c : (n - c);
    auto map = [&](int i) { return (i + off) % n; };
    if constexpr (Rank == 2) {
        for (int y = 0; y < n; ++y) {
            const size_t ym = static_cast<size_t>(map(y)) * n;
            const size_t yo = static_cast<size_t>(y) * n;
            for (int x = 0; x < n; ++x) dst[yo + x] = src[ym + map(x)];
        }
    } else {
        for (int z = 0; z < n; ++z) {
            const size_t zm = static_cast<size_t>(map(z)) * n;
            for (int y = 0; y < n; ++y) {
                const size_t ym = (zm + map(y)) * n;
                const size_t yo = (static_cast<size_t>(z) * n + y) * n;
                for (int x = 0; x < n; ++x) dst[yo + x] = src[ym + map(x)];
            }
        }
    }
}

template <int Rank>
inline void centered_fft(std::vector<cplx>& data, int n, bool forward) {
    size_t total = 1;
    for (int d = 0; d < Rank; ++d) total *= static_cast<size_t>(n);
    if (data.size() != total) throw std::invalid_argument("centered_fft: size mismatch");

    std::vector<cplx> work(total);
    shift_copy<Rank>(data.data(), work.data(), n, true);
    fftw_plan plan = get_plan(Rank, n, forward ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
    fftw_execute_dft(plan, ptr, ptr);
    shift_copy<Rank>(work.data(), data.data(), n, false);

    const double scale = 1.0 / std::sqrt(static_cast<double>(total));
    for (auto& v : data) v *= scale;
}

} // namespace fftdetail

/// Centered unitary 2-D transform, in place. forward=false is the inverse.
inline void cfft2(std::vector<cplx>& data, int n, bool forward) {
    fftdetail::centered_fft<2>(data, n, forward);
}

/// Centered unitary 3-D transform, in place.
inline void cfft3(std::vector<cplx>& data, int n, bool forward) {
    fftdetail::centered_fft<3>(data, n, forward);
}

inline FourierVolume forward_fft_3d(const RealVolume& x, double voxel_size = 1.0) {
    FourierVolume out(x.n, voxel_size);
    for (size_t i = 0; i < x.data.size(); ++i) out.raw()[i] = x.data[i];
    cfft3(out.raw(), x.n, true);
    return out;
}

/// Inverse transform; imaginary residue is dropped (callers own the
/// Hermitian-symmetry guarantee).
inline RealVolume inverse_fft_3d_real(const FourierVolume& v) {
    std::vector<cplx> tmp = v.raw();
    cfft3(tmp, v.size(), false);
    RealVolume out(v.size());
    for (size_t i = 0; i < tmp.size(); ++i) out.data[i] = tmp[i].real();
    return out;
}

inline FourierImage forward_fft_2d(const RealImage& x) {
    FourierImage out(x.n);
    for (size_t i = 0; i < x.data.size(); ++i) out.raw()[i] = x.data[i];
    cfft2(out.raw(), x.n, true);
    return out;
}

inline RealImage inverse_fft_2d_real(const FourierImage& v) {
    std::vector<cplx> tmp = v.raw();
    cfft2(tmp, v.size(), false);
    RealImage out(v.size());
    for (size_t i = 0; i < tmp.size(); ++i) out.data[i] = tmp[i].real();
    return out;
}

/// Upsample a Fourier volume onto the os*N grid by zero-padding in real
/// space. Scaled so that values are preserved: out(os*f) == in(f) exactly.
/// With this scale the adjoint satisfies U* U = os^3 I.
inline FourierVolume oversample(const FourierVolume& in, int os) {
    if (os < 1) throw std::invalid_argument("oversampling must be >= 1");
    const int n = in.size();
    if (os == 1) return in;
    const int m = os * n;
    std::vector<cplx> small = in.raw();
    cfft3(small, n, false);

    FourierVolume big(m, in.voxel_size());
    const int cn = center_index(n), cm = center_index(m);
    const int off = cm - cn;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                big.at(x + off, y + off, z + off) = small[(static_cast<size_t>(z) * n + y) * n + x];

    cfft3(big.raw(), m, true);
    const double scale = std::pow(static_cast<double>(os), 1.5);
    for (auto& v : big.raw()) v *= scale;
    return big;
}

/// Exact adjoint of oversample (crop in real space, same scale).
inline FourierVolume oversample_adjoint(const FourierVolume& big, int os, int n) {
    if (os == 1) return big;
    const int m = big.size();
    if (m != os * n) throw std::invalid_argument("oversample_adjoint: size mismatch");
    std::vector<cplx> work = big.raw();
    cfft3(work, m, false);

    FourierVolume out(n, big.voxel_size());
    const int cn = center_index(n), cm = center_index(m);
    const int off = cm - cn;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                out.at(x, y, z) = work[((static_cast<size_t>(z) + off) * m + (y + off)) * m + (x + off)];

    cfft3(out.raw(), n, true);
    const double scale = std::pow(static_cast<double>(os), 1.5);
    for (auto& v : out.raw()) v *= scale;
    return out;
}

} // namespace lrh
