#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "lrh/grid.hpp"
#include "lrh/shells.hpp"

namespace lrh {

constexpr double kPi = std::numbers::pi;

/// Zero every coefficient with ||f|| * (2*pi/N) > cutoff. A cutoff at or
/// above pi (Nyquist) passes the whole grid, corners included.
inline void lowpass_inplace(FourierVolume& vol, double cutoff) {
    if (cutoff <= 0) throw std::invalid_argument("lowpass: cutoff must be positive");
    if (cutoff >= kPi) return;
    const int n = vol.size();
    const int c = center_index(n);
    const double rmax = cutoff * n / (2.0 * kPi);
    const double rmax2 = rmax * rmax;
    size_t idx = 0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x, ++idx) {
                const double fx = x - c, fy = y - c, fz = z - c;
                if (fx * fx + fy * fy + fz * fz > rmax2) vol.raw()[idx] = 0;
            }
}

inline FourierVolume lowpass(const FourierVolume& vol, double cutoff) {
    FourierVolume out = vol;
    lowpass_inplace(out, cutoff);
    return out;
}

/// Per-shell correlation curve. Shells where either input has no energy are
/// flagged undefined instead of producing NaNs.
struct FscCurve {
    std::vector<double> value;
    std::vector<bool> defined;
    int count() const { return static_cast<int>(value.size()); }
};

inline FscCurve fsc(const FourierVolume& a, const FourierVolume& b, const ShellIndex& shells) {
    check_same_size(a.size(), b.size());
    const int s = shells.count();
    std::vector<cplx> num(s, cplx(0));
    std::vector<double> na(s, 0), nb(s, 0);
    for (size_t i = 0; i < a.raw().size(); ++i) {
        const int l = shells.label(i);
        num[l] += std::conj(a.raw()[i]) * b.raw()[i];
        na[l] += std::norm(a.raw()[i]);
        nb[l] += std::norm(b.raw()[i]);
    }
    FscCurve out;
    out.value.assign(s, 0.0);
    out.defined.assign(s, false);
    for (int l = 0; l < s; ++l) {
        const double denom = std::sqrt(na[l]) * std::sqrt(nb[l]);
        if (denom > 0) {
            out.value[l] = num[l].real() / denom;
            out.defined[l] = true;
        }
    }
    return out;
}

inline FscCurve fsc(const FourierVolume& a, const FourierVolume& b) {
    return fsc(a, b, build_shells(a.size()));
}

} // namespace lrh
