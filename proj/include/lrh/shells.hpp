#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lrh/grid.hpp"

namespace lrh {

/// Radial frequency shells: shell i holds the grid frequencies with
/// ||f|| in [i-0.5, i+0.5). The shells partition the grid (||f||^2 is an
/// integer, so band edges are never hit).
class ShellIndex {
public:
    ShellIndex() = default;

    int grid_size() const { return n_; }
    int count() const { return count_; }
    /// shell id per voxel, same linear layout as FourierVolume
    const std::vector<uint16_t>& labels() const { return labels_; }
    uint16_t label(size_t voxel) const { return labels_[voxel]; }
    int cardinality(int shell) const { return card_[shell]; }

    static ShellIndex build(int n) {
        ShellIndex s;
        s.n_ = n;
        const int c = center_index(n);
        s.labels_.resize(static_cast<size_t>(n) * n * n);
        int maxShell = 0;
        size_t idx = 0;
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x, ++idx) {
                    const double fx = x - c, fy = y - c, fz = z - c;
                    const double r = std::sqrt(fx * fx + fy * fy + fz * fz);
                    const int shell = static_cast<int>(std::lround(r));
                    s.labels_[idx] = static_cast<uint16_t>(shell);
                    maxShell = std::max(maxShell, shell);
                }
        s.count_ = maxShell + 1;
        s.card_.assign(s.count_, 0);
        for (auto l : s.labels_) s.card_[l]++;
        return s;
    }

private:
    int n_ = 0;
    int count_ = 0;
    std::vector<uint16_t> labels_;
    std::vector<int> card_;
};

inline ShellIndex build_shells(int n) {
    if (n < 2) throw std::invalid_argument("build_shells: N must be >= 2");
    return ShellIndex::build(n);
}

/// Per-shell inner products <a,b>_{S_k} for all shells in one pass.
inline std::vector<cplx> shell_inner(const ShellIndex& shells,
                                     const std::vector<cplx>& a,
                                     const std::vector<cplx>& b) {
    std::vector<cplx> out(shells.count(), cplx(0));
    for (size_t i = 0; i < a.size(); ++i) out[shells.label(i)] += std::conj(a[i]) * b[i];
    return out;
}

} // namespace lrh
