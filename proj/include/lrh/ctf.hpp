#pragma once

#include <cmath>

namespace lrh {

/// Radially parametrized contrast transfer function. Lengths in Angstrom.
/// With identity_flag set the filter is 1 everywhere, which keeps operator
/// oracle tests CTF-free.
struct CtfParams {
    double defocus = 1.5e4;               // underfocus positive
    double spherical_aberration = 2.0e7;  // 2 mm
    double amplitude_contrast = 0.1;      // in [0,1]
    double wavelength = 0.0197;           // 300 kV electrons
    bool identity_flag = true;

    /// value at spatial frequency k (1/Angstrom)
    double eval(double k) const {
        if (identity_flag) return 1.0;
        const double k2 = k * k;
        const double gamma = kPiLocal * wavelength * defocus * k2 -
                             0.5 * kPiLocal * spherical_aberration * wavelength * wavelength * wavelength * k2 * k2;
        const double a = amplitude_contrast;
        return -std::sqrt(1.0 - a * a) * std::sin(gamma) - a * std::cos(gamma);
    }

private:
    static constexpr double kPiLocal = 3.14159265358979323846;
};

} // namespace lrh
