#pragma once

// Closed-form references used to validate the quadrature engine. Nothing in
// the engine depends on this header.

#include <cmath>
#include <numbers>

#include "huygens/field.hpp"

namespace huygens::oracle {

inline double sinc(double x) noexcept { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Far-field double-slit intensity, 1 on axis:
/// cos^2(pi d y / (lambda L)) * sinc^2(pi w y / (lambda L)).
/// Valid for L >> d w / lambda and L >> w^2 / lambda.
inline double fraunhofer_double_slit(double y, double wavelength, double distance, double separation,
                                     double slit_width) noexcept {
    const double scale = std::numbers::pi * y / (wavelength * distance);
    const double fringe = std::cos(scale * separation);
    const double envelope = sinc(scale * slit_width);
    return fringe * fringe * envelope * envelope;
}

/// Paraxial thin-lens phase -k y^2 / (2 f).
inline double thin_lens_paraxial_phase(double y, double focal_length, const WaveContext &ctx) noexcept {
    return -ctx.wavenumber() * y * y / (2.0 * focal_length);
}

} // namespace huygens::oracle
