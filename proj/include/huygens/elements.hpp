#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "huygens/field.hpp"

namespace huygens {

struct SlitSpec {
    double center = 0.0;
    double width = 0.0;

    friend bool operator==(const SlitSpec &, const SlitSpec &) = default;
};

struct LensSpec {
    double focal_length = 0.0;

    friend bool operator==(const LensSpec &, const LensSpec &) = default;
};

/// Opaque wires of a common width, one per center.
struct WireArraySpec {
    std::vector<double> centers;
    double wire_width = 0.0;

    friend bool operator==(const WireArraySpec &, const WireArraySpec &) = default;
};

namespace detail {

inline bool covers(double y, double center, double width) noexcept {
    // Boundary samples count as inside.
    return std::abs(y - center) <= 0.5 * width;
}

} // namespace detail

/// Union of slits: 1 inside any slit, 0 elsewhere. No slits blocks everything.
inline Mask slit_mask(const TransverseGrid &grid, const std::vector<SlitSpec> &slits) {
    for (const auto &s : slits)
        if (!(s.width > 0))
            throw invalid_argument_error{"slit width must be positive"};
    std::vector<double> t(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid.position(i);
        for (const auto &s : slits)
            if (detail::covers(y, s.center, s.width)) {
                t[i] = 1.0;
                break;
            }
    }
    return Mask{grid, std::move(t)};
}

inline void validate(const WireArraySpec &wires) {
    if (!(wires.wire_width >= 0) || !std::isfinite(wires.wire_width))
        throw invalid_argument_error{"wire width must be finite and non-negative"};
    auto sorted = wires.centers;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] < wires.wire_width)
            throw invalid_argument_error{"wires overlap"};
}

/// Complement of a slit mask: 0 under any wire, 1 elsewhere.
inline Mask wire_mask(const TransverseGrid &grid, const WireArraySpec &wires) {
    validate(wires);
    std::vector<double> t(grid.size(), 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid.position(i);
        for (double c : wires.centers)
            if (detail::covers(y, c, wires.wire_width)) {
                t[i] = 0.0;
                break;
            }
    }
    return Mask{grid, std::move(t)};
}

/// Phase delay of the thin lens at transverse offset y, up to a constant:
/// -2 k sqrt(4 f^2 + y^2). Paraxially this is -4 k f - k y^2 / (2 f).
inline double lens_phase(double y, const LensSpec &lens, const WaveContext &ctx) {
    if (!(lens.focal_length > 0))
        throw invalid_argument_error{"focal length must be positive"};
    const double f = lens.focal_length;
    return -2.0 * ctx.wavenumber() * std::sqrt(4.0 * f * f + y * y);
}

/// Per-sample lens phase over a grid, suitable as `extra_phase` for propagate.
inline std::vector<double> lens_phases(const TransverseGrid &grid, const LensSpec &lens, const WaveContext &ctx) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out[i] = lens_phase(grid.position(i), lens, ctx);
    return out;
}

/// The lens aperture is the whole grid.
inline SampledField apply_lens(const SampledField &field, const LensSpec &lens, const WaveContext &ctx) {
    const auto phases = lens_phases(field.grid(), lens, ctx);
    std::vector<complex> out(field.amplitudes().begin(), field.amplitudes().end());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = out[i] * std::polar(1.0, phases[i]);
    return SampledField{field.grid(), std::move(out), field.axial_position()};
}

} // namespace huygens
