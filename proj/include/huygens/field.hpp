#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "huygens/errors.hpp"

namespace huygens {

using complex = std::complex<double>;

/// Monochromatic wave: wavelength in meters and the derived wavenumber 2*pi/wavelength.
class WaveContext {
public:
    explicit WaveContext(double wavelength) : wavelength_{wavelength} {
        if (!(wavelength > 0) || !std::isfinite(wavelength))
            throw invalid_argument_error{"wavelength must be positive and finite"};
        wavenumber_ = 2 * std::numbers::pi / wavelength_;
    }

    [[nodiscard]] double wavelength() const noexcept { return wavelength_; }
    [[nodiscard]] double wavenumber() const noexcept { return wavenumber_; }

    friend bool operator==(const WaveContext &a, const WaveContext &b) noexcept {
        return a.wavelength_ == b.wavelength_;
    }

private:
    double wavelength_;
    double wavenumber_;
};

/// Uniform 1D sampling of [center - half_width, center + half_width].
///
/// Positions are computed from the integer offset of each sample relative to
/// the middle of the grid, so a grid centered on zero is exactly mirror
/// symmetric: position(n - 1 - i) == -position(i) bit for bit. A single-sample
/// grid holds only the center and represents a cell of width 2 * half_width.
class TransverseGrid {
public:
    TransverseGrid(double center, double half_width, std::size_t n_samples)
        : center_{center}, half_width_{half_width}, n_{n_samples} {
        if (!(half_width > 0) || !std::isfinite(half_width))
            throw invalid_argument_error{"grid half_width must be positive and finite"};
        if (!std::isfinite(center))
            throw invalid_argument_error{"grid center must be finite"};
        if (n_samples == 0)
            throw invalid_argument_error{"grid needs at least one sample"};
    }

    [[nodiscard]] double center() const noexcept { return center_; }
    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double lower() const noexcept { return n_ == 1 ? center_ : center_ - half_width_; }
    [[nodiscard]] double upper() const noexcept { return n_ == 1 ? center_ : center_ + half_width_; }

    /// Sample pitch, which is also the quadrature weight of every sample.
    [[nodiscard]] double spacing() const noexcept {
        return n_ == 1 ? 2 * half_width_ : 2 * half_width_ / static_cast<double>(n_ - 1);
    }

    [[nodiscard]] double position(std::size_t i) const noexcept {
        if (n_ == 1)
            return center_;
        const double offset = 2.0 * static_cast<double>(i) - static_cast<double>(n_ - 1);
        return center_ + half_width_ * offset / static_cast<double>(n_ - 1);
    }

    [[nodiscard]] std::vector<double> positions() const {
        std::vector<double> out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = position(i);
        return out;
    }

    friend bool operator==(const TransverseGrid &, const TransverseGrid &) = default;

private:
    double center_;
    double half_width_;
    std::size_t n_;
};

inline TransverseGrid make_grid(double center, double half_width, std::size_t n_samples) {
    return TransverseGrid{center, half_width, n_samples};
}

namespace detail {

inline void require_same_grid(const TransverseGrid &a, const TransverseGrid &b, const char *what) {
    if (!(a == b))
        throw incompatible_grid_error{std::string{what} + ": grids differ"};
}

} // namespace detail

/// Complex amplitude sampled on a transverse grid at a fixed axial position.
class SampledField {
public:
    SampledField(TransverseGrid grid, std::vector<complex> amplitudes, double axial_position)
        : grid_{grid}, amplitudes_{std::move(amplitudes)}, axial_position_{axial_position} {
        if (amplitudes_.size() != grid_.size())
            throw invalid_argument_error{"amplitude count does not match grid size"};
        for (const auto &a : amplitudes_)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw invalid_argument_error{"field amplitudes must be finite"};
        if (!std::isfinite(axial_position))
            throw invalid_argument_error{"axial position must be finite"};
    }

    /// All-zero field.
    SampledField(TransverseGrid grid, double axial_position)
        : SampledField{grid, std::vector<complex>(grid.size()), axial_position} {}

    [[nodiscard]] const TransverseGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] double axial_position() const noexcept { return axial_position_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

    friend bool operator==(const SampledField &, const SampledField &) = default;

private:
    TransverseGrid grid_;
    std::vector<complex> amplitudes_;
    double axial_position_;
};

/// Real transmission in [0, 1] per grid sample.
class Mask {
public:
    Mask(TransverseGrid grid, std::vector<double> transmission)
        : grid_{grid}, transmission_{std::move(transmission)} {
        if (transmission_.size() != grid_.size())
            throw invalid_argument_error{"transmission count does not match grid size"};
        for (double t : transmission_)
            if (!(t >= 0.0 && t <= 1.0))
                throw invalid_argument_error{"transmission values must lie in [0, 1]"};
    }

    [[nodiscard]] const TransverseGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> transmission() const noexcept { return transmission_; }

    friend bool operator==(const Mask &, const Mask &) = default;

private:
    TransverseGrid grid_;
    std::vector<double> transmission_;
};

/// Relative intensity |psi|^2 per grid sample.
class IntensityProfile {
public:
    IntensityProfile(TransverseGrid grid, std::vector<double> values)
        : grid_{grid}, values_{std::move(values)} {
        if (values_.size() != grid_.size())
            throw invalid_argument_error{"intensity count does not match grid size"};
        for (double v : values_)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw invalid_argument_error{"intensity values must be finite and non-negative"};
    }

    [[nodiscard]] const TransverseGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    friend bool operator==(const IntensityProfile &, const IntensityProfile &) = default;

private:
    TransverseGrid grid_;
    std::vector<double> values_;
};

/// Discrete integral of |psi|^2 over the grid (midpoint weights).
inline double total_flux(const SampledField &field) {
    double sum = 0.0;
    for (const auto &a : field.amplitudes())
        sum += std::norm(a);
    return sum * field.grid().spacing();
}

inline SampledField apply_mask(const SampledField &field, const Mask &mask) {
    detail::require_same_grid(field.grid(), mask.grid(), "apply_mask");
    std::vector<complex> out(field.amplitudes().begin(), field.amplitudes().end());
    const auto t = mask.transmission();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= t[i];
    return SampledField{field.grid(), std::move(out), field.axial_position()};
}

/// Multiplies every amplitude by `factor`.
inline SampledField scale(const SampledField &field, complex factor) {
    std::vector<complex> out(field.amplitudes().begin(), field.amplitudes().end());
    for (auto &a : out)
        a *= factor;
    return SampledField{field.grid(), std::move(out), field.axial_position()};
}

} // namespace huygens
