#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "huygens/field.hpp"

namespace huygens {

/// Axial separation between two planes; r = sqrt(z^2 + (y_target - y_source)^2).
class PropagationGeometry {
public:
    explicit PropagationGeometry(double axial_distance) : z_{axial_distance} {
        if (!(axial_distance > 0) || !std::isfinite(axial_distance))
            throw invalid_geometry_error{"propagation distance must be positive"};
    }

    [[nodiscard]] double axial_distance() const noexcept { return z_; }

    [[nodiscard]] double point_distance(double y_target, double y_source) const noexcept {
        const double dy = y_target - y_source;
        return std::sqrt(z_ * z_ + dy * dy);
    }

private:
    double z_;
};

namespace detail {

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// handled by exactly one call, so per-index results do not depend on the
/// number of workers.
template <class Body>
void parallel_chunks(std::size_t n, Body &&body) {
    constexpr std::size_t min_chunk = 64;
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, std::max<std::size_t>(1, n / min_chunk));
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = std::min(n, w * chunk);
        const std::size_t e = std::min(n, b + chunk);
        if (b < e)
            threads.emplace_back([&body, b, e] { body(b, e); });
    }
    body(std::size_t{0}, std::min(n, chunk));
}

struct SourcePoint {
    double position;
    complex weight;
};

inline SampledField propagate_points(const std::vector<SourcePoint> &points, double source_spacing,
                                     const TransverseGrid &target_grid, double target_axial_position,
                                     double source_axial_position, const WaveContext &ctx) {
    const PropagationGeometry geometry{target_axial_position - source_axial_position};
    const double k = ctx.wavenumber();
    std::vector<complex> out(target_grid.size());

    parallel_chunks(target_grid.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const double y = target_grid.position(t);
            double re = 0.0;
            double im = 0.0;
            // Fixed ascending source order per target point.
            for (const auto &p : points) {
                const double r = geometry.point_distance(y, p.position);
                const double phase = k * r;
                const double c = std::cos(phase);
                const double s = std::sin(phase);
                re += (p.weight.real() * c - p.weight.imag() * s) / r;
                im += (p.weight.real() * s + p.weight.imag() * c) / r;
            }
            out[t] = complex{re * source_spacing, im * source_spacing};
        }
    });
    return SampledField{target_grid, std::move(out), target_axial_position};
}

inline std::vector<SourcePoint> nonzero_points(const SampledField &source) {
    std::vector<SourcePoint> points;
    const auto amps = source.amplitudes();
    for (std::size_t j = 0; j < amps.size(); ++j)
        if (amps[j] != complex{})
            points.push_back({source.grid().position(j), amps[j]});
    return points;
}

inline void require_forward(const SampledField &source, double target_axial_position) {
    if (!(target_axial_position > source.axial_position()))
        throw invalid_geometry_error{"target plane must lie downstream of the source plane"};
}

} // namespace detail

/// Direct Huygens-Fresnel quadrature from `source` onto `target_grid`:
///
///     psi(y) = sum_j psi0(y'_j) * exp(i k r_j) / r_j * dy'
///
/// using midpoint weights on the source grid and no obliquity factor.
/// Target points are evaluated independently (possibly on several threads);
/// the inner sum always runs in ascending source order, so results are
/// bit-identical regardless of the thread count.
inline SampledField propagate(const SampledField &source, const TransverseGrid &target_grid,
                              double target_axial_position, const WaveContext &ctx) {
    detail::require_forward(source, target_axial_position);
    return detail::propagate_points(detail::nonzero_points(source), source.grid().spacing(), target_grid,
                                    target_axial_position, source.axial_position(), ctx);
}

/// As above with an extra per-source-sample phase added to the kernel
/// exponent, i.e. exp(i (k r_j + phi_j)). The unimodular factor exp(i phi_j)
/// is folded into the source weight exactly as apply_lens does, so the two
/// routes produce identical numbers.
inline SampledField propagate(const SampledField &source, const TransverseGrid &target_grid,
                              double target_axial_position, const WaveContext &ctx,
                              std::span<const double> extra_phase) {
    detail::require_forward(source, target_axial_position);
    if (extra_phase.size() != source.size())
        throw invalid_argument_error{"extra_phase length must equal the source sample count"};
    auto points = detail::nonzero_points(source);
    std::size_t p = 0;
    const auto amps = source.amplitudes();
    for (std::size_t j = 0; j < amps.size(); ++j)
        if (amps[j] != complex{})
            points[p++].weight = amps[j] * std::polar(1.0, extra_phase[j]);
    return detail::propagate_points(points, source.grid().spacing(), target_grid, target_axial_position,
                                    source.axial_position(), ctx);
}

/// Smallest source sample count for which the kernel phase k*r changes by at
/// most pi/oversampling between neighbouring source samples, for every target
/// point. Both extents are full widths of grids centred on the same axis, so
/// the worst-case transverse offset is (aperture_extent + target_extent) / 2.
inline std::size_t required_samples(double aperture_extent, double target_extent, double z,
                                    const WaveContext &ctx, double oversampling) {
    if (!(aperture_extent > 0) || !(target_extent >= 0) || !(z > 0))
        throw invalid_argument_error{"required_samples: extents and distance must be positive"};
    if (!(oversampling >= 1))
        throw invalid_argument_error{"required_samples: oversampling must be >= 1"};
    const double max_offset = 0.5 * (aperture_extent + target_extent);
    const double sin_theta = max_offset / std::hypot(z, max_offset);
    // d(k r)/dy' = k sin(theta) <= pi / (oversampling * dy')
    const double max_step = ctx.wavelength() / (2.0 * oversampling * sin_theta);
    const auto intervals = static_cast<std::size_t>(std::ceil(aperture_extent / max_step));
    return std::max<std::size_t>(intervals, 1) + 1;
}

} // namespace huygens
