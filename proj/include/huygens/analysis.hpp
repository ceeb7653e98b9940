#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "huygens/field.hpp"

namespace huygens {

inline constexpr double default_extremum_threshold = 0.05;

/// Peaks found in a profile, ascending by position.
struct PeakReport {
    std::vector<double> positions;
    std::vector<double> heights;

    [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }
    [[nodiscard]] bool empty() const noexcept { return positions.empty(); }

    friend bool operator==(const PeakReport &, const PeakReport &) = default;
};

struct PositionInterval {
    double lower;
    double upper;
};

inline IntensityProfile intensity(const SampledField &field) {
    std::vector<double> values(field.size());
    const auto amps = field.amplitudes();
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::norm(amps[i]);
    return IntensityProfile{field.grid(), std::move(values)};
}

namespace detail {

struct Vertex {
    double position;
    double value;
};

/// Vertex of the parabola through samples i-1, i, i+1.
inline Vertex parabolic_vertex(const IntensityProfile &p, std::size_t i) {
    const auto v = p.values();
    const double left = v[i - 1];
    const double mid = v[i];
    const double right = v[i + 1];
    const double curvature = left - 2.0 * mid + right;
    const double offset = curvature == 0.0 ? 0.0 : 0.5 * (left - right) / curvature;
    return {p.grid().position(i) + offset * p.grid().spacing(), mid - 0.25 * (left - right) * offset};
}

inline void require_extremum_inputs(const IntensityProfile &p, double threshold) {
    if (p.size() < 3)
        throw invalid_argument_error{"extremum search needs at least 3 samples"};
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw invalid_argument_error{"threshold must lie in [0, 1)"};
}

inline double max_value(std::span<const double> v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

} // namespace detail

/// Local minima deeper than depth_threshold * max(profile), refined by a
/// three-point parabola. Plateaus yield nothing (strict comparisons).
inline std::vector<double> find_minima(const IntensityProfile &profile,
                                       double depth_threshold = default_extremum_threshold) {
    detail::require_extremum_inputs(profile, depth_threshold);
    const auto v = profile.values();
    const double limit = depth_threshold * detail::max_value(v);
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] < v[i - 1] && v[i] < v[i + 1] && v[i] < limit)
            out.push_back(detail::parabolic_vertex(profile, i).position);
    return out;
}

/// Local maxima at least prominence_threshold * max(profile) high,
/// refined by a three-point parabola.
inline PeakReport find_peaks(const IntensityProfile &profile,
                             double prominence_threshold = default_extremum_threshold) {
    detail::require_extremum_inputs(profile, prominence_threshold);
    const auto v = profile.values();
    const double limit = prominence_threshold * detail::max_value(v);
    PeakReport report;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] >= limit) {
            const auto vertex = detail::parabolic_vertex(profile, i);
            report.positions.push_back(vertex.position);
            report.heights.push_back(vertex.value);
        }
    return report;
}

/// Fringe visibility (I_max - I_min) / (I_max + I_min) over `window`, which
/// must lie within the grid. Extremes are taken over the samples in the window
/// and the parabolic vertices of interior local extrema, so the result does
/// not depend on where the samples fall relative to a fringe.
inline double visibility(const IntensityProfile &profile, PositionInterval window) {
    const auto &g = profile.grid();
    const double slack = 1e-9 * g.spacing();
    if (!(window.lower < window.upper) || window.lower < g.lower() - slack || window.upper > g.upper() + slack)
        throw invalid_argument_error{"visibility window must be a non-empty interval inside the grid"};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    const auto v = profile.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double y = g.position(i);
        if (y < window.lower || y > window.upper)
            continue;
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
        ++count;
        if (i == 0 || i + 1 == v.size())
            continue;
        const bool is_min = v[i] < v[i - 1] && v[i] < v[i + 1];
        const bool is_max = v[i] > v[i - 1] && v[i] > v[i + 1];
        if (is_min)
            lo = std::min(lo, std::max(0.0, detail::parabolic_vertex(profile, i).value));
        if (is_max)
            hi = std::max(hi, detail::parabolic_vertex(profile, i).value);
    }
    if (count < 3)
        throw invalid_argument_error{"visibility window holds fewer than 3 samples"};
    if (hi + lo == 0.0)
        return 0.0;
    return (hi - lo) / (hi + lo);
}

/// Ratio of integrated intensities, test over baseline.
inline double flux_ratio(const IntensityProfile &test, const IntensityProfile &baseline) {
    detail::require_same_grid(test.grid(), baseline.grid(), "flux_ratio");
    double num = 0.0;
    double den = 0.0;
    for (double x : test.values())
        num += x;
    for (double x : baseline.values())
        den += x;
    num *= test.grid().spacing();
    den *= baseline.grid().spacing();
    if (den == 0.0)
        throw undefined_ratio_error{"baseline profile carries no flux"};
    return num / den;
}

/// Largest fractional height loss among baseline peaks, each paired with the
/// nearest test peak. Pairs must lie within half the smallest baseline peak
/// separation (unbounded for a single peak); losses are clipped to [0, 1].
inline double peak_attenuation(const PeakReport &test, const PeakReport &baseline) {
    if (test.size() != baseline.size())
        throw analysis_error{"peak_attenuation: peak counts differ (" + std::to_string(test.size()) + " vs " +
                             std::to_string(baseline.size()) + ")"};
    double tolerance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < baseline.size(); ++i)
        tolerance = std::min(tolerance, 0.5 * (baseline.positions[i] - baseline.positions[i - 1]));

    std::vector<bool> used(test.size(), false);
    double worst = 0.0;
    for (std::size_t b = 0; b < baseline.size(); ++b) {
        std::size_t best = test.size();
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < test.size(); ++t) {
            const double d = std::abs(test.positions[t] - baseline.positions[b]);
            if (d < best_distance) {
                best_distance = d;
                best = t;
            }
        }
        if (best == test.size() || best_distance > tolerance || used[best])
            throw analysis_error{"peak_attenuation: peaks cannot be matched by proximity"};
        used[best] = true;
        const double loss = 1.0 - test.heights[best] / baseline.heights[b];
        worst = std::max(worst, std::clamp(loss, 0.0, 1.0));
    }
    return worst;
}

} // namespace huygens
