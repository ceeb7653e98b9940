#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "huygens/analysis.hpp"
#include "huygens/elements.hpp"
#include "huygens/field.hpp"
#include "huygens/propagation.hpp"

namespace huygens {

/// Default optical train. The wire width is the value that makes the
/// single-slit peak attenuation 0.10 on this geometry (see tools/tune_wire_width).
namespace defaults {
inline constexpr double wavelength = 650e-9;
inline constexpr double slit_width = 100e-6;
inline constexpr double slit_separation = 2e-3;
inline constexpr double source_to_screen = 1.0;
inline constexpr double focal_length = 0.5;
inline constexpr double plane_half_width = 5e-3;
inline constexpr std::size_t samples_per_slit = 65;
inline constexpr double oversampling = 8.0;
inline constexpr std::size_t wire_count = 6;
inline constexpr double wire_width = 65e-6;
} // namespace defaults

enum class SlitState { both, upper_only, lower_only, none };

inline std::string_view to_string(SlitState s) noexcept {
    switch (s) {
    case SlitState::both: return "both";
    case SlitState::upper_only: return "upper_only";
    case SlitState::lower_only: return "lower_only";
    case SlitState::none: return "none";
    }
    return "both";
}

inline std::optional<SlitState> parse_slit_state(std::string_view s) noexcept {
    for (auto st : {SlitState::both, SlitState::upper_only, SlitState::lower_only, SlitState::none})
        if (to_string(st) == s)
            return st;
    return std::nullopt;
}

struct WireSettings {
    double wire_width = defaults::wire_width;
    std::size_t wire_count = defaults::wire_count;
    /// Explicit wire positions; when empty the wires sit on the innermost
    /// minima of the both-slits pattern at the lens plane.
    std::vector<double> centers;

    friend bool operator==(const WireSettings &, const WireSettings &) = default;
};

/// Fully resolved optical train: source plane at z = 0, lens plane at
/// z = source_to_screen, image plane a further lens_to_image downstream.
struct ExperimentConfig {
    WaveContext ctx;
    SlitSpec upper;
    SlitSpec lower;
    SlitState slit_state = SlitState::both;
    double source_to_screen;
    std::optional<LensSpec> lens;
    /// Explicit lens-to-image distance; derived from the thin-lens relation when empty.
    std::optional<double> lens_to_image;
    std::optional<WireSettings> wires;
    TransverseGrid source_grid;
    TransverseGrid lens_grid;
    TransverseGrid image_grid;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

struct ScenarioResult {
    std::map<std::string, IntensityProfile> profiles;
    std::map<std::string, double> metrics;
    ExperimentConfig config;

    friend bool operator==(const ScenarioResult &, const ScenarioResult &) = default;
};

struct ImageDistance {
    double distance;
    double magnification;
};

/// Thin-lens conjugate 1/u + 1/v = 1/f for a real object at distance u.
inline ImageDistance image_distance(double u, const LensSpec &lens) {
    const double f = lens.focal_length;
    if (!(u > 0) || !(f > 0))
        throw invalid_argument_error{"image_distance: object distance and focal length must be positive"};
    if (u == f)
        throw no_finite_image_error{"object in the focal plane has no finite image"};
    if (u < f)
        throw virtual_image_error{"object inside the focal length forms a virtual image"};
    const double v = 1.0 / (1.0 / f - 1.0 / u);
    return {v, v / u};
}

/// Source grid centred on the axis, just covering both slits, with pitch
/// min(slit width) / samples_per_slit (finer if the kernel phase demands it).
/// For slit edges at half-integer multiples of the pitch no sample sits on an edge.
inline TransverseGrid auto_source_grid(const SlitSpec &upper, const SlitSpec &lower, std::size_t samples_per_slit,
                                       const TransverseGrid &lens_grid, double u, const WaveContext &ctx,
                                       double oversampling = defaults::oversampling) {
    if (samples_per_slit == 0)
        throw invalid_argument_error{"samples_per_slit must be positive"};
    const double extent = std::max({std::abs(upper.center) + 0.5 * upper.width, std::abs(lower.center) + 0.5 * lower.width});
    double pitch = std::min(upper.width, lower.width) / static_cast<double>(samples_per_slit);
    const auto needed = required_samples(2 * extent, 2 * lens_grid.half_width(), u, ctx, oversampling);
    pitch = std::min(pitch, 2 * extent / static_cast<double>(needed - 1));
    const auto half_count = static_cast<std::size_t>(std::ceil(extent / pitch));
    return TransverseGrid{0.0, static_cast<double>(half_count) * pitch, 2 * half_count + 1};
}

/// Odd sample count for a lens/image plane pair separated by `distance`.
inline std::size_t auto_plane_samples(double source_half_width, double target_half_width, double distance,
                                      const WaveContext &ctx, double oversampling = defaults::oversampling) {
    auto n = required_samples(2 * source_half_width, 2 * target_half_width, distance, ctx, oversampling);
    return n % 2 == 0 ? n + 1 : n;
}

inline ExperimentConfig default_experiment() {
    const WaveContext ctx{defaults::wavelength};
    const LensSpec lens{defaults::focal_length};
    const double u = defaults::source_to_screen;
    const double v = image_distance(u, lens).distance;
    const auto n = auto_plane_samples(defaults::plane_half_width, defaults::plane_half_width, v, ctx);
    const TransverseGrid lens_grid{0.0, defaults::plane_half_width, n};
    const TransverseGrid image_grid{0.0, defaults::plane_half_width, n};
    const SlitSpec upper{0.5 * defaults::slit_separation, defaults::slit_width};
    const SlitSpec lower{-0.5 * defaults::slit_separation, defaults::slit_width};
    return ExperimentConfig{
        .ctx = ctx,
        .upper = upper,
        .lower = lower,
        .slit_state = SlitState::both,
        .source_to_screen = u,
        .lens = lens,
        .lens_to_image = v,
        .wires = WireSettings{},
        .source_grid = auto_source_grid(upper, lower, defaults::samples_per_slit, lens_grid, u, ctx),
        .lens_grid = lens_grid,
        .image_grid = image_grid,
    };
}

inline void validate(const ExperimentConfig &cfg) {
    if (!(cfg.source_to_screen > 0))
        throw invalid_argument_error{"source_to_screen must be positive"};
    if (!(cfg.upper.width > 0) || !(cfg.lower.width > 0))
        throw invalid_argument_error{"slit widths must be positive"};
    if (!(cfg.upper.center > cfg.lower.center))
        throw invalid_argument_error{"upper slit must lie above the lower slit"};
    if (cfg.lens && !(cfg.lens->focal_length > 0))
        throw invalid_argument_error{"focal length must be positive"};
    if (cfg.lens_to_image && !(*cfg.lens_to_image > 0))
        throw invalid_argument_error{"lens_to_image must be positive"};
}

inline double resolved_image_distance(const ExperimentConfig &cfg) {
    if (!cfg.lens)
        throw invalid_argument_error{"configuration has no lens"};
    return cfg.lens_to_image ? *cfg.lens_to_image : image_distance(cfg.source_to_screen, *cfg.lens).distance;
}

inline std::vector<SlitSpec> open_slits(const ExperimentConfig &cfg) {
    switch (cfg.slit_state) {
    case SlitState::both: return {cfg.upper, cfg.lower};
    case SlitState::upper_only: return {cfg.upper};
    case SlitState::lower_only: return {cfg.lower};
    case SlitState::none: return {};
    }
    return {};
}

/// Flat-top field over the open slits, normalized to unit total flux.
inline SampledField source_field(const ExperimentConfig &cfg) {
    const auto mask = slit_mask(cfg.source_grid, open_slits(cfg));
    SampledField field{cfg.source_grid, std::vector<complex>(cfg.source_grid.size(), complex{1.0, 0.0}), 0.0};
    field = apply_mask(field, mask);
    const double flux = total_flux(field);
    return flux > 0 ? scale(field, complex{1.0 / std::sqrt(flux), 0.0}) : field;
}

inline SampledField lens_plane_field(const ExperimentConfig &cfg) {
    return propagate(source_field(cfg), cfg.lens_grid, cfg.source_to_screen, cfg.ctx);
}

/// Lens plane field (optionally obstructed by `wires`) through the lens
/// phase and on to the image plane.
inline SampledField image_plane_field(const ExperimentConfig &cfg, const SampledField &at_lens,
                                      const Mask *wires = nullptr) {
    const double v = resolved_image_distance(cfg);
    const auto phases = lens_phases(cfg.lens_grid, *cfg.lens, cfg.ctx);
    const SampledField obstructed = wires ? apply_mask(at_lens, *wires) : at_lens;
    return propagate(obstructed, cfg.image_grid, at_lens.axial_position() + v, cfg.ctx, phases);
}

inline ExperimentConfig with_state(ExperimentConfig cfg, SlitState state) {
    cfg.slit_state = state;
    return cfg;
}

namespace detail {

inline double median_spacing(const std::vector<double> &sorted) {
    if (sorted.size() < 2)
        return 0.0;
    std::vector<double> gaps;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        gaps.push_back(sorted[i] - sorted[i - 1]);
    std::sort(gaps.begin(), gaps.end());
    const std::size_t m = gaps.size() / 2;
    return gaps.size() % 2 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
}

constexpr std::array<std::pair<SlitState, const char *>, 3> figure_states{{
    {SlitState::both, "both"},
    {SlitState::upper_only, "upper"},
    {SlitState::lower_only, "lower"},
}};

} // namespace detail

/// Fringe spacing lambda * u / d of the configured slit pair.
inline double fringe_spacing(const ExperimentConfig &cfg) {
    return cfg.ctx.wavelength() * cfg.source_to_screen / (cfg.upper.center - cfg.lower.center);
}

/// Interference window spanning the central five fringes, clipped to the grid.
inline PositionInterval central_window(const ExperimentConfig &cfg, const TransverseGrid &grid) {
    const double half = 2.5 * fringe_spacing(cfg);
    return {std::max(grid.lower(), -half), std::min(grid.upper(), half)};
}

/// Intensity at the lens plane (no lens, no wires) for both slits and for
/// each single slit.
inline ScenarioResult scenario_interference(const ExperimentConfig &config) {
    validate(config);
    ScenarioResult result{.profiles = {}, .metrics = {}, .config = config};
    for (const auto &[state, name] : detail::figure_states) {
        auto profile = intensity(lens_plane_field(with_state(config, state)));
        result.metrics[std::string{"peak_count_"} + name] = static_cast<double>(find_peaks(profile).size());
        result.profiles.emplace(name, std::move(profile));
    }
    const auto &both = result.profiles.at("both");
    const auto minima = find_minima(both);
    result.metrics["visibility_both"] = visibility(both, central_window(config, both.grid()));
    result.metrics["minima_count_both"] = static_cast<double>(minima.size());
    result.metrics["fringe_spacing_m"] = detail::median_spacing(minima);
    result.metrics["fringe_spacing_expected_m"] = fringe_spacing(config);
    return result;
}

/// Intensity at the image plane behind the lens for both slits and for each
/// single slit, with peak positions compared against geometric imaging.
inline ScenarioResult scenario_lens_image(const ExperimentConfig &config) {
    validate(config);
    if (!config.lens)
        throw scenario_error{"lens_image scenario requires a lens"};
    ScenarioResult result{.profiles = {}, .metrics = {}, .config = config};
    const double v = resolved_image_distance(config);
    const double magnification = v / config.source_to_screen;
    // Real images are inverted.
    const double predicted_low = -magnification * config.upper.center;
    const double predicted_high = -magnification * config.lower.center;
    result.metrics["image_distance_m"] = v;
    result.metrics["magnification"] = magnification;
    result.metrics["predicted_upper_slit_image_m"] = predicted_low;
    result.metrics["predicted_lower_slit_image_m"] = predicted_high;

    for (const auto &[state, name] : detail::figure_states) {
        const auto cfg = with_state(config, state);
        auto profile = intensity(image_plane_field(cfg, lens_plane_field(cfg)));
        const auto peaks = find_peaks(profile);
        result.metrics[std::string{"peak_count_"} + name] = static_cast<double>(peaks.size());
        if (state != SlitState::both && !peaks.empty()) {
            const auto top = std::max_element(peaks.heights.begin(), peaks.heights.end()) - peaks.heights.begin();
            result.metrics[std::string{"peak_position_"} + name + "_m"] = peaks.positions[top];
        }
        if (state == SlitState::both && peaks.size() == 2) {
            result.metrics["peak_position_both_low_m"] = peaks.positions[0];
            result.metrics["peak_position_both_high_m"] = peaks.positions[1];
            result.metrics["peak_position_error_rel"] =
                std::max(std::abs(peaks.positions[0] - predicted_low), std::abs(peaks.positions[1] - predicted_high)) /
                (predicted_high - predicted_low);
        }
        result.profiles.emplace(name, std::move(profile));
    }
    return result;
}

/// Wire positions for the wires scenario: explicit centers if configured,
/// otherwise the `wire_count` minima of the both-slits lens-plane pattern
/// closest to the axis.
inline WireArraySpec place_wires(const ExperimentConfig &config, const IntensityProfile &both_at_lens) {
    const auto &settings = *config.wires;
    WireArraySpec spec{.centers = settings.centers, .wire_width = settings.wire_width};
    if (spec.centers.empty()) {
        auto minima = find_minima(both_at_lens);
        if (minima.size() < settings.wire_count)
            throw scenario_error{"found " + std::to_string(minima.size()) + " interference minima but " +
                                 std::to_string(settings.wire_count) + " wires were requested"};
        std::stable_sort(minima.begin(), minima.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        minima.resize(settings.wire_count);
        std::sort(minima.begin(), minima.end());
        spec.centers = std::move(minima);
    }
    return spec;
}

/// Lens imaging with and without wires on the lens plane, for both slits and
/// for the upper slit alone.
inline ScenarioResult scenario_wires(const ExperimentConfig &config) {
    validate(config);
    if (!config.lens)
        throw scenario_error{"wires scenario requires a lens"};
    if (!config.wires)
        throw scenario_error{"wires scenario requires wire settings"};
    ScenarioResult result{.profiles = {}, .metrics = {}, .config = config};

    const auto both_cfg = with_state(config, SlitState::both);
    const auto upper_cfg = with_state(config, SlitState::upper_only);
    const auto both_lens = lens_plane_field(both_cfg);
    const auto upper_lens = lens_plane_field(upper_cfg);

    const auto wires = place_wires(config, intensity(both_lens));
    const auto mask = wire_mask(config.lens_grid, wires);

    const auto run = [&](const ExperimentConfig &cfg, const SampledField &at_lens, const char *name) {
        auto clear = intensity(image_plane_field(cfg, at_lens));
        auto blocked = intensity(image_plane_field(cfg, at_lens, &mask));
        const double ratio = flux_ratio(blocked, clear);
        const double attenuation = peak_attenuation(find_peaks(blocked), find_peaks(clear));
        const double intercepted = 1.0 - total_flux(apply_mask(at_lens, mask)) / total_flux(at_lens);
        result.profiles.emplace(std::string{name} + "_no_wires", std::move(clear));
        result.profiles.emplace(std::string{name} + "_wires", std::move(blocked));
        return std::array{ratio, attenuation, intercepted};
    };
    const auto both = run(both_cfg, both_lens, "both");
    const auto single = run(upper_cfg, upper_lens, "upper");

    result.metrics["flux_ratio_both"] = both[0];
    result.metrics["peak_attenuation_both"] = both[1];
    result.metrics["lens_plane_interception_both"] = both[2];
    result.metrics["flux_ratio_single_slit"] = single[0];
    result.metrics["peak_attenuation_single_slit"] = single[1];
    result.metrics["lens_plane_interception_single_slit"] = single[2];
    result.metrics["wire_width_m"] = wires.wire_width;
    result.metrics["wire_count"] = static_cast<double>(wires.centers.size());
    for (std::size_t i = 0; i < wires.centers.size(); ++i)
        result.metrics["wire_center_" + std::to_string(i) + "_m"] = wires.centers[i];
    return result;
}

} // namespace huygens
