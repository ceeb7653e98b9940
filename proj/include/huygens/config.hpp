#pragma once

// JSON experiment documents: parsing into a resolved ExperimentConfig,
// serializing one back, and dotted-path overrides.

#include <cmath>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "huygens/scenarios.hpp"

namespace huygens {

using json = nlohmann::json;

namespace detail {

inline std::string join_key(std::string_view prefix, std::string_view key) {
    return prefix.empty() ? std::string{key} : std::string{prefix} + "." + std::string{key};
}

/// Typed accessor for one object that remembers which keys were consumed.
class ConfigSection {
public:
    ConfigSection(const json &node, std::string path) : node_{node}, path_{std::move(path)} {
        if (!node_.is_object())
            throw config_error{path_, "expected an object"};
    }

    [[nodiscard]] bool has(const char *key) const { return node_.contains(key); }

    [[nodiscard]] std::string path_of(const char *key) const { return join_key(path_, key); }

    double positive_length(const char *key) {
        const double v = number(key);
        if (!(v > 0) || !std::isfinite(v))
            throw config_error{path_of(key), "must be a positive finite length"};
        return v;
    }

    double non_negative_length(const char *key) {
        const double v = number(key);
        if (!(v >= 0) || !std::isfinite(v))
            throw config_error{path_of(key), "must be a non-negative finite length"};
        return v;
    }

    double number(const char *key) {
        const auto &v = require(key);
        if (!v.is_number())
            throw config_error{path_of(key), "must be a number"};
        return v.get<double>();
    }

    std::size_t count(const char *key) {
        const auto &v = require(key);
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw config_error{path_of(key), "must be a positive integer"};
        return v.get<std::size_t>();
    }

    std::size_t non_negative_count(const char *key) {
        const auto &v = require(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw config_error{path_of(key), "must be a non-negative integer"};
        return v.get<std::size_t>();
    }

    std::string text(const char *key) {
        const auto &v = require(key);
        if (!v.is_string())
            throw config_error{path_of(key), "must be a string"};
        return v.get<std::string>();
    }

    std::vector<double> numbers(const char *key) {
        const auto &v = require(key);
        if (!v.is_array())
            throw config_error{path_of(key), "must be an array of numbers"};
        std::vector<double> out;
        for (const auto &x : v) {
            if (!x.is_number())
                throw config_error{path_of(key), "must be an array of numbers"};
            out.push_back(x.get<double>());
        }
        return out;
    }

    ConfigSection section(const char *key) { return ConfigSection{require(key), path_of(key)}; }

    /// Rejects keys that were never read.
    void finish() const {
        for (const auto &[key, _] : node_.items())
            if (!used_.contains(key))
                throw config_error{join_key(path_, key), "unknown key"};
    }

private:
    const json &require(const char *key) {
        if (!node_.contains(key))
            throw config_error{path_of(key), "missing required key"};
        used_.insert(key);
        return node_.at(key);
    }

    const json &node_;
    std::string path_;
    std::set<std::string> used_;
};

struct PlaneGridRequest {
    double half_width;
    std::size_t n_samples; // 0: resolve automatically
};

inline PlaneGridRequest read_plane_grid(ConfigSection &grids, const char *name) {
    auto s = grids.section(name);
    PlaneGridRequest out{s.positive_length("half_width_m"), 0};
    if (s.has("n_samples"))
        out.n_samples = s.count("n_samples");
    s.finish();
    return out;
}

} // namespace detail

/// Resolves a JSON experiment document. Required keys: wavelength_m,
/// slit_width_m, slit_separation_m, u_m, focal_length_m,
/// grids.lens.half_width_m, grids.image.half_width_m. Everything else takes
/// the documented default, and the returned config carries the resolved values.
inline ExperimentConfig parse_config(const json &doc) {
    detail::ConfigSection root{doc, ""};
    const WaveContext ctx{root.positive_length("wavelength_m")};
    const double slit_width = root.positive_length("slit_width_m");
    const double separation = root.positive_length("slit_separation_m");
    if (!(separation > slit_width))
        throw config_error{"slit_separation_m", "must exceed slit_width_m so the slits do not overlap"};
    const double u = root.positive_length("u_m");
    const LensSpec lens{root.positive_length("focal_length_m")};

    SlitState state = SlitState::both;
    if (root.has("slit_state")) {
        const auto name = root.text("slit_state");
        const auto parsed = parse_slit_state(name);
        if (!parsed)
            throw config_error{"slit_state", "unknown slit state '" + name + "'"};
        state = *parsed;
    }

    double v = 0.0;
    if (root.has("lens_to_image_m")) {
        v = root.positive_length("lens_to_image_m");
    } else {
        try {
            v = image_distance(u, lens).distance;
        } catch (const error &e) {
            throw config_error{"focal_length_m", e.what()};
        }
    }

    double oversampling = defaults::oversampling;
    if (root.has("oversampling")) {
        oversampling = root.number("oversampling");
        if (!(oversampling >= 1))
            throw config_error{"oversampling", "must be >= 1"};
    }

    auto grids = root.section("grids");
    const auto lens_req = detail::read_plane_grid(grids, "lens");
    const auto image_req = detail::read_plane_grid(grids, "image");
    const auto auto_n = auto_plane_samples(lens_req.half_width, image_req.half_width, v, ctx, oversampling);
    const TransverseGrid lens_grid{0.0, lens_req.half_width, lens_req.n_samples ? lens_req.n_samples : auto_n};
    const TransverseGrid image_grid{0.0, image_req.half_width, image_req.n_samples ? image_req.n_samples : auto_n};

    const SlitSpec upper{0.5 * separation, slit_width};
    const SlitSpec lower{-0.5 * separation, slit_width};

    std::optional<TransverseGrid> source_grid;
    std::size_t samples_per_slit = defaults::samples_per_slit;
    if (grids.has("source")) {
        auto s = grids.section("source");
        if (s.has("samples_per_slit"))
            samples_per_slit = s.count("samples_per_slit");
        if (s.has("half_width_m") != s.has("n_samples"))
            throw config_error{s.path_of("n_samples"), "half_width_m and n_samples must be given together"};
        if (s.has("half_width_m"))
            source_grid.emplace(0.0, s.positive_length("half_width_m"), s.count("n_samples"));
        s.finish();
    }
    grids.finish();
    if (!source_grid)
        source_grid = auto_source_grid(upper, lower, samples_per_slit, lens_grid, u, ctx, oversampling);

    WireSettings wires;
    if (root.has("wires")) {
        auto w = root.section("wires");
        if (w.has("width_m"))
            wires.wire_width = w.non_negative_length("width_m");
        if (w.has("count"))
            wires.wire_count = w.non_negative_count("count");
        if (w.has("centers_m"))
            wires.centers = w.numbers("centers_m");
        w.finish();
    }
    root.finish();

    ExperimentConfig cfg{
        .ctx = ctx,
        .upper = upper,
        .lower = lower,
        .slit_state = state,
        .source_to_screen = u,
        .lens = lens,
        .lens_to_image = v,
        .wires = wires,
        .source_grid = *source_grid,
        .lens_grid = lens_grid,
        .image_grid = image_grid,
    };
    try {
        validate(cfg);
    } catch (const error &e) {
        throw config_error{"", e.what()};
    }
    return cfg;
}

inline ExperimentConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw config_error{"", std::string{"malformed document: "} + e.what()};
    }
    return parse_config(doc);
}

/// Document with only the required keys, set to the default geometry.
inline json default_config_document() {
    return json{
        {"wavelength_m", defaults::wavelength},
        {"slit_width_m", defaults::slit_width},
        {"slit_separation_m", defaults::slit_separation},
        {"u_m", defaults::source_to_screen},
        {"focal_length_m", defaults::focal_length},
        {"grids",
         {{"lens", {{"half_width_m", defaults::plane_half_width}}},
          {"image", {{"half_width_m", defaults::plane_half_width}}}}},
    };
}

/// Serializes a resolved config; parse_config(to_json(c)) == c.
inline json to_json(const ExperimentConfig &cfg) {
    if (!(cfg.upper.width == cfg.lower.width) || !(cfg.upper.center == -cfg.lower.center))
        throw invalid_argument_error{"to_json: only equal slits symmetric about the axis are representable"};
    if (!cfg.lens)
        throw invalid_argument_error{"to_json: configuration has no lens"};
    for (const auto *g : {&cfg.source_grid, &cfg.lens_grid, &cfg.image_grid})
        if (g->center() != 0.0)
            throw invalid_argument_error{"to_json: grids must be centred on the axis"};

    const auto grid = [](const TransverseGrid &g) {
        return json{{"half_width_m", g.half_width()}, {"n_samples", g.size()}};
    };
    json doc{
        {"wavelength_m", cfg.ctx.wavelength()},
        {"slit_width_m", cfg.upper.width},
        {"slit_separation_m", cfg.upper.center - cfg.lower.center},
        {"slit_state", std::string{to_string(cfg.slit_state)}},
        {"u_m", cfg.source_to_screen},
        {"focal_length_m", cfg.lens->focal_length},
        {"lens_to_image_m", resolved_image_distance(cfg)},
        {"grids", {{"source", grid(cfg.source_grid)}, {"lens", grid(cfg.lens_grid)}, {"image", grid(cfg.image_grid)}}},
    };
    if (cfg.wires) {
        doc["wires"] = {{"width_m", cfg.wires->wire_width}, {"count", cfg.wires->wire_count}};
        if (!cfg.wires->centers.empty())
            doc["wires"]["centers_m"] = cfg.wires->centers;
    }
    return doc;
}

/// Sets `doc[a][b]...` for a dotted key. The value is read as JSON when it
/// parses as such, otherwise as a plain string.
inline void apply_override(json &doc, std::string_view key, std::string_view value) {
    if (key.empty())
        throw config_error{"", "override with an empty key"};
    json *node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part{key.substr(start, dot == std::string_view::npos ? key.npos : dot - start)};
        if (part.empty())
            throw config_error{std::string{key}, "malformed override key"};
        if (node->is_null())
            *node = json::object();
        if (!node->is_object())
            throw config_error{std::string{key}, "override path crosses a non-object value"};
        node = &(*node)[part];
        if (dot == std::string_view::npos)
            break;
        start = dot + 1;
    }
    auto parsed = json::parse(value, nullptr, false);
    *node = parsed.is_discarded() ? json(std::string{value}) : std::move(parsed);
}

} // namespace huygens
