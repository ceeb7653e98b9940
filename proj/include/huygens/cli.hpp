#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "huygens/config.hpp"
#include "huygens/scenarios.hpp"

namespace huygens::cli {

namespace fs = std::filesystem;

enum class Scenario { interference, lens_image, wires };

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_scenario_error = 3;

inline std::optional<Scenario> parse_scenario(std::string_view s) {
    if (s == "interference")
        return Scenario::interference;
    if (s == "lens_image")
        return Scenario::lens_image;
    if (s == "wires")
        return Scenario::wires;
    return std::nullopt;
}

struct RunManifest {
    Scenario scenario = Scenario::interference;
    fs::path config_path; ///< empty: built-in default document
    fs::path output_dir;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::optional<std::size_t> samples_override; ///< lens and image plane sample count
};

inline ScenarioResult run_scenario(Scenario s, const ExperimentConfig &cfg) {
    switch (s) {
    case Scenario::interference: return scenario_interference(cfg);
    case Scenario::lens_image: return scenario_lens_image(cfg);
    case Scenario::wires: return scenario_wires(cfg);
    }
    throw invalid_argument_error{"unknown scenario"};
}

/// Scientific notation with 17 significant digits (round-trips a double).
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

inline std::string profile_csv(const IntensityProfile &p) {
    std::string out = "position_m,intensity_rel\n";
    const auto v = p.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += format_number(p.grid().position(i));
        out += ',';
        out += format_number(v[i]);
        out += '\n';
    }
    return out;
}

inline std::string metrics_csv(const std::map<std::string, double> &metrics) {
    std::string out = "metric_name,value\n";
    for (const auto &[name, value] : metrics)
        out += name + ',' + format_number(value) + '\n';
    return out;
}

/// Rows of a two-column numeric CSV with a header line.
inline std::vector<std::pair<double, double>> read_profile_csv(const fs::path &path) {
    std::ifstream in{path};
    if (!in)
        throw error{"cannot open " + path.string()};
    std::string line;
    std::getline(in, line);
    if (line != "position_m,intensity_rel")
        throw error{path.string() + ": unexpected header"};
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw error{path.string() + ": malformed row"};
        rows.emplace_back(std::strtod(line.c_str(), nullptr), std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return rows;
}

inline json load_document(const RunManifest &m) {
    json doc;
    if (m.config_path.empty()) {
        doc = default_config_document();
    } else {
        std::ifstream in{m.config_path};
        if (!in)
            throw config_error{"", "cannot read config file " + m.config_path.string()};
        std::stringstream ss;
        ss << in.rdbuf();
        doc = json::parse(ss.str(), nullptr, false);
        if (doc.is_discarded())
            throw config_error{"", "malformed JSON in " + m.config_path.string()};
    }
    for (const auto &[key, value] : m.overrides)
        apply_override(doc, key, value);
    if (m.samples_override) {
        apply_override(doc, "grids.lens.n_samples", std::to_string(*m.samples_override));
        apply_override(doc, "grids.image.n_samples", std::to_string(*m.samples_override));
    }
    return doc;
}

namespace detail {

/// Writes files into a directory; on destruction without commit() every file
/// written so far is removed again.
class OutputBatch {
public:
    explicit OutputBatch(fs::path dir) : dir_{std::move(dir)} {}
    OutputBatch(const OutputBatch &) = delete;
    OutputBatch &operator=(const OutputBatch &) = delete;

    ~OutputBatch() {
        if (committed_)
            return;
        std::error_code ec;
        for (const auto &p : written_)
            fs::remove(p, ec);
    }

    void write(const std::string &name, const std::string &content) {
        const auto path = dir_ / name;
        written_.push_back(path);
        std::ofstream out{path, std::ios::binary | std::ios::trunc};
        out << content;
        out.close();
        if (!out)
            throw error{"failed to write " + path.string()};
    }

    void commit() noexcept { committed_ = true; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    bool committed_ = false;
};

} // namespace detail

/// Runs one scenario and writes `<profile>.csv` for each profile, metrics.csv
/// and resolved_config.json into the output directory. Returns the exit code;
/// diagnostics go to `diag`.
inline int run(const RunManifest &manifest, std::ostream &diag = std::cerr) {
    ExperimentConfig cfg = default_experiment();
    try {
        cfg = parse_config(load_document(manifest));
    } catch (const config_error &e) {
        diag << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const error &e) {
        diag << "config error: " << e.what() << '\n';
        return exit_config_error;
    }

    try {
        const auto result = run_scenario(manifest.scenario, cfg);
        std::error_code ec;
        fs::create_directories(manifest.output_dir, ec);
        if (ec)
            throw error{"cannot create output directory " + manifest.output_dir.string() + ": " + ec.message()};
        detail::OutputBatch batch{manifest.output_dir};
        for (const auto &[name, profile] : result.profiles)
            batch.write(name + ".csv", profile_csv(profile));
        batch.write("metrics.csv", metrics_csv(result.metrics));
        batch.write("resolved_config.json", to_json(result.config).dump(2) + "\n");
        batch.commit();
    } catch (const std::exception &e) {
        diag << "scenario error: " << e.what() << '\n';
        return exit_scenario_error;
    }
    return exit_ok;
}

} // namespace huygens::cli
