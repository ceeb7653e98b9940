#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "huygens/cli.hpp"

int main(int argc, char **argv) {
    using namespace huygens::cli;

    CLI::App app{"Scalar Huygens-Fresnel simulation of slits, a thin lens and wire obstructions"};
    std::string scenario;
    std::string config;
    std::string out;
    std::vector<std::string> sets;
    std::size_t samples = 0;

    app.add_option("--scenario", scenario, "interference | lens_image | wires")->required();
    app.add_option("--config", config, "JSON experiment document (built-in defaults when omitted)");
    app.add_option("--out", out, "output directory")->required();
    app.add_option("--set", sets, "override, key=value with dotted keys (repeatable)");
    app.add_option("--samples-override", samples, "lens and image plane sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    RunManifest manifest;
    const auto parsed = parse_scenario(scenario);
    if (!parsed) {
        std::cerr << "unknown scenario '" << scenario << "'\n";
        return exit_config_error;
    }
    manifest.scenario = *parsed;
    manifest.config_path = config;
    manifest.output_dir = out;
    for (const auto &s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            std::cerr << "--set expects key=value, got '" << s << "'\n";
            return exit_config_error;
        }
        manifest.overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (samples > 0)
        manifest.samples_override = samples;
    return run(manifest, std::cerr);
}
