// Finds the wire width at which the single-slit image peak drops by a target
// fraction on the default geometry. Attenuation grows monotonically with the
// width, so a bisection over (0, fringe spacing / 4] suffices.

#include <cstdio>
#include <cstdlib>

#include "huygens/scenarios.hpp"

int main(int argc, char **argv) {
    using namespace huygens;
    const double target = argc > 1 ? std::strtod(argv[1], nullptr) : 0.10;
    auto cfg = default_experiment();
    double lo = 0.0;
    double hi = 0.25 * fringe_spacing(cfg);

    const auto attenuation = [&](double width) {
        cfg.wires->wire_width = width;
        return scenario_wires(cfg).metrics.at("peak_attenuation_single_slit");
    };
    if (attenuation(hi) < target) {
        std::fprintf(stderr, "target %.4f not reachable below fringe/4 (%.4f at %.3e m)\n", target, attenuation(hi), hi);
        return 1;
    }
    for (int it = 0; it < 30 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double a = attenuation(mid);
        std::printf("width %.6e m -> single-slit peak attenuation %.6f\n", mid, a);
        (a < target ? lo : hi) = mid;
    }
    std::printf("tuned wire width: %.3e m\n", 0.5 * (lo + hi));
    return 0;
}
