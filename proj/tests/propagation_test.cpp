#include <gtest/gtest.h>

#include <cmath>

#include "huygens/analysis.hpp"
#include "huygens/elements.hpp"
#include "huygens/oracle.hpp"
#include "huygens/propagation.hpp"
#include "test_support.hpp"

using namespace huygens;

namespace {

const WaveContext red{650e-9};

SampledField double_slit(const TransverseGrid &g, double separation, double width) {
    const auto mask = slit_mask(g, {{0.5 * separation, width}, {-0.5 * separation, width}});
    return apply_mask(SampledField{g, std::vector<complex>(g.size(), 1.0), 0.0}, mask);
}

} // namespace

TEST(Propagate, ZeroSourceGivesZeroField) {
    const SampledField src{make_grid(0, 1e-3, 101), 0.0};
    const auto out = propagate(src, make_grid(0, 5e-3, 51), 1.0, red);
    for (const auto &a : out.amplitudes())
        EXPECT_EQ(a, complex{});
    EXPECT_EQ(out.axial_position(), 1.0);
}

TEST(Propagate, SingleSampleIsOneKernelTerm) {
    const auto g = make_grid(0, 1e-3, 201);
    std::vector<complex> amps(g.size());
    const complex a{0.7, -0.2};
    amps[100] = a;
    const SampledField src{g, amps, 0.0};
    const auto target = make_grid(0, 5e-3, 41);
    const auto out = propagate(src, target, 1.0, red);
    for (std::size_t i = 0; i < target.size(); ++i) {
        const double y = target.position(i);
        const double r = std::sqrt(1.0 + y * y);
        const complex expected = a * g.spacing() * std::polar(1.0, red.wavenumber() * r) / r;
        EXPECT_LE(std::abs(out.amplitudes()[i] - expected), 1e-12 * std::abs(expected)) << "y = " << y;
    }
}

TEST(Propagate, DoubleSlitFirstMinimaMatchFarFieldPrediction) {
    // 250 um slits 2 mm apart, 1 m downstream: minima at (m + 1/2) lambda z / d.
    const double d = 2e-3, w = 250e-6, z = 1.0;
    const auto src = double_slit(make_grid(0, 1.2e-3, 1921), d, w);
    const auto profile = intensity(propagate(src, make_grid(0, 1e-3, 2001), z, red));
    const double spacing = red.wavelength() * z / d;
    const auto minima = find_minima(profile);
    const auto near = [&](double target) {
        return std::any_of(minima.begin(), minima.end(),
                           [&](double m) { return std::abs(m - target) <= 0.02 * spacing; });
    };
    EXPECT_NEAR(0.5 * spacing, 0.1625e-3, 1e-12);
    EXPECT_TRUE(near(0.5 * spacing));
    EXPECT_TRUE(near(-0.5 * spacing));
}

TEST(Propagate, IsLinear) {
    auto gen = test_support::rng(42);
    const auto g = make_grid(0, 1.5e-3, 301);
    const auto target = make_grid(0, 5e-3, 257);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f1 = test_support::random_amplitudes(gen, g.size());
        const auto f2 = test_support::random_amplitudes(gen, g.size());
        const complex a{0.3, 1.1}, b{-2.0, 0.25};
        std::vector<complex> mix(g.size());
        for (std::size_t i = 0; i < mix.size(); ++i)
            mix[i] = a * f1[i] + b * f2[i];
        const auto lhs = propagate(SampledField{g, mix, 0.0}, target, 1.0, red);
        const auto p1 = propagate(SampledField{g, f1, 0.0}, target, 1.0, red);
        const auto p2 = propagate(SampledField{g, f2, 0.0}, target, 1.0, red);
        std::vector<complex> rhs(target.size());
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = a * p1.amplitudes()[i] + b * p2.amplitudes()[i];
        EXPECT_LE(test_support::max_relative_difference(test_support::to_vector(lhs.amplitudes()), rhs), 1e-12);
    }
}

TEST(Propagate, EvenSourceGivesEvenIntensity) {
    auto gen = test_support::rng(5);
    const auto g = make_grid(0, 1e-3, 401);
    auto amps = test_support::random_amplitudes(gen, g.size());
    for (std::size_t i = 0; i < g.size() / 2; ++i)
        amps[g.size() - 1 - i] = amps[i];
    const auto I = intensity(propagate(SampledField{g, amps, 0.0}, make_grid(0, 5e-3, 501), 1.0, red));
    const auto values = test_support::to_vector(I.values());
    const auto mirror = test_support::reflected(I.values());
    const double peak = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i)
        ASSERT_LE(std::abs(values[i] - mirror[i]), 1e-10 * peak);
}

TEST(Propagate, RejectsNonForwardGeometry) {
    const SampledField src{make_grid(0, 1e-3, 11), std::vector<complex>(11, 1.0), 0.5};
    EXPECT_THROW(propagate(src, make_grid(0, 1e-3, 11), 0.5, red), invalid_geometry_error);
    EXPECT_THROW(propagate(src, make_grid(0, 1e-3, 11), 0.1, red), invalid_geometry_error);
    EXPECT_THROW(PropagationGeometry{0.0}, invalid_geometry_error);
}

TEST(Propagate, ExtraPhaseLengthMustMatch) {
    const SampledField src{make_grid(0, 1e-3, 11), std::vector<complex>(11, 1.0), 0.0};
    const std::vector<double> phases(10, 0.0);
    EXPECT_THROW(propagate(src, make_grid(0, 1e-3, 11), 1.0, red, phases), invalid_argument_error);
}

TEST(Propagate, ZeroExtraPhaseMatchesPlainKernel) {
    auto gen = test_support::rng(8);
    const auto g = make_grid(0, 1e-3, 129);
    const SampledField src{g, test_support::random_amplitudes(gen, g.size()), 0.0};
    const std::vector<double> zeros(g.size(), 0.0);
    EXPECT_EQ(propagate(src, make_grid(0, 4e-3, 65), 1.0, red, zeros), propagate(src, make_grid(0, 4e-3, 65), 1.0, red));
}

TEST(Propagate, EachTargetPointIsIndependentOfTheRest) {
    // Bit-identical whether a point is evaluated alone or as part of a grid.
    auto gen = test_support::rng(99);
    const auto g = make_grid(0, 1e-3, 333);
    const SampledField src{g, test_support::random_amplitudes(gen, g.size(), 0.3), 0.0};
    const auto target = make_grid(0, 5e-3, 1001);
    const auto full = propagate(src, target, 0.8, red);
    EXPECT_EQ(full, propagate(src, target, 0.8, red));
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{499}, std::size_t{500}, std::size_t{777}, std::size_t{1000}}) {
        const auto single = propagate(src, make_grid(target.position(i), 1e-3, 1), 0.8, red);
        ASSERT_EQ(single.amplitudes()[0], full.amplitudes()[i]);
    }
}

TEST(PropagationGeometry, PointDistanceNeverBelowAxialDistance) {
    auto gen = test_support::rng(1);
    std::uniform_real_distribution<double> pos(-1e-2, 1e-2);
    const PropagationGeometry geom{0.75};
    for (int i = 0; i < 1000; ++i)
        ASSERT_GE(geom.point_distance(pos(gen), pos(gen)), 0.75);
}

TEST(RequiredSamples, DoublingOversamplingAtLeastDoublesIntervals) {
    for (double os : {1.0, 1.5, 3.0, 8.0, 13.0})
        for (double a : {1e-4, 3e-3, 1e-2}) {
            const auto n1 = required_samples(a, 5e-3, 1.0, red, os) - 1;
            const auto n2 = required_samples(a, 5e-3, 1.0, red, 2 * os) - 1;
            EXPECT_GE(n2, 2 * n1 - 1) << "os=" << os << " a=" << a;
        }
}

TEST(RequiredSamples, MonotoneInOversamplingAndExtents) {
    std::size_t prev = 0;
    for (double os = 1.0; os <= 32.0; os *= 1.3) {
        const auto n = required_samples(3e-3, 5e-3, 1.0, red, os);
        EXPECT_GE(n, prev);
        prev = n;
    }
    prev = 0;
    for (double t = 0.0; t <= 2e-2; t += 1e-3) {
        const auto n = required_samples(3e-3, t, 1.0, red, 8.0);
        EXPECT_GE(n, prev);
        prev = n;
    }
    prev = 0;
    for (double a = 1e-4; a <= 2e-2; a *= 1.5) {
        const auto n = required_samples(a, 5e-3, 1.0, red, 8.0);
        EXPECT_GE(n, prev);
        prev = n;
    }
}

TEST(RequiredSamples, ZeroTargetExtentLeavesApertureSelfTerm) {
    // Worst offset is then half the aperture: dy <= lambda / (2 os sin(theta)).
    const double a = 3e-3, z = 1.0, os = 8.0;
    const double sin_theta = (a / 2) / std::hypot(z, a / 2);
    const auto expected = static_cast<std::size_t>(std::ceil(a / (red.wavelength() / (2 * os * sin_theta)))) + 1;
    EXPECT_EQ(required_samples(a, 0.0, z, red, os), expected);
    EXPECT_GE(required_samples(a, 1e-6, z, red, os), expected);
    EXPECT_LE(required_samples(a, 1e-6, z, red, os), expected + 1);
}

TEST(RequiredSamples, RejectsInvalidInputs) {
    EXPECT_THROW(required_samples(0.0, 1e-3, 1.0, red, 8.0), invalid_argument_error);
    EXPECT_THROW(required_samples(1e-3, 1e-3, 0.0, red, 8.0), invalid_argument_error);
    EXPECT_THROW(required_samples(1e-3, 1e-3, 1.0, red, 0.5), invalid_argument_error);
}

TEST(RequiredSamples, AfsharGeometryConvergesAtTheReturnedCount) {
    // Extents 3 mm (source) and 5 mm (target), z = 1 m, oversampling 8.
    const double source_half = 1.5e-3, target_half = 2.5e-3, z = 1.0;
    const auto n_star = required_samples(2 * source_half, 2 * target_half, z, red, 8.0);
    const auto target = make_grid(0, target_half, 1001);

    const auto simulate = [&](std::size_t n) {
        const auto g = make_grid(0, source_half, n);
        auto t = test_support::coverage_transmission(g, 1e-3, 100e-6);
        const auto t2 = test_support::coverage_transmission(g, -1e-3, 100e-6);
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] += t2[i];
        const auto src = apply_mask(SampledField{g, std::vector<complex>(n, 1.0), 0.0}, Mask{g, t});
        return test_support::to_vector(intensity(propagate(src, target, z, red)).values());
    };
    const auto coarse = simulate(n_star);
    const auto fine = simulate(2 * n_star);
    EXPECT_LT(test_support::rms_difference_over_peak(coarse, fine), 0.005);
}
