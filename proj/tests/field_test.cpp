#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "huygens/field.hpp"
#include "test_support.hpp"

using namespace huygens;

TEST(WaveContext, WavenumberTimesWavelengthIsTwoPi) {
    for (double lambda : {1e-9, 650e-9, 1.55e-6, 0.3}) {
        const WaveContext ctx{lambda};
        EXPECT_NEAR(ctx.wavenumber() * ctx.wavelength() / (2 * std::numbers::pi), 1.0, 1e-12);
    }
}

TEST(WaveContext, RejectsNonPositiveWavelength) {
    EXPECT_THROW(WaveContext{0.0}, invalid_argument_error);
    EXPECT_THROW(WaveContext{-650e-9}, invalid_argument_error);
    EXPECT_THROW(WaveContext{std::nan("")}, invalid_argument_error);
}

TEST(MakeGrid, FiveSamples) {
    const auto g = make_grid(0, 5e-3, 5);
    const std::vector<double> expected{-5e-3, -2.5e-3, 0, 2.5e-3, 5e-3};
    EXPECT_EQ(g.positions(), expected);
}

TEST(MakeGrid, SingleSampleIsTheCenter) {
    const auto g = make_grid(1e-3, 2e-3, 1);
    EXPECT_EQ(g.positions(), std::vector<double>{1e-3});
}

TEST(MakeGrid, SpacingIsTwoHalfWidthsOverIntervals) {
    EXPECT_EQ(make_grid(0, 1, 3).spacing(), 1.0);
    EXPECT_DOUBLE_EQ(make_grid(0, 5e-3, 2463).spacing(), 1e-2 / 2462);
}

TEST(MakeGrid, RejectsInvalidArguments) {
    EXPECT_THROW(make_grid(0, 0, 5), invalid_argument_error);
    EXPECT_THROW(make_grid(0, -1, 5), invalid_argument_error);
    EXPECT_THROW(make_grid(0, 1, 0), invalid_argument_error);
}

TEST(MakeGrid, StrictlyIncreasingUniformAndSymmetric) {
    auto gen = test_support::rng(7);
    std::uniform_real_distribution<double> hw(1e-6, 1.0);
    std::uniform_int_distribution<std::size_t> n(2, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = make_grid(0.0, hw(gen), n(gen) | 1);
        const auto p = g.positions();
        for (std::size_t i = 1; i < p.size(); ++i) {
            ASSERT_LT(p[i - 1], p[i]);
            ASSERT_NEAR(p[i] - p[i - 1], g.spacing(), 1e-12 * g.half_width());
        }
        for (std::size_t i = 0; i < p.size(); ++i)
            ASSERT_EQ(p[p.size() - 1 - i], -p[i]);
        ASSERT_EQ(p[p.size() / 2], 0.0);
    }
}

TEST(MakeGrid, PositionsAreBitReproducible) {
    const auto a = make_grid(1.25e-3, 3.7e-3, 1001).positions();
    const auto b = make_grid(1.25e-3, 3.7e-3, 1001).positions();
    EXPECT_EQ(a, b);
}

TEST(SampledField, EnforcesInvariants) {
    const auto g = make_grid(0, 1, 3);
    EXPECT_THROW(SampledField(g, std::vector<complex>(2), 0.0), invalid_argument_error);
    EXPECT_THROW(SampledField(g, std::vector<complex>{1, complex{std::nan(""), 0}, 1}, 0.0), invalid_argument_error);
    EXPECT_THROW(SampledField(g, std::vector<complex>{1, complex{0, INFINITY}, 1}, 0.0), invalid_argument_error);
}

TEST(MaskAndProfile, EnforceRanges) {
    const auto g = make_grid(0, 1, 3);
    EXPECT_THROW(Mask(g, {0.0, 1.5, 1.0}), invalid_argument_error);
    EXPECT_THROW(Mask(g, {0.0, -0.1, 1.0}), invalid_argument_error);
    EXPECT_THROW(Mask(g, {1.0, 1.0}), invalid_argument_error);
    EXPECT_THROW(IntensityProfile(g, {0.0, -1e-30, 1.0}), invalid_argument_error);
}

TEST(TotalFlux, ZeroField) { EXPECT_EQ(total_flux(SampledField{make_grid(0, 1, 11), 0.0}), 0.0); }

TEST(TotalFlux, SingleUnitSample) {
    const SampledField f{make_grid(0, 0.25, 1), {complex{1, 0}}, 0.0};
    EXPECT_EQ(total_flux(f), 0.5);
}

TEST(TotalFlux, QuadraticInAmplitude) {
    auto gen = test_support::rng(11);
    const auto g = make_grid(0, 1e-3, 257);
    const SampledField f{g, test_support::random_amplitudes(gen, g.size()), 0.0};
    EXPECT_DOUBLE_EQ(total_flux(scale(f, 2.0)), 4.0 * total_flux(f));
}

TEST(ApplyMask, OnesAreIdentityZerosAnnihilate) {
    auto gen = test_support::rng(3);
    const auto g = make_grid(0, 1e-3, 64);
    const SampledField f{g, test_support::random_amplitudes(gen, g.size()), 0.5};
    EXPECT_EQ(apply_mask(f, Mask{g, std::vector<double>(g.size(), 1.0)}), f);
    const auto zero = apply_mask(f, Mask{g, std::vector<double>(g.size(), 0.0)});
    EXPECT_EQ(total_flux(zero), 0.0);
    EXPECT_EQ(zero.axial_position(), 0.5);
}

TEST(ApplyMask, HalfTransmissionHalvesUniformFlux) {
    const auto g = make_grid(0, 1e-3, 100);
    const SampledField f{g, std::vector<complex>(g.size(), complex{0.3, -0.4}), 0.0};
    std::vector<double> t(g.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); i += 2)
        t[i] = 1.0;
    EXPECT_DOUBLE_EQ(total_flux(apply_mask(f, Mask{g, t})), 0.5 * total_flux(f));
}

TEST(ApplyMask, GridMismatch) {
    const SampledField f{make_grid(0, 1, 5), 0.0};
    EXPECT_THROW(apply_mask(f, Mask{make_grid(0, 2, 5), std::vector<double>(5, 1.0)}), incompatible_grid_error);
}

TEST(ApplyMask, BinaryMasksAreIdempotentAndNeverAddFlux) {
    auto gen = test_support::rng(19);
    std::uniform_real_distribution<double> unit;
    const auto g = make_grid(0, 1e-3, 301);
    for (int trial = 0; trial < 50; ++trial) {
        const SampledField f{g, test_support::random_amplitudes(gen, g.size()), 0.0};
        std::vector<double> binary(g.size());
        std::vector<double> soft(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            binary[i] = unit(gen) < 0.5 ? 0.0 : 1.0;
            soft[i] = unit(gen);
        }
        const Mask m{g, binary};
        const auto once = apply_mask(f, m);
        ASSERT_EQ(apply_mask(once, m), once);
        ASSERT_LE(total_flux(once), total_flux(f));
        ASSERT_LE(total_flux(apply_mask(f, Mask{g, soft})), total_flux(f));
    }
}
