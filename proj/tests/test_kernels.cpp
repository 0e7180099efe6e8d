#include <gtest/gtest.h>

#include <random>

#include "rbcom/error.hpp"
#include "rbcom/framing.hpp"
#include "rbcom/kernels.hpp"
#include "rbcom/rng.hpp"

using namespace rbcom;

TEST(Kernels, NccProfileSerialEqualsParallel) {
    const SymbolAlphabet a(2, 0.1);
    const auto ss = make_ss(32, a, 6);
    Rng rng(4);
    std::normal_distribution<double> z(1.0, 0.1);
    std::vector<double> sig(5000);
    for (auto& v : sig) v = z(rng);
    EXPECT_EQ(kernels::serial::ncc_profile(sig, ss), kernels::parallel::ncc_profile(sig, ss));
}

TEST(Kernels, FirstCrossingMatchesDetect) {
    const SymbolAlphabet a(2, 0.1);
    const auto ss = make_ss(16, a, 2);
    std::vector<double> sig(300, 1.0);
    std::copy(ss.begin(), ss.end(), sig.begin() + 123);
    const auto profile = kernels::serial::ncc_profile(sig, ss);
    EXPECT_EQ(kernels::first_crossing(profile, 0.9), detect_ss(sig, ss, 0.9));
}

TEST(Kernels, AdaptiveFramesSerialEqualsParallel) {
    const SymbolAlphabet a(4, 0.3);
    const auto ss = make_ss(16, a, 1);
    const std::vector<double> coef(300, 1.0);
    kernels::AdaptiveFrameJob job{ss, a, {0.9, 3e-4}, 1.0, 2e-7, 0.9, 133, 5, coef};
    const auto s = kernels::serial::adaptive_frames(job);
    const auto p = kernels::parallel::adaptive_frames(job);
    ASSERT_EQ(s.size(), p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(s[i].errors.symbol_errors, p[i].errors.symbol_errors);
        EXPECT_EQ(s[i].errors.bit_errors, p[i].errors.bit_errors);
        EXPECT_EQ(s[i].sync_miss, p[i].sync_miss);
    }
}

TEST(Kernels, MobilitySweepSerialEqualsParallel) {
    kernels::MobilityScenario sc;
    sc.options.max_rounds = 100'000;
    const std::vector<double> speeds{0.0, 10.0, 20.0};
    const std::vector<double> angles{0.0, 45.0, 90.0, 135.0, 180.0};
    const auto s = kernels::serial::mobility_sweep(speeds, angles, sc);
    const auto p = kernels::parallel::mobility_sweep(speeds, angles, sc);
    ASSERT_EQ(s.size(), p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(s[i].speed, p[i].speed);
        EXPECT_EQ(s[i].angle_deg, p[i].angle_deg);
        EXPECT_EQ(s[i].result.rounds, p[i].result.rounds);
    }
}

TEST(Kernels, ParallelSweepPropagatesErrors) {
    kernels::MobilityScenario sc;
    sc.link.distance = 5000.0;
    const std::vector<double> speeds{1.0}, angles{0.0, 90.0};
    EXPECT_THROW(kernels::parallel::mobility_sweep(speeds, angles, sc), BelowThreshold);
}

TEST(Rng, StreamsAreDistinctAndStable) {
    EXPECT_EQ(stream_seed(1, 2, StreamTag::Noise), stream_seed(1, 2, StreamTag::Noise));
    EXPECT_NE(stream_seed(1, 2, StreamTag::Noise), stream_seed(1, 3, StreamTag::Noise));
    EXPECT_NE(stream_seed(1, 2, StreamTag::Noise), stream_seed(1, 2, StreamTag::Data));
    EXPECT_NE(stream_seed(1, 2, StreamTag::Noise), stream_seed(2, 2, StreamTag::Noise));
}
