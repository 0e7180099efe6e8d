#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "rbcom/error.hpp"
#include "rbcom/framing.hpp"

using namespace rbcom;

TEST(FrameLength, Examples) {
    EXPECT_EQ(frame_length(200.0, 1e8), 133);
    EXPECT_EQ(frame_length(10.0, 1e8), 6);
    EXPECT_THROW(frame_length(1.0, 1e8), FrameTooShort);
}

TEST(FrameLength, AgreesWithSlotCounting) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(3.0, 300.0), rate(2e7, 5e8);
    for (int i = 0; i < 1000; ++i) {
        const double d = dist(rng), b = rate(rng);
        const double t = 2.0 * d / 299792458.0;
        // Count whole symbol slots that end inside one round trip.
        long slots = 0;
        while (static_cast<double>(slots + 1) / b <= t) ++slots;
        if (slots < 2) {
            EXPECT_THROW(frame_length(d, b), FrameTooShort);
        } else {
            EXPECT_EQ(frame_length(d, b), slots) << "d=" << d << " b=" << b;
        }
    }
}

TEST(Alphabet, Examples) {
    const auto two = build_alphabet(2, 0.1);
    ASSERT_EQ(two.order(), 2);
    EXPECT_DOUBLE_EQ(two.level(0), 0.9);
    EXPECT_DOUBLE_EQ(two.level(1), 1.0);

    const auto four = build_alphabet(4, 0.3);
    const double want[] = {0.7, 0.8, 0.9, 1.0};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(four.level(i), want[i], 1e-15);

    EXPECT_THROW(build_alphabet(2, 1.0), InvalidArgument);
    EXPECT_THROW(build_alphabet(1, 0.1), InvalidArgument);
    EXPECT_THROW(build_alphabet(2, 0.0), InvalidArgument);
}

TEST(Alphabet, MaxIsOneAndSpacingUniform) {
    for (int m : {2, 3, 4, 8, 16})
        for (double depth : {0.05, 0.1, 0.3, 0.9}) {
            const auto a = build_alphabet(m, depth);
            EXPECT_EQ(a.max_level(), 1.0);
            const double step = depth / (m - 1);
            for (int i = 1; i < m; ++i) EXPECT_NEAR(a.level(i) - a.level(i - 1), step, 1e-15);
        }
}

TEST(Alphabet, SliceNearestWithLowerTies) {
    const auto a = build_alphabet(2, 0.5);  // {0.5, 1.0}
    EXPECT_EQ(a.slice(0.2), 0);
    EXPECT_EQ(a.slice(0.74), 0);
    EXPECT_EQ(a.slice(0.75), 0);
    EXPECT_EQ(a.slice(0.76), 1);
    EXPECT_EQ(a.slice(3.0), 1);
    EXPECT_EQ(build_alphabet(4, 0.3).bits_per_symbol(), 2);
}

TEST(MakeSs, DeterministicAndTwoLevel) {
    const auto a = build_alphabet(4, 0.3);
    const auto s1 = make_ss(16, a, 99);
    const auto s2 = make_ss(16, a, 99);
    EXPECT_EQ(s1, s2);
    ASSERT_EQ(s1.size(), 16u);
    for (const double v : s1) EXPECT_TRUE(v == a.min_level() || v == a.max_level());
    EXPECT_THROW(make_ss(3, a, 1), InvalidArgument);
}

TEST(DetectSs, ExactOffsetInConstantBackground) {
    const auto a = build_alphabet(2, 0.1);
    const auto ss = make_ss(16, a, 4);
    std::vector<double> sig(64, 1.0);
    std::copy(ss.begin(), ss.end(), sig.begin() + 7);
    const auto off = detect_ss(sig, ss, 0.9);
    ASSERT_TRUE(off.has_value());
    EXPECT_EQ(*off, 7u);

    const std::vector<double> flat(64, 1.0);
    EXPECT_FALSE(detect_ss(flat, ss, 0.9).has_value());
}

TEST(DetectSs, NoiselessAlwaysExact) {
    const auto a = build_alphabet(2, 0.1);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto ss = make_ss(16, a, static_cast<std::uint64_t>(trial));
        std::uniform_int_distribution<std::size_t> pos(0, 100);
        const std::size_t at = pos(rng);
        std::vector<double> sig(at + ss.size() + 20, 1.0);
        std::copy(ss.begin(), ss.end(), sig.begin() + static_cast<long>(at));
        const auto off = detect_ss(sig, ss, 0.99);
        ASSERT_TRUE(off.has_value());
        EXPECT_EQ(*off, at);
    }
}

TEST(DetectSs, RejectsBadArguments) {
    const auto a = build_alphabet(2, 0.1);
    const auto ss = make_ss(16, a, 1);
    const std::vector<double> short_sig(8, 1.0);
    EXPECT_THROW(detect_ss(short_sig, ss, 0.9), InvalidArgument);
    const std::vector<double> sig(32, 1.0);
    EXPECT_THROW(detect_ss(sig, ss, 0.0), InvalidArgument);
    EXPECT_THROW(detect_ss(sig, ss, 1.5), InvalidArgument);
}

TEST(NormalizedXcorr, ScaleAndOffsetInvariant) {
    const std::vector<double> p{1, 0, 1, 1, 0, 0, 1, 0};
    std::vector<double> w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) w[i] = 3.0 * p[i] + 7.0;
    EXPECT_NEAR(normalized_xcorr(w, p), 1.0, 1e-12);
    const std::vector<double> flat(p.size(), 2.0);
    EXPECT_EQ(normalized_xcorr(flat, p), 0.0);
}

TEST(Multiaccess, Examples) {
    const std::int64_t a[] = {100, 150};
    EXPECT_EQ(plan_from_frame_lengths(a).ap_frame, 300);

    // Distances chosen so that N = 100 and N = 150 at 100 MHz.
    const double c = 299792458.0;
    const double d[] = {100.5 * c / 2e8, 150.5 * c / 2e8};
    const auto plan = plan_multiaccess_frames(d, 1e8);
    EXPECT_EQ(plan.user_frames, (std::vector<std::int64_t>{100, 150}));
    EXPECT_EQ(plan.ap_frame, 300);

    const double one[] = {200.0};
    EXPECT_EQ(plan_multiaccess_frames(one, 1e8).ap_frame, 133);
    EXPECT_THROW(plan_multiaccess_frames(std::span<const double>{}, 1e8), InvalidArgument);
}

TEST(Multiaccess, BruteForceLcm) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> users(1, 6);
    std::uniform_int_distribution<std::int64_t> len(2, 60);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::int64_t> n(static_cast<std::size_t>(users(rng)));
        for (auto& v : n) v = len(rng);
        const std::int64_t step = *std::max_element(n.begin(), n.end());
        std::int64_t brute = step;
        const auto divides_all = [&](std::int64_t x) {
            return std::all_of(n.begin(), n.end(), [x](std::int64_t v) { return x % v == 0; });
        };
        while (!divides_all(brute)) brute += step;
        EXPECT_EQ(plan_from_frame_lengths(n).ap_frame, brute);
    }
}
