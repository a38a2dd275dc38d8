#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qfbound/rng.hpp"

using namespace qfb;

// Known-answer vectors distributed with Random123.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}),
              (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}),
              (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(OpenUnit, NeverHitsEndpoints) {
    EXPECT_GT(to_open_unit(0), 0.0);
    EXPECT_LT(to_open_unit(~0ull), 1.0);
}

TEST(NormalStream, Deterministic) {
    NormalStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(NormalStream, SeedsAndStreamsDiffer) {
    NormalStream a(42, 7), b(42, 8), c(43, 7);
    int same_b = 0, same_c = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.next();
        same_b += x == b.next();
        same_c += x == c.next();
    }
    EXPECT_EQ(same_b, 0);
    EXPECT_EQ(same_c, 0);
}

TEST(NormalStream, Moments) {
    NormalStream s(2024, 0);
    const int n = 1 << 20;
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = s.next();
        m1 += z;
        m2 += z * z;
        m4 += z * z * z * z;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    // 5-sigma bands: sd(mean) = 1/sqrt(n), sd(m2) = sqrt(2/n), sd(m4) = sqrt(96/n)
    EXPECT_LE(std::abs(m1), 5.0 / std::sqrt(n));
    EXPECT_LE(std::abs(m2 - 1.0), 5.0 * std::sqrt(2.0 / n));
    EXPECT_LE(std::abs(m4 - 3.0), 5.0 * std::sqrt(96.0 / n));
}

TEST(NormalStream, TailFrequency) {
    NormalStream s(5, 1);
    const int n = 1 << 20;
    int beyond = 0;
    for (int i = 0; i < n; ++i) beyond += std::abs(s.next()) > 3.0;
    const double p = 0.0026997960632601866;  // P(|Z| > 3)
    EXPECT_LE(std::abs(beyond - n * p), 5.0 * std::sqrt(n * p * (1 - p)));
}
