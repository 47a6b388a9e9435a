#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "cgs/rng.hpp"

using namespace cgs;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox, KnownAnswerZeros) {
  const auto out = Philox4x32::apply({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::apply({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                     {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out = Philox4x32::apply({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                     {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, SeekReproducesStream) {
  CounterRng a(42, 3);
  std::vector<std::uint32_t> first;
  for (int i = 0; i < 40; ++i) first.push_back(a.next_u32());
  CounterRng b(42, 3);
  b.seek(5);
  for (int i = 20; i < 40; ++i) EXPECT_EQ(b.next_u32(), first[i]);
}

TEST(CounterRng, StreamsAndSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    for (std::uint64_t stream = 0; stream < 4; ++stream) seen.insert(CounterRng(seed, stream).next_u64());
  EXPECT_EQ(seen.size(), 16u);
}

TEST(CounterRng, UniformMoments) {
  CounterRng rng(7, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum2 / n, 1.0 / 3.0, 0.003);
  for (int i = 0; i < 1000; ++i) EXPECT_GT(rng.uniform_open(), 0.0);
}
