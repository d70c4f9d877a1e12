#include <gtest/gtest.h>

#include <cmath>

#include "bellrand/complexity.hpp"
#include "bellrand/error.hpp"
#include "support/oracles.hpp"

using namespace bellrand;
using bellrand::testing::bits_of;
using bellrand::testing::brute_force_phrase_count;
using bellrand::testing::prng_bits;

namespace {

std::vector<std::uint8_t> complement(std::vector<std::uint8_t> v) {
  for (auto& b : v) b ^= 1;
  return v;
}

}  // namespace

TEST(Lz76, ClassicParsing) {
  // 0 . 001 . 10 . 100 . 1000 . 101
  EXPECT_EQ(complexity::lz76_phrase_count(bits_of("0001101001000101")), 6u);
  EXPECT_EQ(complexity::lz76_phrase_count(bits_of("0000000000")), 2u);
  EXPECT_EQ(complexity::lz76_phrase_count(bits_of("0101010101")), 3u);
  EXPECT_EQ(complexity::lz76_phrase_count(bits_of("1")), 1u);
  EXPECT_EQ(complexity::lz76_phrase_count(bits_of("01")), 2u);
}

TEST(Lz76, EmptyInputRejected) {
  try {
    complexity::lz76_phrase_count({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySeries);
  }
}

TEST(Lz76, AllStringsUpToTenMatchDefinition) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      std::vector<std::uint8_t> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = (v >> i) & 1;
      const auto expected = brute_force_phrase_count(s);
      ASSERT_EQ(complexity::lz76_phrase_count(s), expected) << "n=" << n << " v=" << v;
      ASSERT_EQ(complexity::lz76_phrase_count_reference(s), expected);
    }
  }
}

TEST(Lz76, AutomatonAgreesWithScanOnLongRandomStrings) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 3000;
    std::vector<std::uint8_t> s(n);
    const unsigned bias = rng() % 8;  // mix in low-entropy strings
    for (auto& b : s) b = (rng() % 8) < bias ? 1 : 0;
    ASSERT_EQ(complexity::lz76_phrase_count(s), complexity::lz76_phrase_count_reference(s)) << trial;
  }
}

TEST(Lz76, ComplementInvariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = prng_bits(500 + seed * 37, seed);
    EXPECT_EQ(complexity::lz76_phrase_count(s), complexity::lz76_phrase_count(complement(s)));
  }
}

TEST(Lz76, PrefixMonotone) {
  const auto s = prng_bits(2000, 4);
  std::size_t last = 0;
  for (std::size_t len = 1; len <= s.size(); ++len) {
    const auto c = complexity::lz76_phrase_count(std::span(s).first(len));
    ASSERT_GE(c, last);
    ASSERT_LE(c, last + 1);
    last = c;
  }
}

TEST(Lz76, PeriodicStringsStayBounded) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + rng() % 20;
    std::vector<std::uint8_t> period(p);
    for (auto& b : period) b = rng() & 1;
    std::vector<std::uint8_t> s;
    for (std::size_t i = 0; i < 4000; ++i) s.push_back(period[i % p]);
    const auto bound = complexity::lz76_phrase_count(std::span(s).first(4 * p));
    EXPECT_LE(complexity::lz76_phrase_count(s), bound);
  }
}

TEST(NormalizedComplexity, Examples) {
  const auto zeros = complexity::normalized_complexity(std::vector<std::uint8_t>(10000, 0));
  EXPECT_EQ(zeros.phrase_count, 2u);
  EXPECT_NEAR(zeros.normalized, 2 * std::log2(10000.0) / 10000.0, 1e-15);
  EXPECT_LE(zeros.normalized, 0.01);

  const auto rnd = complexity::normalized_complexity(prng_bits(10000, 1));
  EXPECT_GT(rnd.normalized, 0.95);
  EXPECT_LT(rnd.normalized, 1.15);
  EXPECT_NEAR(rnd.limit_used, 10000.0 / std::log2(10000.0), 1e-9);
}

TEST(NormalizedComplexity, TooShort) {
  try {
    complexity::normalized_complexity(bits_of("1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooShort);
  }
}

TEST(NormalizedComplexity, LargeInputLinearPath) {
  const auto s = prng_bits(2'000'000, 77);
  const auto r = complexity::normalized_complexity(s);
  EXPECT_GT(r.normalized, 0.95);
  EXPECT_LT(r.normalized, 1.1);
}
