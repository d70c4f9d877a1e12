#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bellrand/nist/dft.hpp"
#include "bellrand/nist/linalg.hpp"
#include "support/oracles.hpp"

using namespace bellrand;
using namespace bellrand::nist;
using bellrand::testing::bits_of;

TEST(Gf2Rank, MatchesRowSpaceEnumeration) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::uint64_t> rows(6);
    const unsigned density = rng() % 4;
    for (auto& r : rows) {
      r = rng() & 0x3f;
      if (density == 0) r &= rng();  // sparser matrices hit low ranks
    }
    ASSERT_EQ(gf2_rank(rows, 6), bellrand::testing::brute_force_rank(rows)) << trial;
  }
}

TEST(Gf2Rank, Examples) {
  EXPECT_EQ(gf2_rank({0b001, 0b010, 0b100}, 3), 3u);
  EXPECT_EQ(gf2_rank({0b011, 0b110, 0b101}, 3), 2u);
  EXPECT_EQ(gf2_rank({0, 0, 0}, 3), 0u);
  std::vector<std::uint64_t> identity(64);
  for (std::size_t i = 0; i < 64; ++i) identity[i] = std::uint64_t{1} << i;
  EXPECT_EQ(gf2_rank(identity, 64), 64u);
}

TEST(Gf2Matrix, RowMajorFill) {
  // Rows "010", "110", "010" (first bit = column 0).
  const auto m = gf2_matrix_from_bits(bits_of("010110010"), 3, 3);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], 0b010u);
  EXPECT_EQ(m[1], 0b011u);
  EXPECT_EQ(m[2], 0b010u);
  EXPECT_EQ(gf2_rank(m, 3), 2u);
}

TEST(Gf2RankProbability, SumsToOneAndMatchesKnownTail) {
  double total = 0.0;
  for (std::size_t r = 0; r <= 32; ++r) total += gf2_rank_probability(r, 32, 32);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(gf2_rank_probability(32, 32, 32), 0.28878809515384113, 1e-12);
  EXPECT_NEAR(gf2_rank_probability(31, 32, 32), 0.5775761901732048, 1e-12);
  // Small case by direct enumeration of all 2x2 matrices: 6 of 16 are invertible.
  EXPECT_NEAR(gf2_rank_probability(2, 2, 2), 6.0 / 16.0, 1e-15);
  EXPECT_NEAR(gf2_rank_probability(0, 2, 2), 1.0 / 16.0, 1e-15);
}

TEST(LinearComplexity, Examples) {
  EXPECT_EQ(linear_complexity(bits_of("1101011110001")), 4u);
  EXPECT_EQ(linear_complexity(bits_of("0000000")), 0u);
  EXPECT_EQ(linear_complexity(bits_of("0000001")), 7u);
  EXPECT_EQ(linear_complexity(bits_of("1111111")), 1u);
}

TEST(LinearComplexity, MatchesExhaustiveSearch) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::uint8_t> s(1 + rng() % 14);
    for (auto& b : s) b = rng() & 1;
    ASSERT_EQ(linear_complexity(s), bellrand::testing::brute_force_linear_span(s)) << trial;
  }
}

TEST(Dft, MatchesNaiveTransform) {
  const auto bits = bellrand::testing::prng_bits(101, 3);
  const auto got = half_spectrum_moduli(bits);
  const std::size_t n = bits.size();
  ASSERT_EQ(got.size(), n / 2);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = bits[j] ? 1.0 : -1.0;
      re += x * std::cos(two_pi * k * j / n);
      im -= x * std::sin(two_pi * k * j / n);
    }
    EXPECT_NEAR(got[k], std::hypot(re, im), 1e-9) << k;
  }
}
