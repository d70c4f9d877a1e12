#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bellrand/bell.hpp"
#include "bellrand/error.hpp"

using namespace bellrand;
using namespace bellrand::bell;

namespace {

using Corr = std::array<std::array<double, 2>, 2>;

CountTable uniform_counts(std::uint64_t k) {
  CountTable t;
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (int da = 0; da < 2; ++da)
        for (int db = 0; db < 2; ++db) add_count(t, sa, sb, da, db, k);
  return t;
}

CountTable random_counts(std::mt19937_64& rng) {
  CountTable t;
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb) {
      for (int da = 0; da < 2; ++da)
        for (int db = 0; db < 2; ++db) add_count(t, sa, sb, da, db, rng() % 1000);
      add_count(t, sa, sb, 0, 0, 1);
    }
  return t;
}

}  // namespace

TEST(Correlation, Examples) {
  CountTable t;
  add_count(t, 0, 0, 0, 0, 40);
  add_count(t, 0, 0, 1, 1, 40);
  add_count(t, 0, 0, 0, 1, 10);
  add_count(t, 0, 0, 1, 0, 10);
  EXPECT_DOUBLE_EQ(correlation(t, 0, 0), 0.6);
  EXPECT_EQ(t.total(), 100u);
  EXPECT_DOUBLE_EQ(correlation(uniform_counts(5), 1, 0), 0.0);
}

TEST(Correlation, MissingSettingPair) {
  CountTable t;
  add_count(t, 0, 0, 0, 0);
  try {
    correlation(t, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoDataForSettingPair);
  }
  EXPECT_THROW(chsh_from_counts(t), Error);
}

TEST(Chsh, Examples) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto q = chsh_s({{{r, r}, {r, -r}}});
  EXPECT_NEAR(q.s_value, 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(q.violates_local_bound);

  const auto local = chsh_s({{{1, 1}, {1, -1}}});
  EXPECT_DOUBLE_EQ(local.s_value, 4.0);

  const auto classical = chsh_s({{{1, 1}, {1, 1}}});
  EXPECT_DOUBLE_EQ(classical.s_value, 2.0);
  EXPECT_FALSE(classical.violates_local_bound);

  const auto uniform = chsh_from_counts(uniform_counts(3));
  EXPECT_DOUBLE_EQ(uniform.s_value, 0.0);
}

TEST(Chsh, PatternSelectsMinusTerm) {
  const Corr e{{{0.1, 0.2}, {0.3, 0.4}}};
  EXPECT_NEAR(chsh_s(e, SignPattern::Minus00).s_value, -0.1 + 0.2 + 0.3 + 0.4, 1e-15);
  EXPECT_NEAR(chsh_s(e, SignPattern::Minus01).s_value, 0.1 - 0.2 + 0.3 + 0.4, 1e-15);
  EXPECT_NEAR(chsh_s(e, SignPattern::Minus10).s_value, 0.1 + 0.2 - 0.3 + 0.4, 1e-15);
  EXPECT_NEAR(chsh_s(e, SignPattern::Minus11).s_value, 0.1 + 0.2 + 0.3 - 0.4, 1e-15);
  const auto r = chsh_s(e);
  EXPECT_EQ(r.max_pattern, SignPattern::Minus00);
  EXPECT_NEAR(r.max_s_value, 0.8, 1e-15);
}

TEST(Chsh, SignPatternNames) {
  for (auto p : {SignPattern::Minus00, SignPattern::Minus01, SignPattern::Minus10, SignPattern::Minus11}) {
    EXPECT_EQ(parse_sign_pattern(to_string(p)), p);
  }
  EXPECT_THROW(parse_sign_pattern("22"), Error);
}

TEST(Chsh, RandomTablesRespectAlgebraicBounds) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto t = random_counts(rng);
    const auto r = chsh_from_counts(t);
    for (const auto& row : r.correlations)
      for (double e : row) ASSERT_LE(std::abs(e), 1.0);
    ASSERT_LE(std::abs(r.s_value), 4.0);
    ASSERT_LE(std::abs(r.s_value), r.max_s_value + 1e-15);
  }
}

TEST(Chsh, DeterministicLocalStrategiesStayWithinTwo) {
  // Outcome functions a(sA), b(sB) in {0,1}: 16 strategies.
  for (int strat = 0; strat < 16; ++strat) {
    CountTable t;
    for (int sa = 0; sa < 2; ++sa)
      for (int sb = 0; sb < 2; ++sb) add_count(t, sa, sb, (strat >> sa) & 1, (strat >> (2 + sb)) & 1, 7);
    EXPECT_DOUBLE_EQ(chsh_from_counts(t).max_s_value, 2.0) << strat;
  }
}

TEST(Chsh, DetectorRelabelPreservesMaxS) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = random_counts(rng);
    const int flip_sa = rng() % 2;
    CountTable flipped;
    for (int sa = 0; sa < 2; ++sa)
      for (int sb = 0; sb < 2; ++sb)
        for (int da = 0; da < 2; ++da)
          for (int db = 0; db < 2; ++db)
            add_count(flipped, sa, sb, sa == flip_sa ? 1 - da : da, db, t.counts[sa][sb][da][db]);
    EXPECT_NEAR(chsh_from_counts(t).max_s_value, chsh_from_counts(flipped).max_s_value, 1e-12);
  }
}

TEST(Counts, OrderOfCoincidencesIrrelevant) {
  ingest::SynthConfig cfg;
  cfg.prob = ingest::chsh_optimal_table();
  cfg.n = 2000;
  cfg.seed = 5;
  auto run = ingest::synth_generate(cfg);
  const auto before = tabulate_counts(run);
  std::mt19937 rng(1);
  std::shuffle(run.coincidences.begin(), run.coincidences.end(), rng);
  const auto after = tabulate_counts(run);
  EXPECT_EQ(before.counts, after.counts);
  EXPECT_EQ(before.total(), 2000u);

  std::ostringstream out;
  write_counts(out, before);
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 16);
}

TEST(Chsh, SyntheticOptimalTableApproachesTsirelson) {
  ingest::SynthConfig cfg;
  cfg.prob = ingest::chsh_optimal_table();
  cfg.n = 200000;
  cfg.seed = 8;
  const auto r = chsh_from_counts(tabulate_counts(ingest::synth_generate(cfg)));
  EXPECT_NEAR(r.s_value, 2.0 * std::sqrt(2.0), 0.05);
  EXPECT_NEAR(r.max_s_value, 2.0 * std::sqrt(2.0), 0.05);
}
