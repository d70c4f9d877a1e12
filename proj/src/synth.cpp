#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bellrand/error.hpp"
#include "bellrand/ingest.hpp"

namespace bellrand::ingest {

namespace {

constexpr double kProbTolerance = 1e-12;

void check_distribution(std::span<const double> p, std::string_view what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidDistribution, std::string(what) + " has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    throw Error(ErrorKind::InvalidDistribution, std::string(what) + " sums to " + std::to_string(sum));
  }
}

// 53-bit uniform in [0, 1); fixed across standard library implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t sample(std::span<const double> p, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    acc += p[k];
    if (u < acc) return k;
  }
  // Trailing zero-probability cells are never chosen.
  std::size_t last = p.size() - 1;
  while (last > 0 && p[last] == 0.0) --last;
  return last;
}

// Uniform integer in [-r, r].
std::int64_t symmetric_jitter(Tick r, std::mt19937_64& rng) {
  if (r == 0) return 0;
  const std::uint64_t span = 2 * r + 1;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::int64_t>(x % span) - static_cast<std::int64_t>(r);
}

}  // namespace

JointTable entangled_table(std::array<double, 2> alice_angles, std::array<double, 2> bob_angles, double sign) {
  JointTable t{};
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      const double e = sign * std::cos(2.0 * (alice_angles[sa] - bob_angles[sb]));
      auto& row = t[sa * 2 + sb];
      row[0] = (1.0 + e) / 4.0;  // (0,0)
      row[1] = (1.0 - e) / 4.0;  // (0,1)
      row[2] = (1.0 - e) / 4.0;  // (1,0)
      row[3] = 1.0 - row[0] - row[1] - row[2];
    }
  }
  return t;
}

JointTable chsh_optimal_table() {
  constexpr double deg = std::numbers::pi / 180.0;
  return entangled_table({0.0, 45.0 * deg}, {22.5 * deg, -22.5 * deg}, 1.0);
}

JointTable deterministic_table() {
  JointTable t{};
  for (auto& row : t) row = {1.0, 0.0, 0.0, 0.0};
  return t;
}

RunDataset synth_generate(const SynthConfig& config) {
  for (std::size_t k = 0; k < 4; ++k) {
    check_distribution(config.prob[k], "outcome table row " + std::to_string(k));
  }
  check_distribution(config.setting_dist, "setting distribution");
  const auto& tm = config.timing;
  if (tm.mean_gap == 0 || tm.gap_jitter >= tm.mean_gap || tm.mean_gap - tm.gap_jitter <= 2 * tm.pair_jitter) {
    throw Error(ErrorKind::InvalidParams,
                "timing model must satisfy mean_gap - gap_jitter > 2 * pair_jitter and gap_jitter < mean_gap");
  }

  RunDataset run;
  run.name = config.name;
  run.tick_unit = TickUnit::picoseconds();
  run.coincidences.reserve(config.n);

  std::mt19937_64 rng(config.seed);
  // Start far enough from zero that a negative pair offset stays non-negative.
  Tick t = tm.mean_gap + tm.pair_jitter;
  for (std::size_t k = 0; k < config.n; ++k) {
    const auto settings = sample(config.setting_dist, rng);
    const auto outcome = sample(config.prob[settings], rng);
    const auto offset = symmetric_jitter(tm.pair_jitter, rng);
    DetectionEvent a{Station::Alice, t, static_cast<std::uint8_t>(settings >> 1),
                     static_cast<std::uint8_t>(outcome >> 1)};
    DetectionEvent b{Station::Bob, static_cast<Tick>(static_cast<std::int64_t>(t) + offset),
                     static_cast<std::uint8_t>(settings & 1), static_cast<std::uint8_t>(outcome & 1)};
    run.coincidences.push_back(make_coincidence(a, b));
    t += static_cast<Tick>(static_cast<std::int64_t>(tm.mean_gap) + symmetric_jitter(tm.gap_jitter, rng));
  }
  run.metadata["seed"] = std::to_string(config.seed);
  return run;
}

}  // namespace bellrand::ingest
