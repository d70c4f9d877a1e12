// Random excursions and random excursions variant on the +/-1 random walk.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "bellrand/nist/special_functions.hpp"
#include "tests.hpp"

namespace bellrand::nist::detail {

namespace {

constexpr std::size_t kMinCycles = 500;

struct Walk {
  std::vector<std::int64_t> sums;  // S_1 .. S_n
  std::size_t cycles = 0;          // J
};

Walk make_walk(Bits bits) {
  Walk w;
  w.sums.reserve(bits.size());
  std::int64_t s = 0;
  for (auto b : bits) {
    s += (b & 1) ? 1 : -1;
    w.sums.push_back(s);
    w.cycles += s == 0;
  }
  // The walk is closed with a trailing zero.
  if (!w.sums.empty() && w.sums.back() != 0) ++w.cycles;
  return w;
}

std::size_t cycle_limit(std::size_t n) {
  return std::max<std::size_t>(kMinCycles, static_cast<std::size_t>(std::ceil(0.005 * std::sqrt(static_cast<double>(n)))));
}

}  // namespace

TestResult random_excursions(Bits bits) {
  TestResult r;
  const auto walk = make_walk(bits);
  const std::size_t limit = cycle_limit(bits.size());
  r.params["J"] = std::to_string(walk.cycles);
  if (walk.cycles < limit) return not_applicable(std::move(r), "J < " + std::to_string(limit));

  constexpr std::array<int, 8> states{-4, -3, -2, -1, 1, 2, 3, 4};
  // nu[state][k]: cycles visiting the state exactly k times (k = 5 means >= 5).
  std::array<std::array<std::size_t, 6>, 8> nu{};
  std::array<std::size_t, 8> visits{};
  auto close_cycle = [&] {
    for (std::size_t s = 0; s < states.size(); ++s) {
      ++nu[s][std::min<std::size_t>(visits[s], 5)];
      visits[s] = 0;
    }
  };
  for (auto s : walk.sums) {
    if (s == 0) {
      close_cycle();
    } else if (s >= -4 && s <= 4) {
      ++visits[static_cast<std::size_t>(s < 0 ? s + 4 : s + 3)];
    }
  }
  if (walk.sums.back() != 0) close_cycle();

  const double j = static_cast<double>(walk.cycles);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double ax = std::abs(static_cast<double>(states[s]));
    const double q = 1.0 - 1.0 / (2.0 * ax);
    std::array<double, 6> pi{};
    pi[0] = q;
    for (int k = 1; k <= 4; ++k) pi[k] = 1.0 / (4.0 * ax * ax) * std::pow(q, k - 1);
    pi[5] = 1.0 / (2.0 * ax) * std::pow(q, 4);
    double chi2 = 0.0;
    for (std::size_t k = 0; k < 6; ++k) {
      const double e = j * pi[k];
      chi2 += (static_cast<double>(nu[s][k]) - e) * (static_cast<double>(nu[s][k]) - e) / e;
    }
    r.p_values.push_back(igamc(2.5, chi2 / 2.0));
  }
  r.params["states"] = "-4..-1,1..4";
  return r;
}

TestResult random_excursions_variant(Bits bits) {
  TestResult r;
  const auto walk = make_walk(bits);
  const std::size_t limit = cycle_limit(bits.size());
  r.params["J"] = std::to_string(walk.cycles);
  if (walk.cycles < limit) return not_applicable(std::move(r), "J < " + std::to_string(limit));

  std::array<std::size_t, 19> xi{};  // index state + 9
  for (auto s : walk.sums) {
    if (s >= -9 && s <= 9) ++xi[static_cast<std::size_t>(s + 9)];
  }
  const double j = static_cast<double>(walk.cycles);
  for (int x = -9; x <= 9; ++x) {
    if (x == 0) continue;
    const double count = static_cast<double>(xi[static_cast<std::size_t>(x + 9)]);
    const double ax = std::abs(static_cast<double>(x));
    r.p_values.push_back(erfc(std::abs(count - j) / std::sqrt(2.0 * j * (4.0 * ax - 2.0))));
  }
  r.params["states"] = "-9..-1,1..9";
  return r;
}

}  // namespace bellrand::nist::detail
