#pragma once

// Test-only reference implementations. Each one follows the definition
// directly and shares no code with the library path it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "bellrand/ingest.hpp"

namespace bellrand::testing {

inline std::vector<std::uint8_t> bits_of(std::string_view s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(c == '1' ? 1 : 0);
  return out;
}

inline std::vector<std::uint8_t> prng_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    out[i] = (word >> (i % 64)) & 1;
  }
  return out;
}

/// LZ76 phrase count straight from the definition: a phrase starting at p
/// grows while s[p, p+len) also starts at some j < p.
inline std::size_t brute_force_phrase_count(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  std::size_t count = 0, p = 0;
  while (p < n) {
    std::size_t len = 1;
    while (true) {
      bool found = false;
      for (std::size_t j = 0; j < p && !found; ++j) {
        found = std::equal(s.begin() + j, s.begin() + j + len, s.begin() + p);
      }
      if (!found) break;
      if (p + len == n) return count + 1;
      ++len;
    }
    ++count;
    p += len;
  }
  return count;
}

/// Shortest LFSR by exhaustive search over all connection polynomials of
/// each length.
inline std::size_t brute_force_linear_span(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  for (std::size_t len = 0; len <= n; ++len) {
    const std::uint64_t polys = std::uint64_t{1} << len;
    for (std::uint64_t c = 0; c < polys; ++c) {
      bool ok = true;
      for (std::size_t j = len; j < n && ok; ++j) {
        unsigned acc = 0;
        for (std::size_t i = 1; i <= len; ++i) acc ^= ((c >> (i - 1)) & 1) & s[j - i];
        ok = acc == s[j];
      }
      if (ok) return len;
    }
  }
  return n;
}

/// GF(2) rank as log2 of the size of the row space, by enumerating all row
/// combinations.
inline std::size_t brute_force_rank(const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> span;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows.size()); ++mask) {
    std::uint64_t v = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if ((mask >> r) & 1) v ^= rows[r];
    }
    span.push_back(v);
  }
  std::sort(span.begin(), span.end());
  span.erase(std::unique(span.begin(), span.end()), span.end());
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

/// The matching rule evaluated over sets: take the earliest remaining event
/// (Alice on ties), its nearest remaining partner by full scan (earlier on
/// ties), and emit when within the window and the partner's nearest remaining
/// event of the first station is the first event itself.
inline std::vector<ingest::CoincidenceRecord> brute_force_matching(const std::vector<ingest::DetectionEvent>& alice,
                                                                   const std::vector<ingest::DetectionEvent>& bob,
                                                                   ingest::Tick window) {
  using ingest::DetectionEvent;
  std::vector<bool> a_live(alice.size(), true), b_live(bob.size(), true);
  auto dist = [](std::uint64_t x, std::uint64_t y) { return x > y ? x - y : y - x; };
  auto nearest = [&](const std::vector<DetectionEvent>& evs, const std::vector<bool>& live, std::uint64_t t) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < evs.size(); ++k) {
      if (!live[k]) continue;
      if (!best || dist(evs[k].timestamp, t) < dist(evs[*best].timestamp, t)) best = k;
    }
    return best;
  };
  auto earliest = [](const std::vector<DetectionEvent>& evs, const std::vector<bool>& live) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < evs.size(); ++k) {
      if (live[k] && (!best || evs[k].timestamp < evs[*best].timestamp)) best = k;
    }
    return best;
  };
  std::vector<ingest::CoincidenceRecord> out;
  while (true) {
    auto ea = earliest(alice, a_live);
    auto eb = earliest(bob, b_live);
    if (!ea || !eb) break;
    const bool from_alice = alice[*ea].timestamp <= bob[*eb].timestamp;
    auto& own = from_alice ? alice : bob;
    auto& other = from_alice ? bob : alice;
    auto& own_live = from_alice ? a_live : b_live;
    auto& other_live = from_alice ? b_live : a_live;
    const std::size_t e = from_alice ? *ea : *eb;
    const std::size_t p = *nearest(other, other_live, own[e].timestamp);
    if (dist(own[e].timestamp, other[p].timestamp) > window || *nearest(own, own_live, other[p].timestamp) != e) {
      own_live[e] = false;
      continue;
    }
    auto rec = from_alice ? ingest::make_coincidence(own[e], other[p]) : ingest::make_coincidence(other[p], own[e]);
    if (out.empty() || rec.coincidence_time > out.back().coincidence_time) out.push_back(rec);
    own_live[e] = false;
    other_live[p] = false;
  }
  return out;
}

/// Kolmogorov-Smirnov statistic of samples against U(0, 1) and its asymptotic
/// p-value (Stephens' small-sample correction).
struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
};

inline KsResult ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - xs[i], xs[i] - lo});
  }
  const double sn = std::sqrt(n);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return {d, 1.0};
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-16) break;
  }
  return {d, std::clamp(q, 0.0, 1.0)};
}

}  // namespace bellrand::testing
