// Serial and approximate entropy tests. Both count overlapping m-bit patterns
// with the sequence wrapped around by m-1 bits.

#include <algorithm>
#include <cmath>
#include <vector>

#include "bellrand/nist/special_functions.hpp"
#include "tests.hpp"

namespace bellrand::nist::detail {

namespace {

__extension__ using u128 = unsigned __int128;

std::vector<std::uint64_t> wrapped_pattern_counts(Bits bits, std::size_t m) {
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  if (m == 0) {
    counts[0] = bits.size();
    return counts;
  }
  const std::size_t n = bits.size();
  const std::size_t mask = (std::size_t{1} << m) - 1;
  std::size_t v = 0;
  for (std::size_t i = 0; i < m - 1; ++i) v = (v << 1) | (bits[i % n] & 1);
  for (std::size_t i = 0; i < n; ++i) {
    v = ((v << 1) | (bits[(i + m - 1) % n] & 1)) & mask;
    ++counts[v];
  }
  return counts;
}

// 2^m * sum(nu^2), exact.
u128 weighted_square_sum(Bits bits, std::size_t m) {
  u128 s = 0;
  for (auto c : wrapped_pattern_counts(bits, m)) s += static_cast<u128>(c) * c;
  return s << m;
}

double phi(Bits bits, std::size_t m) {
  if (m == 0) return 0.0;
  auto counts = wrapped_pattern_counts(bits, m);
  // Fixed summation order keeps the value identical under bit complement.
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(bits.size());
  double sum = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    sum += p * std::log(p);
  }
  return sum;
}

}  // namespace

TestResult serial(Bits bits, std::size_t m) {
  TestResult r;
  r.params["m"] = std::to_string(m);
  const std::size_t n = bits.size();
  if (n < m || n < 1) return not_applicable(std::move(r), "n < m");
  // psi2(k) = (2^k sum nu_k^2) / n - n; work with the numerators.
  auto num = [&](std::size_t k) -> long double {
    return k == 0 ? static_cast<long double>(n) * n : static_cast<long double>(weighted_square_sum(bits, k));
  };
  const long double a = num(m);
  const long double b = num(m - 1);
  const long double c = m >= 2 ? num(m - 2) : static_cast<long double>(n) * n;
  const long double nd = static_cast<long double>(n);
  const double del1 = std::max(0.0, static_cast<double>((a - b) / nd));
  const double del2 = std::max(0.0, static_cast<double>((a - 2 * b + c) / nd));
  r.params["del1"] = fmt(del1);
  r.params["del2"] = fmt(del2);
  r.p_values.push_back(igamc(std::pow(2.0, static_cast<double>(m) - 2.0), del1 / 2.0));
  r.p_values.push_back(igamc(std::pow(2.0, static_cast<double>(m) - 3.0), del2 / 2.0));
  return r;
}

TestResult approximate_entropy(Bits bits, std::size_t m) {
  TestResult r;
  r.params["m"] = std::to_string(m);
  const std::size_t n = bits.size();
  if (n < m + 1) return not_applicable(std::move(r), "n < m + 1");
  const double apen = phi(bits, m) - phi(bits, m + 1);
  const double chi2 = std::max(0.0, 2.0 * static_cast<double>(n) * (std::log(2.0) - apen));
  r.params["ApEn"] = fmt(apen);
  r.params["chi2"] = fmt(chi2);
  r.p_values.push_back(igamc(std::pow(2.0, static_cast<double>(m) - 1.0), chi2 / 2.0));
  return r;
}

}  // namespace bellrand::nist::detail
