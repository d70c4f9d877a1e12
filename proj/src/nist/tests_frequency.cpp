// Frequency, block frequency, runs, longest run of ones, cumulative sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "bellrand/nist/special_functions.hpp"
#include "tests.hpp"

namespace bellrand::nist::detail {

namespace {
constexpr std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }
}  // namespace

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

TestResult not_applicable(TestResult r, std::string reason) {
  r.status = Status::NotApplicable;
  r.p_values.clear();
  r.params["not_applicable"] = std::move(reason);
  return r;
}

TestResult frequency(Bits bits) {
  TestResult r;
  const auto n = static_cast<std::int64_t>(bits.size());
  if (n < 1) return not_applicable(std::move(r), "n < 1");
  std::int64_t s = 0;
  for (auto b : bits) s += (b & 1) ? 1 : -1;
  const double s_obs = static_cast<double>(iabs(s)) / std::sqrt(static_cast<double>(n));
  r.p_values.push_back(erfc(s_obs / std::sqrt(2.0)));
  r.params["S_n"] = std::to_string(s);
  return r;
}

TestResult block_frequency(Bits bits, std::size_t m) {
  TestResult r;
  r.params["M"] = std::to_string(m);
  const std::size_t blocks = bits.size() / m;
  if (blocks < 1) return not_applicable(std::move(r), "n < M");
  r.params["N"] = std::to_string(blocks);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < m; ++j) ones += bits[i * m + j] & 1;
    const double pi = static_cast<double>(ones) / static_cast<double>(m) - 0.5;
    chi2 += pi * pi;
  }
  chi2 *= 4.0 * static_cast<double>(m);
  r.params["chi2"] = fmt(chi2);
  r.p_values.push_back(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
  return r;
}

TestResult runs(Bits bits) {
  TestResult r;
  const std::size_t n = bits.size();
  if (n < 2) return not_applicable(std::move(r), "n < 2");
  std::size_t ones = 0;
  for (auto b : bits) ones += b & 1;
  const double dn = static_cast<double>(n);
  // ones * (n - ones) is symmetric under complement, so is everything below.
  const double pq = static_cast<double>(ones) * static_cast<double>(n - ones) / (dn * dn);
  const double pi = static_cast<double>(ones) / dn;
  const double tau = 2.0 / std::sqrt(dn);
  if (std::abs(pi - 0.5) >= tau) {
    r.params["prerequisite"] = "frequency failed";
    r.p_values.push_back(0.0);
    return r;
  }
  std::size_t v = 1;
  for (std::size_t k = 1; k < n; ++k) v += (bits[k] & 1) != (bits[k - 1] & 1);
  r.params["V_obs"] = std::to_string(v);
  const double num = std::abs(static_cast<double>(v) - 2.0 * dn * pq);
  const double den = 2.0 * std::sqrt(2.0 * dn) * pq;
  r.p_values.push_back(erfc(num / den));
  return r;
}

TestResult longest_run(Bits bits) {
  TestResult r;
  const std::size_t n = bits.size();
  struct Table {
    std::size_t m;
    std::size_t lo;  // runs <= lo share the first class
    std::vector<double> pi;
  };
  static const Table small{8, 1, {0.2148, 0.3672, 0.2305, 0.1875}};
  static const Table medium{128, 4, {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124}};
  static const Table large{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
  if (n < 128) return not_applicable(std::move(r), "n < 128");
  const Table& t = n < 6272 ? small : (n < 750000 ? medium : large);
  const std::size_t k = t.pi.size() - 1;
  const std::size_t blocks = n / t.m;
  r.params["M"] = std::to_string(t.m);
  r.params["N"] = std::to_string(blocks);
  r.params["K"] = std::to_string(k);

  std::vector<std::size_t> nu(k + 1, 0);
  for (std::size_t i = 0; i < blocks; ++i) {
    std::size_t run = 0, longest = 0;
    for (std::size_t j = 0; j < t.m; ++j) {
      if (bits[i * t.m + j] & 1) {
        longest = std::max(longest, ++run);
      } else {
        run = 0;
      }
    }
    const std::size_t cls = longest <= t.lo ? 0 : std::min(longest - t.lo, k);
    ++nu[cls];
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double expected = static_cast<double>(blocks) * t.pi[i];
    chi2 += (static_cast<double>(nu[i]) - expected) * (static_cast<double>(nu[i]) - expected) / expected;
  }
  r.params["chi2"] = fmt(chi2);
  r.p_values.push_back(igamc(static_cast<double>(k) / 2.0, chi2 / 2.0));
  return r;
}

namespace {

double cusum_p_value(std::int64_t n, std::int64_t z) {
  if (z == 0) return 1.0;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  double sum1 = 0.0;
  for (std::int64_t k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
    sum1 += normal_cdf(static_cast<double>((4 * k + 1) * z) / sqrt_n);
    sum1 -= normal_cdf(static_cast<double>((4 * k - 1) * z) / sqrt_n);
  }
  double sum2 = 0.0;
  for (std::int64_t k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
    sum2 += normal_cdf(static_cast<double>((4 * k + 3) * z) / sqrt_n);
    sum2 -= normal_cdf(static_cast<double>((4 * k + 1) * z) / sqrt_n);
  }
  return std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
}

}  // namespace

TestResult cumulative_sums(Bits bits) {
  TestResult r;
  const auto n = static_cast<std::int64_t>(bits.size());
  if (n < 1) return not_applicable(std::move(r), "n < 1");
  std::int64_t s = 0, sup = 0, inf = 0, z_fwd = 0;
  for (auto b : bits) {
    s += (b & 1) ? 1 : -1;
    sup = std::max(sup, s);
    inf = std::min(inf, s);
    z_fwd = std::max(z_fwd, iabs(s));
  }
  // Backward partial sums are S_n - S_k for k = n-1 .. 0.
  const std::int64_t z_bwd = std::max(iabs(s - inf), iabs(s - sup));
  r.params["z_forward"] = std::to_string(z_fwd);
  r.params["z_backward"] = std::to_string(z_bwd);
  r.p_values.push_back(cusum_p_value(n, z_fwd));
  r.p_values.push_back(cusum_p_value(n, z_bwd));
  return r;
}

}  // namespace bellrand::nist::detail
