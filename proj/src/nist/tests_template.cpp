// Non-overlapping and overlapping template matching.

#include <array>
#include <cmath>
#include <vector>

#include "bellrand/nist/special_functions.hpp"
#include "tests.hpp"

namespace bellrand::nist::detail {

namespace {

// Value of bits[i, i+m) with the first bit as MSB, for every valid i.
std::vector<std::uint32_t> window_values(Bits bits, std::size_t m) {
  if (bits.size() < m) return {};
  std::vector<std::uint32_t> w(bits.size() - m + 1);
  const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    v = ((v << 1) | (bits[i] & 1)) & mask;
    if (i + 1 >= m) w[i + 1 - m] = v;
  }
  return w;
}

constexpr std::size_t kTemplateBlocks = 8;
constexpr std::size_t kOverlappingBlockLength = 1032;
constexpr std::size_t kOverlappingClasses = 5;

double overlapping_pr(std::size_t u, double eta) {
  if (u == 0) return std::exp(-eta);
  double sum = 0.0;
  const double du = static_cast<double>(u);
  for (std::size_t l = 1; l <= u; ++l) {
    const double dl = static_cast<double>(l);
    sum += std::exp(-eta - du * std::log(2.0) + dl * std::log(eta) - std::lgamma(dl + 1.0) + std::lgamma(du) -
                    std::lgamma(dl) - std::lgamma(du - dl + 1.0));
  }
  return sum;
}

}  // namespace

std::vector<std::uint32_t> aperiodic_templates(std::size_t m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << m); ++b) {
    bool aperiodic = true;
    for (std::size_t shift = 1; shift < m && aperiodic; ++shift) {
      // Overlap of the template with itself shifted right by `shift`.
      const std::uint32_t prefix = b >> shift;
      const std::uint32_t suffix = b & ((std::uint32_t{1} << (m - shift)) - 1);
      if (prefix == suffix) aperiodic = false;
    }
    if (aperiodic) out.push_back(b);
  }
  return out;
}

TestResult non_overlapping_template(Bits bits, std::size_t m) {
  TestResult r;
  const std::size_t block_len = bits.size() / kTemplateBlocks;
  r.params["m"] = std::to_string(m);
  r.params["N"] = std::to_string(kTemplateBlocks);
  r.params["M"] = std::to_string(block_len);
  if (block_len < m) return not_applicable(std::move(r), "block length < m");

  const auto templates = aperiodic_templates(m);
  r.params["templates"] = std::to_string(templates.size());
  const auto windows = window_values(bits, m);
  const double dm = static_cast<double>(m);
  const double mu = static_cast<double>(block_len - m + 1) / std::pow(2.0, dm);
  const double var = static_cast<double>(block_len) * (1.0 / std::pow(2.0, dm) - (2.0 * dm - 1.0) / std::pow(2.0, 2.0 * dm));
  r.params["mu"] = fmt(mu);
  r.params["sigma2"] = fmt(var);

  r.p_values.reserve(templates.size());
  for (auto tpl : templates) {
    double chi2 = 0.0;
    for (std::size_t j = 0; j < kTemplateBlocks; ++j) {
      const std::size_t base = j * block_len;
      std::size_t count = 0;
      std::size_t i = 0;
      while (i + m <= block_len) {
        if (windows[base + i] == tpl) {
          ++count;
          i += m;
        } else {
          ++i;
        }
      }
      chi2 += (static_cast<double>(count) - mu) * (static_cast<double>(count) - mu) / var;
    }
    r.p_values.push_back(igamc(static_cast<double>(kTemplateBlocks) / 2.0, chi2 / 2.0));
  }
  return r;
}

TestResult overlapping_template(Bits bits, std::size_t m) {
  TestResult r;
  const std::size_t block_len = kOverlappingBlockLength;
  const std::size_t blocks = bits.size() / block_len;
  r.params["m"] = std::to_string(m);
  r.params["M"] = std::to_string(block_len);
  r.params["N"] = std::to_string(blocks);
  r.params["K"] = std::to_string(kOverlappingClasses);
  if (blocks < 1) return not_applicable(std::move(r), "n < " + std::to_string(block_len));

  std::array<double, kOverlappingClasses + 1> pi{};
  if (m == 9) {
    pi = {0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865};
  } else {
    const double eta = static_cast<double>(block_len - m + 1) / std::pow(2.0, static_cast<double>(m)) / 2.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < kOverlappingClasses; ++i) {
      pi[i] = overlapping_pr(i, eta);
      sum += pi[i];
    }
    pi[kOverlappingClasses] = 1.0 - sum;
  }

  const std::uint32_t ones = (std::uint32_t{1} << m) - 1;
  const auto windows = window_values(bits, m);
  std::array<std::size_t, kOverlappingClasses + 1> nu{};
  for (std::size_t j = 0; j < blocks; ++j) {
    std::size_t count = 0;
    for (std::size_t i = 0; i + m <= block_len; ++i) count += windows[j * block_len + i] == ones;
    ++nu[std::min(count, kOverlappingClasses)];
  }
  double chi2 = 0.0;
  const double nb = static_cast<double>(blocks);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double e = nb * pi[i];
    chi2 += (static_cast<double>(nu[i]) - e) * (static_cast<double>(nu[i]) - e) / e;
  }
  r.params["chi2"] = fmt(chi2);
  r.p_values.push_back(igamc(static_cast<double>(kOverlappingClasses) / 2.0, chi2 / 2.0));
  return r;
}

}  // namespace bellrand::nist::detail
