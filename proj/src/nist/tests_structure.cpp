// Binary matrix rank, spectral (DFT), Maurer's universal, linear complexity.

#include <array>
#include <cmath>
#include <vector>

#include "bellrand/nist/dft.hpp"
#include "bellrand/nist/linalg.hpp"
#include "bellrand/nist/special_functions.hpp"
#include "tests.hpp"

namespace bellrand::nist::detail {

namespace {
constexpr std::size_t kRankMinMatrices = 38;
}

TestResult rank(Bits bits) {
  TestResult r;
  // 32x32 by default; 16x16 when fewer than 38 full-size matrices fit.
  std::size_t dim = 32;
  if (bits.size() < kRankMinMatrices * dim * dim) dim = 16;
  r.params["M"] = std::to_string(dim);
  r.params["Q"] = std::to_string(dim);
  const std::size_t count = bits.size() / (dim * dim);
  r.params["N"] = std::to_string(count);
  if (count < kRankMinMatrices) {
    return not_applicable(std::move(r), "fewer than 38 matrices of " + std::to_string(dim) + "x" + std::to_string(dim));
  }

  std::size_t full = 0, minus_one = 0;
  for (std::size_t k = 0; k < count; ++k) {
    auto m = gf2_matrix_from_bits(bits.subspan(k * dim * dim, dim * dim), dim, dim);
    const auto rk = gf2_rank(std::move(m), dim);
    if (rk == dim) {
      ++full;
    } else if (rk == dim - 1) {
      ++minus_one;
    }
  }
  const double p_full = gf2_rank_probability(dim, dim, dim);
  const double p_minus = gf2_rank_probability(dim - 1, dim, dim);
  const double p_rest = 1.0 - p_full - p_minus;
  const double nd = static_cast<double>(count);
  const double rest = nd - static_cast<double>(full) - static_cast<double>(minus_one);
  auto term = [nd](double observed, double p) { return (observed - p * nd) * (observed - p * nd) / (p * nd); };
  const double chi2 = term(static_cast<double>(full), p_full) + term(static_cast<double>(minus_one), p_minus) +
                      term(rest, p_rest);
  r.params["F_M"] = std::to_string(full);
  r.params["F_M-1"] = std::to_string(minus_one);
  r.params["chi2"] = fmt(chi2);
  r.p_values.push_back(std::exp(-chi2 / 2.0));
  return r;
}

TestResult spectral(Bits bits) {
  TestResult r;
  const std::size_t n = bits.size();
  if (n < 2) return not_applicable(std::move(r), "n < 2");
  const auto moduli = half_spectrum_moduli(bits);
  const double dn = static_cast<double>(n);
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * dn);
  const double n0 = 0.95 * dn / 2.0;
  std::size_t n1 = 0;
  for (double m : moduli) n1 += m < threshold;
  const double d = (static_cast<double>(n1) - n0) / std::sqrt(dn * 0.95 * 0.05 / 4.0);
  r.params["T"] = fmt(threshold);
  r.params["N0"] = fmt(n0);
  r.params["N1"] = std::to_string(n1);
  r.params["d"] = fmt(d);
  r.p_values.push_back(erfc(std::abs(d) / std::sqrt(2.0)));
  return r;
}

namespace {

struct MaurerRow {
  std::size_t min_n;
  std::size_t l;
};

// Smallest n for each block length L, with Q = 10 * 2^L and K = 1000 * 2^L.
constexpr std::array<MaurerRow, 11> kMaurerRows{{{387840, 6},
                                                 {904960, 7},
                                                 {2068480, 8},
                                                 {4654080, 9},
                                                 {10342400, 10},
                                                 {22753280, 11},
                                                 {49643520, 12},
                                                 {107560960, 13},
                                                 {231669760, 14},
                                                 {496435200, 15},
                                                 {1059061760, 16}}};

constexpr std::array<double, 17> kExpectedValue{0,         0.7326495, 1.5374383, 2.4016068, 3.3112247, 4.2534266,
                                                5.2177052, 6.1962507, 7.1836656, 8.1764248, 9.1723243, 10.170032,
                                                11.168765, 12.168070, 13.167693, 14.167488, 15.167379};
constexpr std::array<double, 17> kVariance{0,     0.690, 1.338, 1.901, 2.358, 2.705, 2.954, 3.125, 3.238,
                                           3.311, 3.356, 3.384, 3.401, 3.410, 3.416, 3.419, 3.421};

}  // namespace

TestResult universal(Bits bits) {
  TestResult r;
  const std::size_t n = bits.size();
  if (n <= kMaurerMinLength) {
    return not_applicable(std::move(r), "n <= " + std::to_string(kMaurerMinLength));
  }
  std::size_t l = 6;
  for (const auto& row : kMaurerRows) {
    if (n >= row.min_n) l = row.l;
  }
  const std::size_t q = 10 * (std::size_t{1} << l);
  const std::size_t blocks = n / l;
  const std::size_t k = blocks - q;
  r.params["L"] = std::to_string(l);
  r.params["Q"] = std::to_string(q);
  r.params["K"] = std::to_string(k);

  auto block_value = [&](std::size_t i) {
    std::size_t v = 0;
    for (std::size_t j = 0; j < l; ++j) v = (v << 1) | (bits[i * l + j] & 1);
    return v;
  };
  std::vector<std::size_t> last(std::size_t{1} << l, 0);
  for (std::size_t i = 1; i <= q; ++i) last[block_value(i - 1)] = i;
  double sum = 0.0;
  for (std::size_t i = q + 1; i <= q + k; ++i) {
    auto& t = last[block_value(i - 1)];
    sum += std::log2(static_cast<double>(i - t));
    t = i;
  }
  const double fn = sum / static_cast<double>(k);
  const double dl = static_cast<double>(l);
  const double dk = static_cast<double>(k);
  const double c = 0.7 - 0.8 / dl + (4.0 + 32.0 / dl) * std::pow(dk, -3.0 / dl) / 15.0;
  const double sigma = c * std::sqrt(kVariance[l] / dk);
  r.params["f_n"] = fmt(fn);
  r.params["expected"] = fmt(kExpectedValue[l]);
  r.params["sigma"] = fmt(sigma);
  r.p_values.push_back(erfc(std::abs(fn - kExpectedValue[l]) / (std::sqrt(2.0) * sigma)));
  return r;
}

TestResult linear_complexity_test(Bits bits, std::size_t m) {
  TestResult r;
  constexpr std::array<double, 7> pi{0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};
  const std::size_t blocks = bits.size() / m;
  r.params["M"] = std::to_string(m);
  r.params["N"] = std::to_string(blocks);
  if (blocks < 1) return not_applicable(std::move(r), "n < M");

  const double dm = static_cast<double>(m);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^M
  const double mu = dm / 2.0 + (9.0 - sign) / 36.0 - (dm / 3.0 + 2.0 / 9.0) / std::pow(2.0, dm);
  std::array<std::size_t, 7> nu{};
  for (std::size_t i = 0; i < blocks; ++i) {
    const auto l = linear_complexity(bits.subspan(i * m, m));
    const double t = sign * (static_cast<double>(l) - mu) + 2.0 / 9.0;
    std::size_t cls;
    if (t <= -2.5) {
      cls = 0;
    } else if (t <= -1.5) {
      cls = 1;
    } else if (t <= -0.5) {
      cls = 2;
    } else if (t <= 0.5) {
      cls = 3;
    } else if (t <= 1.5) {
      cls = 4;
    } else if (t <= 2.5) {
      cls = 5;
    } else {
      cls = 6;
    }
    ++nu[cls];
  }
  double chi2 = 0.0;
  const double nb = static_cast<double>(blocks);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double e = nb * pi[i];
    chi2 += (static_cast<double>(nu[i]) - e) * (static_cast<double>(nu[i]) - e) / e;
  }
  r.params["chi2"] = fmt(chi2);
  r.p_values.push_back(igamc(3.0, chi2 / 2.0));
  return r;
}

}  // namespace bellrand::nist::detail
