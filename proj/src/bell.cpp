#include "bellrand/bell.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "bellrand/error.hpp"

namespace bellrand::bell {

std::uint64_t CountTable::total() const {
  std::uint64_t t = 0;
  for (const auto& row : total_per_setting) t += row[0] + row[1];
  return t;
}

void add_count(CountTable& table, int sa, int sb, int da, int db, std::uint64_t k) {
  table.counts[sa][sb][da][db] += k;
  table.total_per_setting[sa][sb] += k;
}

CountTable tabulate_counts(const ingest::RunDataset& run) {
  CountTable t;
  for (const auto& c : run.coincidences) {
    add_count(t, c.alice.setting & 1, c.bob.setting & 1, c.alice.detector & 1, c.bob.detector & 1);
  }
  return t;
}

double correlation(const CountTable& table, int sa, int sb) {
  const auto total = table.total_per_setting[sa][sb];
  if (total == 0) {
    throw Error(ErrorKind::NoDataForSettingPair,
                "no coincidences for settings (" + std::to_string(sa) + "," + std::to_string(sb) + ")");
  }
  const auto& c = table.counts[sa][sb];
  const double same = static_cast<double>(c[0][0] + c[1][1]);
  const double diff = static_cast<double>(c[0][1] + c[1][0]);
  return (same - diff) / static_cast<double>(total);
}

std::string_view to_string(SignPattern p) {
  switch (p) {
    case SignPattern::Minus00: return "00";
    case SignPattern::Minus01: return "01";
    case SignPattern::Minus10: return "10";
    case SignPattern::Minus11: return "11";
  }
  return "11";
}

SignPattern parse_sign_pattern(std::string_view s) {
  if (s == "00") return SignPattern::Minus00;
  if (s == "01") return SignPattern::Minus01;
  if (s == "10") return SignPattern::Minus10;
  if (s == "11") return SignPattern::Minus11;
  throw Error(ErrorKind::InvalidParams, "CHSH sign pattern must be one of 00|01|10|11");
}

namespace {

double signed_sum(const std::array<std::array<double, 2>, 2>& e, SignPattern p) {
  const int minus = static_cast<int>(p);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double term = e[k >> 1][k & 1];
    s += k == minus ? -term : term;
  }
  return s;
}

}  // namespace

ChshReport chsh_s(const std::array<std::array<double, 2>, 2>& correlations, SignPattern pattern) {
  ChshReport r;
  r.correlations = correlations;
  r.term_signs = pattern;
  r.s_value = signed_sum(correlations, pattern);
  r.violates_local_bound = std::abs(r.s_value) > 2.0;
  r.max_s_value = -1.0;
  for (int k = 0; k < 4; ++k) {
    const auto p = static_cast<SignPattern>(k);
    const double s = std::abs(signed_sum(correlations, p));
    if (s > r.max_s_value) {
      r.max_s_value = s;
      r.max_pattern = p;
    }
  }
  return r;
}

ChshReport chsh_from_counts(const CountTable& counts, SignPattern pattern) {
  std::array<std::array<double, 2>, 2> e{};
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) e[sa][sb] = correlation(counts, sa, sb);
  }
  return chsh_s(e, pattern);
}

void write_counts(std::ostream& out, const CountTable& table) {
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (int da = 0; da < 2; ++da)
        for (int db = 0; db < 2; ++db)
          out << sa << ' ' << sb << ' ' << da << ' ' << db << ' ' << table.counts[sa][sb][da][db] << '\n';
}

}  // namespace bellrand::bell
