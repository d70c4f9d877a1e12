#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "bellrand/ingest.hpp"

namespace bellrand::bell {

struct CountTable {
  // counts[sA][sB][dA][dB]
  std::array<std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2>, 2> counts{};
  std::array<std::array<std::uint64_t, 2>, 2> total_per_setting{};

  std::uint64_t total() const;
};

CountTable tabulate_counts(const ingest::RunDataset& run);

/// Adds one observation; keeps total_per_setting consistent.
void add_count(CountTable& table, int sa, int sb, int da, int db, std::uint64_t k = 1);

/// E = (N_same - N_diff) / N for one setting pair. Throws NoDataForSettingPair.
double correlation(const CountTable& counts, int sa, int sb);

/// Position of the minus sign among the four terms, indexed sA*2+sB.
enum class SignPattern : std::uint8_t { Minus00 = 0, Minus01 = 1, Minus10 = 2, Minus11 = 3 };

std::string_view to_string(SignPattern p);
SignPattern parse_sign_pattern(std::string_view s);  // "00", "01", "10", "11"

struct ChshReport {
  std::array<std::array<double, 2>, 2> correlations{};
  double s_value = 0.0;  // under term_signs
  bool violates_local_bound = false;
  SignPattern term_signs = SignPattern::Minus11;
  double max_s_value = 0.0;  // largest |S| over the four placements
  SignPattern max_pattern = SignPattern::Minus11;
};

/// S = sum of the four correlations with the minus on the chosen term.
ChshReport chsh_s(const std::array<std::array<double, 2>, 2>& correlations,
                  SignPattern pattern = SignPattern::Minus11);

/// Correlations from counts, then chsh_s.
ChshReport chsh_from_counts(const CountTable& counts, SignPattern pattern = SignPattern::Minus11);

/// Sixteen lines `sA sB dA dB count`, LF terminated.
void write_counts(std::ostream& out, const CountTable& table);

}  // namespace bellrand::bell
