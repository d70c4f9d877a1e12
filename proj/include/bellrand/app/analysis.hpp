#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellrand/bell.hpp"
#include "bellrand/ingest.hpp"
#include "bellrand/nist/battery.hpp"
#include "bellrand/series.hpp"

namespace bellrand::app {

/// Ordered No < YesNo < Yes.
enum class Classification { No = 0, YesNo = 1, Yes = 2 };

enum class CriteriaMode {
  LegacyFirst6,  // K threshold and tests 1-6 only
  FullBattery,   // K threshold and every applicable test except 9
};

/// "NO", "yes (no)", "yes".
std::string_view verdict_string(Classification c);
Classification parse_verdict_string(std::string_view s);
std::string_view to_string(CriteriaMode m);
CriteriaMode parse_criteria_mode(std::string_view s);  // "legacy" | "full"

struct Verdict {
  Classification classification = Classification::No;
  double k_value = 0.0;
  double k_threshold_used = 0.9;
  nist::BatteryReport battery;
  CriteriaMode criteria_mode = CriteriaMode::FullBattery;
  std::string reason;
};

inline constexpr double kDefaultKMin = 0.9;

/// Tri-state classification.
///   FullBattery: No if any of tests 1-6 fails or k < k_min; YesNo if tests
///   1-6 pass but a later applicable test other than 9 fails; Yes otherwise.
///   LegacyFirst6: Yes iff tests 1-6 pass and k >= k_min, else No.
/// Throws InvalidParams unless k is finite and k_min lies in (0, 1].
Verdict classify(double k, const nist::BatteryReport& battery, CriteriaMode mode, double k_min = kDefaultKMin);

struct BellStat {
  enum class Kind { ChshS, PassThroughS, PassThroughJ };
  Kind kind = Kind::ChshS;
  double value = 0.0;
  std::string text;  // as rendered in reports
};

struct ReportRow {
  std::string series_label;
  double k = 0.0;
  std::size_t phrase_count = 0;
  Verdict verdict;
  std::optional<BellStat> bell_stat;
  std::size_t n = 0;
};

struct AnalysisConfig {
  nist::BatteryConfig battery;
  double k_min = kDefaultKMin;
  CriteriaMode criteria = CriteriaMode::FullBattery;
  series::QuaternaryMap quaternary_map = series::QuaternaryMap::TwoBitMsbFirst;
  bool include_gap_series = false;
  bell::SignPattern chsh_pattern = bell::SignPattern::Minus11;
};

/// Analyses one binary series: complexity, battery, verdict. Series too short
/// for the battery are classified No with reason "series too short" and
/// carry an all-NotApplicable battery.
ReportRow analyze_series(const series::BinarySeries& bits, const AnalysisConfig& config,
                         std::optional<BellStat> bell_stat = std::nullopt);

/// Bell statistic for a run: metadata "J" passes through, otherwise CHSH S
/// from the counts under the configured sign pattern, otherwise a metadata
/// "S_CHSH" value; nullopt when none is available.
std::optional<BellStat> run_bell_stat(const ingest::RunDataset& run, bell::SignPattern pattern);

/// Rows, in order: Alice setting 0/1, Bob setting 0/1, all Alice outcomes,
/// all Bob outcomes, and the binarized time gaps when enabled. Throws
/// TooShort for fewer than 2 coincidences.
std::vector<ReportRow> analyze_run(const ingest::RunDataset& run, const AnalysisConfig& config);

enum class ReportFormat { TableText, MachineKv, Csv };

std::string_view to_string(ReportFormat f);
ReportFormat parse_report_format(std::string_view s);  // "table" | "kv" | "csv"

/// Deterministic rendering. Throws EmptyReport for table/csv with no rows.
std::string render(std::span<const ReportRow> rows, ReportFormat format);

/// Reads a machine_kv document back (`#` lines ignored).
std::vector<ReportRow> parse_kv_report(std::istream& in);

}  // namespace bellrand::app
