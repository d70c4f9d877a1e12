#include <cstdio>
#include <cstdlib>

#include "bellrand/app/analysis.hpp"
#include "bellrand/complexity.hpp"
#include "bellrand/error.hpp"

namespace bellrand::app {

namespace {

nist::BatteryReport not_applicable_battery(std::size_t n, double alpha) {
  std::vector<nist::TestResult> results;
  for (int id = 1; id <= nist::kTestCount; ++id) {
    nist::TestResult r;
    r.test_id = id;
    r.name = std::string(nist::test_name(id));
    r.status = nist::Status::NotApplicable;
    r.params["not_applicable"] = "series too short";
    results.push_back(std::move(r));
  }
  return nist::summarize(n, alpha, std::move(results));
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

ReportRow analyze_series(const series::BinarySeries& bits, const AnalysisConfig& config,
                         std::optional<BellStat> bell_stat) {
  ReportRow row;
  row.series_label = bits.label;
  row.n = bits.size();
  row.bell_stat = std::move(bell_stat);
  if (bits.size() < nist::kBatteryMinLength) {
    if (bits.size() >= 2) {
      const auto c = complexity::normalized_complexity(bits.view());
      row.k = c.normalized;
      row.phrase_count = c.phrase_count;
    }
    row.verdict.k_value = row.k;
    row.verdict.k_threshold_used = config.k_min;
    row.verdict.criteria_mode = config.criteria;
    row.verdict.battery = not_applicable_battery(bits.size(), config.battery.alpha);
    row.verdict.classification = Classification::No;
    row.verdict.reason = "series too short";
    return row;
  }
  const auto c = complexity::normalized_complexity(bits.view());
  row.k = c.normalized;
  row.phrase_count = c.phrase_count;
  row.verdict = classify(c.normalized, nist::run_battery(bits.view(), config.battery), config.criteria, config.k_min);
  return row;
}

std::optional<BellStat> run_bell_stat(const ingest::RunDataset& run, bell::SignPattern pattern) {
  if (auto it = run.metadata.find("J"); it != run.metadata.end()) {
    return BellStat{BellStat::Kind::PassThroughJ, std::strtod(it->second.c_str(), nullptr), "J = " + it->second};
  }
  const auto counts = bell::tabulate_counts(run);
  bool complete = true;
  for (const auto& row : counts.total_per_setting) complete = complete && row[0] > 0 && row[1] > 0;
  if (complete) {
    const auto chsh = bell::chsh_from_counts(counts, pattern);
    return BellStat{BellStat::Kind::ChshS, chsh.s_value, format_fixed(chsh.s_value, 2)};
  }
  if (auto it = run.metadata.find("S_CHSH"); it != run.metadata.end()) {
    return BellStat{BellStat::Kind::PassThroughS, std::strtod(it->second.c_str(), nullptr), it->second};
  }
  return std::nullopt;
}

std::vector<ReportRow> analyze_run(const ingest::RunDataset& run, const AnalysisConfig& config) {
  if (run.size() < 2) {
    throw Error(ErrorKind::TooShort, "analysis needs at least 2 coincidences, got " + std::to_string(run.size()));
  }
  const auto bell_stat = run_bell_stat(run, config.chsh_pattern);
  const auto alice = series::extract_symbol_series(run, series::Station::Alice);
  const auto bob = series::extract_symbol_series(run, series::Station::Bob);
  const auto [a0, a1] = series::split_by_setting(alice);
  const auto [b0, b1] = series::split_by_setting(bob);

  std::vector<series::BinarySeries> inputs{a0, a1, b0, b1, series::symbols_to_bits(alice, config.quaternary_map),
                                           series::symbols_to_bits(bob, config.quaternary_map)};
  if (config.include_gap_series) {
    inputs.push_back(series::binarize_by_mean(series::time_difference_series(run)));
  }
  std::vector<ReportRow> rows;
  rows.reserve(inputs.size());
  for (const auto& s : inputs) rows.push_back(analyze_series(s, config, bell_stat));
  return rows;
}

}  // namespace bellrand::app
