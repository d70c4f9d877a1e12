#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bellrand/app/analysis.hpp"
#include "bellrand/error.hpp"
#include "support/oracles.hpp"

using namespace bellrand;
using namespace bellrand::app;
using bellrand::testing::prng_bits;

namespace {

nist::BatteryReport battery_with(std::initializer_list<std::pair<int, nist::Status>> overrides) {
  std::vector<nist::TestResult> rs;
  for (int id = 1; id <= nist::kTestCount; ++id) {
    nist::TestResult r;
    r.test_id = id;
    r.name = std::string(nist::test_name(id));
    r.status = id == nist::kMaurerTestId ? nist::Status::NotApplicable : nist::Status::Pass;
    if (r.status == nist::Status::Pass) r.p_values = {0.5};
    rs.push_back(r);
  }
  for (auto [id, st] : overrides) {
    rs[id - 1].status = st;
    rs[id - 1].p_values = st == nist::Status::Fail ? std::vector<double>{0.001} : std::vector<double>{0.5};
  }
  return nist::summarize(10000, 0.01, rs);
}

ReportRow row(std::string label, double k, Classification c, std::optional<std::string> bell, std::size_t n) {
  ReportRow r;
  r.series_label = std::move(label);
  r.k = k;
  r.n = n;
  r.verdict.classification = c;
  if (bell) r.bell_stat = BellStat{BellStat::Kind::PassThroughS, std::stod(*bell), *bell};
  return r;
}

ingest::RunDataset synthetic_run(std::size_t n, std::uint64_t seed) {
  ingest::SynthConfig cfg;
  cfg.prob = ingest::chsh_optimal_table();
  cfg.n = n;
  cfg.seed = seed;
  cfg.timing = {1000, 400, 10};
  cfg.name = "synth";
  return ingest::synth_generate(cfg);
}

}  // namespace

TEST(Classify, Examples) {
  const auto pass = battery_with({});
  EXPECT_EQ(classify(1.01, pass, CriteriaMode::FullBattery).classification, Classification::Yes);
  EXPECT_EQ(classify(0.62, pass, CriteriaMode::FullBattery).classification, Classification::No);
  EXPECT_EQ(classify(1.01, battery_with({{1, nist::Status::Fail}}), CriteriaMode::FullBattery).classification,
            Classification::No);
  EXPECT_EQ(classify(1.01, battery_with({{7, nist::Status::Fail}}), CriteriaMode::FullBattery).classification,
            Classification::YesNo);
  EXPECT_EQ(classify(1.01, battery_with({{7, nist::Status::Fail}}), CriteriaMode::LegacyFirst6).classification,
            Classification::Yes);
  EXPECT_EQ(classify(1.01, battery_with({{9, nist::Status::Fail}}), CriteriaMode::FullBattery).classification,
            Classification::Yes);
  EXPECT_EQ(classify(0.9, pass, CriteriaMode::FullBattery).classification, Classification::Yes);
}

TEST(Classify, InvalidInputs) {
  const auto pass = battery_with({});
  EXPECT_THROW(classify(std::nan(""), pass, CriteriaMode::FullBattery), Error);
  EXPECT_THROW(classify(1.0, pass, CriteriaMode::FullBattery, 0.0), Error);
  EXPECT_THROW(classify(1.0, pass, CriteriaMode::FullBattery, 1.5), Error);
}

TEST(Classify, MonotoneInComplexityAndThreshold) {
  const std::vector<nist::BatteryReport> batteries{battery_with({}), battery_with({{12, nist::Status::Fail}}),
                                                   battery_with({{2, nist::Status::Fail}})};
  for (const auto& b : batteries) {
    for (auto mode : {CriteriaMode::FullBattery, CriteriaMode::LegacyFirst6}) {
      auto prev = Classification::No;
      for (double k = 0.0; k < 1.3; k += 0.01) {
        const auto c = classify(k, b, mode).classification;
        ASSERT_GE(c, prev);
        prev = c;
      }
      prev = Classification::Yes;
      for (double k_min = 0.05; k_min <= 1.0; k_min += 0.05) {
        const auto c = classify(0.8, b, mode, k_min).classification;
        ASSERT_LE(c, prev);
        prev = c;
      }
    }
  }
}

TEST(Classify, RepairingAFailureNeverLowersTheVerdict) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::pair<int, nist::Status>> fails;
    for (int id = 1; id <= nist::kTestCount; ++id) {
      if (rng() % 5 == 0) fails.emplace_back(id, nist::Status::Fail);
    }
    if (fails.empty()) continue;
    auto build = [](const std::vector<std::pair<int, nist::Status>>& f) {
      std::vector<nist::TestResult> rs = battery_with({}).results;
      for (auto [id, st] : f) rs[id - 1].status = st;
      return nist::summarize(10000, 0.01, rs);
    };
    const double k = (rng() % 140) / 100.0;
    const auto mode = rng() % 2 ? CriteriaMode::FullBattery : CriteriaMode::LegacyFirst6;
    const auto before = classify(k, build(fails), mode).classification;
    fails.erase(fails.begin() + static_cast<std::ptrdiff_t>(rng() % fails.size()));
    EXPECT_GE(classify(k, build(fails), mode).classification, before);
  }
}

TEST(Classify, FullNeverMoreLenientThanLegacy) {
  for (int fail = 0; fail <= 15; ++fail) {
    const auto b = fail == 0 ? battery_with({}) : battery_with({{fail, nist::Status::Fail}});
    for (double k : {0.5, 0.95, 1.05}) {
      const auto full = classify(k, b, CriteriaMode::FullBattery).classification;
      const auto legacy = classify(k, b, CriteriaMode::LegacyFirst6).classification;
      EXPECT_LE(full, legacy);
    }
  }
}

TEST(Verdict, Strings) {
  for (auto c : {Classification::No, Classification::YesNo, Classification::Yes}) {
    EXPECT_EQ(parse_verdict_string(verdict_string(c)), c);
  }
  EXPECT_EQ(verdict_string(Classification::YesNo), "yes (no)");
}

TEST(Render, TableRow) {
  const std::vector<ReportRow> rows{row("X", 1.0172, Classification::No, "2.53", 9676)};
  EXPECT_EQ(render(rows, ReportFormat::TableText),
            "Series\tComplexity\tNIST (RND=?)\tS_CHSH\tN\nX\t1.017\tNO\t2.53\t9676\n");
}

TEST(Render, CsvAndMissingBellStat) {
  const std::vector<ReportRow> rows{row("a, b", 0.5, Classification::Yes, std::nullopt, 10),
                                    row("c", 1.0, Classification::YesNo, "2.00", 20)};
  const auto csv = render(rows, ReportFormat::Csv);
  EXPECT_EQ(csv, "series,complexity,verdict,bell_stat,n\n\"a, b\",0.500,yes,-,10\nc,1.000,yes (no),2.00,20\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Render, EmptyReport) {
  try {
    render({}, ReportFormat::TableText);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyReport);
  }
  EXPECT_THROW(render({}, ReportFormat::Csv), Error);
  EXPECT_EQ(render({}, ReportFormat::MachineKv), "");
}

TEST(AnalyzeSeries, ShortSeriesIsNo) {
  AnalysisConfig cfg;
  const auto r = analyze_series({"tiny", prng_bits(50, 1)}, cfg);
  EXPECT_EQ(r.verdict.classification, Classification::No);
  EXPECT_EQ(r.verdict.reason, "series too short");
  for (const auto& t : r.verdict.battery.results) EXPECT_EQ(t.status, nist::Status::NotApplicable);
}

TEST(AnalyzeSeries, ConstantSeriesIsNo) {
  AnalysisConfig cfg;
  const auto r = analyze_series({"zeros", std::vector<std::uint8_t>(5000, 0)}, cfg);
  EXPECT_EQ(r.verdict.classification, Classification::No);
  EXPECT_LT(r.k, 0.05);
}

TEST(AnalyzeRun, RowsAndLabels) {
  AnalysisConfig cfg;
  cfg.include_gap_series = true;
  const auto run = synthetic_run(4000, 1);
  const auto rows = analyze_run(run, cfg);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].series_label, "synth, Alice, setting = 0");
  EXPECT_EQ(rows[3].series_label, "synth, Bob, setting = 1");
  EXPECT_EQ(rows[4].n, 8000u);
  EXPECT_EQ(rows[6].n, 3999u);
  EXPECT_EQ(rows[0].n + rows[1].n, 4000u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.bell_stat);
    EXPECT_EQ(r.bell_stat->kind, BellStat::Kind::ChshS);
  }
  cfg.include_gap_series = false;
  EXPECT_EQ(analyze_run(run, cfg).size(), 6u);
  EXPECT_THROW(analyze_run(synthetic_run(1, 1), cfg), Error);
}

TEST(RunBellStat, Precedence) {
  auto run = synthetic_run(400, 2);
  run.metadata["S_CHSH"] = "2.53";
  EXPECT_EQ(run_bell_stat(run, bell::SignPattern::Minus11)->kind, BellStat::Kind::ChshS);
  run.metadata["J"] = "7.0e-5";
  const auto j = run_bell_stat(run, bell::SignPattern::Minus11);
  EXPECT_EQ(j->kind, BellStat::Kind::PassThroughJ);
  EXPECT_EQ(j->text, "J = 7.0e-5");

  ingest::RunDataset partial;
  partial.name = "p";
  partial.metadata["S_CHSH"] = "2.53";
  partial.coincidences.push_back(ingest::make_coincidence({ingest::Station::Alice, 1, 0, 0}, {ingest::Station::Bob, 1, 0, 0}));
  EXPECT_EQ(run_bell_stat(partial, bell::SignPattern::Minus11)->text, "2.53");
  partial.metadata.clear();
  EXPECT_FALSE(run_bell_stat(partial, bell::SignPattern::Minus11));
}

TEST(KvReport, RoundTrip) {
  AnalysisConfig cfg;
  cfg.include_gap_series = true;
  const auto rows = analyze_run(synthetic_run(3000, 3), cfg);
  const auto kv = render(rows, ReportFormat::MachineKv);
  std::istringstream in("# comment\n" + kv);
  const auto parsed = parse_kv_report(in);
  ASSERT_EQ(parsed.size(), rows.size());
  EXPECT_EQ(render(parsed, ReportFormat::MachineKv), kv);
  EXPECT_EQ(render(parsed, ReportFormat::TableText), render(rows, ReportFormat::TableText));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(parsed[i].k, rows[i].k);
    EXPECT_EQ(parsed[i].verdict.classification, rows[i].verdict.classification);
    EXPECT_EQ(parsed[i].verdict.battery.first6_pass, rows[i].verdict.battery.first6_pass);
  }
}

TEST(KvReport, Malformed) {
  std::istringstream in("rows=1\nrow.0.label=x\n");
  EXPECT_THROW(parse_kv_report(in), Error);
  std::istringstream no_eq("rows\n");
  EXPECT_THROW(parse_kv_report(no_eq), Error);
  std::istringstream empty("");
  EXPECT_TRUE(parse_kv_report(empty).empty());
}
