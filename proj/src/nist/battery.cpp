#include "bellrand/nist/battery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bellrand/error.hpp"
#include "tests.hpp"

namespace bellrand::nist {

namespace {

constexpr std::array<std::string_view, kTestCount> kNames{
    "Frequency",
    "Block Frequency",
    "Runs",
    "Longest Run of Ones",
    "Binary Matrix Rank",
    "Discrete Fourier Transform",
    "Non-overlapping Template Matching",
    "Overlapping Template Matching",
    "Maurer's Universal Statistical",
    "Linear Complexity",
    "Serial",
    "Approximate Entropy",
    "Cumulative Sums",
    "Random Excursions",
    "Random Excursions Variant",
};

constexpr double kClampBelow = 1e-300;

void validate(const BatteryConfig& c) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidParams, what); };
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) bad("alpha must lie in (0, 1)");
  if (c.block_frequency_m < 2) bad("block frequency M must be >= 2");
  if (c.nonoverlapping_m < 2 || c.nonoverlapping_m > 16) bad("non-overlapping template m must lie in [2, 16]");
  if (c.overlapping_m < 2 || c.overlapping_m > 16) bad("overlapping template m must lie in [2, 16]");
  if (c.linear_complexity_m < 2) bad("linear complexity M must be >= 2");
  if (c.serial_m < 2 || c.serial_m > 24) bad("serial m must lie in [2, 24]");
  if (c.apen_m < 1 || c.apen_m > 24) bad("approximate entropy m must lie in [1, 24]");
}

TestResult dispatch(int id, std::span<const std::uint8_t> bits, const BatteryConfig& c) {
  using namespace detail;
  switch (id) {
    case 1: return frequency(bits);
    case 2: return block_frequency(bits, c.block_frequency_m);
    case 3: return runs(bits);
    case 4: return longest_run(bits);
    case 5: return rank(bits);
    case 6: return spectral(bits);
    case 7: return non_overlapping_template(bits, c.nonoverlapping_m);
    case 8: return overlapping_template(bits, c.overlapping_m);
    case 9: return universal(bits);
    case 10: return linear_complexity_test(bits, c.linear_complexity_m);
    case 11: return serial(bits, c.serial_m);
    case 12: return approximate_entropy(bits, c.apen_m);
    case 13: return cumulative_sums(bits);
    case 14: return random_excursions(bits);
    case 15: return random_excursions_variant(bits);
    default: throw Error(ErrorKind::InvalidParams, "test id must lie in [1, 15], got " + std::to_string(id));
  }
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "Pass";
    case Status::Fail: return "Fail";
    case Status::NotApplicable: return "NotApplicable";
  }
  return "NotApplicable";
}

Status parse_status(std::string_view s) {
  if (s == "Pass") return Status::Pass;
  if (s == "Fail") return Status::Fail;
  if (s == "NotApplicable") return Status::NotApplicable;
  throw Error(ErrorKind::MalformedRecord, "unknown status '" + std::string(s) + "'");
}

std::string_view test_name(int test_id) {
  if (test_id < 1 || test_id > kTestCount) {
    throw Error(ErrorKind::InvalidParams, "test id must lie in [1, 15], got " + std::to_string(test_id));
  }
  return kNames[static_cast<std::size_t>(test_id - 1)];
}

double TestResult::min_p() const {
  return p_values.empty() ? 1.0 : *std::min_element(p_values.begin(), p_values.end());
}

TestResult run_test(int test_id, std::span<const std::uint8_t> bits, const BatteryConfig& config) {
  validate(config);
  TestResult r = dispatch(test_id, bits, config);
  r.test_id = test_id;
  r.name = std::string(test_name(test_id));
  if (r.p_values.empty()) {
    r.status = Status::NotApplicable;
    return r;
  }
  for (double& p : r.p_values) {
    if (std::isnan(p)) p = 0.0;
    p = std::clamp(p, 0.0, 1.0);
    if (p < kClampBelow) p = 0.0;
  }
  r.status = r.min_p() >= config.alpha ? Status::Pass : Status::Fail;
  return r;
}

BatteryReport summarize(std::size_t n, double alpha, std::vector<TestResult> results) {
  if (results.size() != kTestCount) {
    throw Error(ErrorKind::InvalidParams, "a battery report needs exactly 15 results");
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.test_id < b.test_id; });
  for (int id = 1; id <= kTestCount; ++id) {
    if (results[static_cast<std::size_t>(id - 1)].test_id != id) {
      throw Error(ErrorKind::InvalidParams, "battery results must cover test ids 1..15 once each");
    }
  }
  BatteryReport rep;
  rep.n = n;
  rep.alpha = alpha;
  rep.results = std::move(results);
  rep.first6_pass = std::none_of(rep.results.begin(), rep.results.begin() + 6,
                                 [](const TestResult& t) { return t.status == Status::Fail; });
  rep.full_pass_excepting_9 = std::none_of(rep.results.begin(), rep.results.end(), [](const TestResult& t) {
    return t.test_id != kMaurerTestId && t.status == Status::Fail;
  });
  return rep;
}

BatteryReport run_battery(std::span<const std::uint8_t> bits, const BatteryConfig& config) {
  if (bits.size() < kBatteryMinLength) {
    throw Error(ErrorKind::SeriesTooShort,
                "battery needs at least " + std::to_string(kBatteryMinLength) + " bits, got " + std::to_string(bits.size()));
  }
  validate(config);
  std::vector<TestResult> results;
  results.reserve(kTestCount);
  for (int id = 1; id <= kTestCount; ++id) results.push_back(run_test(id, bits, config));
  return summarize(bits.size(), config.alpha, std::move(results));
}

std::string format_p_value(double p) {
  if (p == 0.0) return "< 1e-300";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

namespace {

std::string join_params(const std::map<std::string, std::string>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ' ';
    out += k + '=' + v;
  }
  return out;
}

std::string join_p_values(const std::vector<double>& ps) {
  std::string out;
  for (double p : ps) {
    if (!out.empty()) out += ',';
    out += format_p_value(p);
  }
  return out;
}

}  // namespace

void write_text(std::ostream& out, const BatteryReport& report) {
  char alpha[32];
  std::snprintf(alpha, sizeof alpha, "%g", report.alpha);
  out << "n=" << report.n << " alpha=" << alpha << '\n';
  for (const auto& t : report.results) {
    out << t.test_id << '\t' << t.name << '\t' << join_params(t.params) << '\t'
        << (t.p_values.empty() ? std::string("-") : join_p_values(t.p_values)) << '\t' << to_string(t.status) << '\n';
  }
  out << "first6_pass=" << (report.first6_pass ? "true" : "false") << '\n';
  out << "full_pass_excepting_9=" << (report.full_pass_excepting_9 ? "true" : "false") << '\n';
}

void write_kv(std::ostream& out, const BatteryReport& report, const std::string& prefix) {
  char alpha[32];
  std::snprintf(alpha, sizeof alpha, "%g", report.alpha);
  out << prefix << "n=" << report.n << '\n';
  out << prefix << "alpha=" << alpha << '\n';
  out << prefix << "first6_pass=" << (report.first6_pass ? "true" : "false") << '\n';
  out << prefix << "full_pass_excepting_9=" << (report.full_pass_excepting_9 ? "true" : "false") << '\n';
  for (const auto& t : report.results) {
    const std::string key = prefix + "test." + std::to_string(t.test_id) + '.';
    out << key << "name=" << t.name << '\n';
    out << key << "status=" << to_string(t.status) << '\n';
    out << key << "p_values=" << join_p_values(t.p_values) << '\n';
    for (const auto& [k, v] : t.params) out << key << "param." << k << '=' << v << '\n';
  }
}

}  // namespace bellrand::nist
