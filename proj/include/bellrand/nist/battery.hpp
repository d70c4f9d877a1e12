#pragma once

// The fifteen SP 800-22 Rev 1a tests, run on a single binary sequence.
//
// Status rules:
//   - NotApplicable: the sequence is too short for the test's size
//     requirement (longest-run table, rank matrix count, Maurer's Q+K blocks,
//     fewer than 500 excursion cycles) or the statistic is undefined.
//   - Pass: applicable and every p-value >= alpha.
//   - Fail: applicable and some p-value < alpha.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bellrand::nist {

inline constexpr int kTestCount = 15;
inline constexpr int kMaurerTestId = 9;
/// Maurer's test needs (Q + K) * L bits with L = 6; anything up to this is
/// not applicable.
inline constexpr std::size_t kMaurerMinLength = 387'840;
inline constexpr std::size_t kBatteryMinLength = 100;

enum class Status { Pass, Fail, NotApplicable };

std::string_view to_string(Status s);
Status parse_status(std::string_view s);

/// Canonical test name for ids 1..15.
std::string_view test_name(int test_id);

struct TestResult {
  int test_id = 0;
  std::string name;
  std::vector<double> p_values;
  Status status = Status::NotApplicable;
  std::map<std::string, std::string> params;

  double min_p() const;
};

struct BatteryConfig {
  double alpha = 0.01;
  std::size_t block_frequency_m = 128;
  std::size_t nonoverlapping_m = 9;
  std::size_t overlapping_m = 9;
  std::size_t linear_complexity_m = 500;
  std::size_t serial_m = 2;
  std::size_t apen_m = 2;
};

struct BatteryReport {
  std::size_t n = 0;
  double alpha = 0.01;
  std::vector<TestResult> results;  // ordered by test_id, always 15
  bool first6_pass = false;
  bool full_pass_excepting_9 = false;

  const TestResult& result(int test_id) const { return results.at(static_cast<std::size_t>(test_id - 1)); }
};

/// Runs one test. Throws InvalidParams for out-of-range parameters or id.
TestResult run_test(int test_id, std::span<const std::uint8_t> bits, const BatteryConfig& config = {});

/// Runs all fifteen tests in id order. Throws SeriesTooShort below 100 bits.
BatteryReport run_battery(std::span<const std::uint8_t> bits, const BatteryConfig& config = {});

/// Builds a report from already computed results and derives the summary
/// flags: first6_pass when none of tests 1-6 fails, full_pass_excepting_9
/// when no test other than 9 fails.
BatteryReport summarize(std::size_t n, double alpha, std::vector<TestResult> results);

/// "0.123456", or "< 1e-300" for a clamped p-value.
std::string format_p_value(double p);

/// One record per test: id, name, params, p-values, status.
void write_text(std::ostream& out, const BatteryReport& report);
/// `prefix`-qualified key=value lines.
void write_kv(std::ostream& out, const BatteryReport& report, const std::string& prefix = "");

}  // namespace bellrand::nist
