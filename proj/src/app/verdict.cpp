#include <cmath>
#include <string>

#include "bellrand/app/analysis.hpp"
#include "bellrand/error.hpp"

namespace bellrand::app {

std::string_view verdict_string(Classification c) {
  switch (c) {
    case Classification::No: return "NO";
    case Classification::YesNo: return "yes (no)";
    case Classification::Yes: return "yes";
  }
  return "NO";
}

Classification parse_verdict_string(std::string_view s) {
  if (s == "NO") return Classification::No;
  if (s == "yes (no)") return Classification::YesNo;
  if (s == "yes") return Classification::Yes;
  throw Error(ErrorKind::MalformedRecord, "unknown verdict '" + std::string(s) + "'");
}

std::string_view to_string(CriteriaMode m) { return m == CriteriaMode::LegacyFirst6 ? "legacy" : "full"; }

CriteriaMode parse_criteria_mode(std::string_view s) {
  if (s == "legacy") return CriteriaMode::LegacyFirst6;
  if (s == "full") return CriteriaMode::FullBattery;
  throw Error(ErrorKind::InvalidParams, "criteria must be legacy|full, got '" + std::string(s) + "'");
}

Verdict classify(double k, const nist::BatteryReport& battery, CriteriaMode mode, double k_min) {
  if (!std::isfinite(k)) throw Error(ErrorKind::InvalidParams, "complexity must be finite");
  if (!(k_min > 0.0 && k_min <= 1.0)) throw Error(ErrorKind::InvalidParams, "k_min must lie in (0, 1]");
  Verdict v;
  v.k_value = k;
  v.k_threshold_used = k_min;
  v.battery = battery;
  v.criteria_mode = mode;

  if (!battery.first6_pass) {
    v.classification = Classification::No;
    v.reason = "failed one of tests 1-6";
  } else if (k < k_min) {
    v.classification = Classification::No;
    v.reason = "complexity below threshold";
  } else if (mode == CriteriaMode::FullBattery && !battery.full_pass_excepting_9) {
    v.classification = Classification::YesNo;
    v.reason = "failed a test after 6 (excluding 9)";
  } else {
    v.classification = Classification::Yes;
    v.reason = mode == CriteriaMode::FullBattery ? "passed all applicable tests (excluding 9)" : "passed tests 1-6";
  }
  return v;
}

}  // namespace bellrand::app
