#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <sstream>

#include "bellrand/app/analysis.hpp"
#include "bellrand/error.hpp"

namespace bellrand::app {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view bell_kind_name(BellStat::Kind k) {
  switch (k) {
    case BellStat::Kind::ChshS: return "chsh";
    case BellStat::Kind::PassThroughS: return "s_passthrough";
    case BellStat::Kind::PassThroughJ: return "j_passthrough";
  }
  return "chsh";
}

BellStat::Kind parse_bell_kind(std::string_view s) {
  if (s == "chsh") return BellStat::Kind::ChshS;
  if (s == "s_passthrough") return BellStat::Kind::PassThroughS;
  if (s == "j_passthrough") return BellStat::Kind::PassThroughJ;
  throw Error(ErrorKind::MalformedRecord, "unknown bell statistic kind '" + std::string(s) + "'");
}

std::string bell_text(const ReportRow& r) { return r.bell_stat ? r.bell_stat->text : "-"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void render_table(std::ostream& out, std::span<const ReportRow> rows) {
  out << "Series\tComplexity\tNIST (RND=?)\tS_CHSH\tN\n";
  for (const auto& r : rows) {
    out << r.series_label << '\t' << fixed(r.k, 3) << '\t' << verdict_string(r.verdict.classification) << '\t'
        << bell_text(r) << '\t' << r.n << '\n';
  }
}

void render_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "series,complexity,verdict,bell_stat,n\n";
  for (const auto& r : rows) {
    out << csv_field(r.series_label) << ',' << fixed(r.k, 3) << ','
        << csv_field(std::string(verdict_string(r.verdict.classification))) << ',' << csv_field(bell_text(r)) << ','
        << r.n << '\n';
  }
}

void render_kv(std::ostream& out, std::span<const ReportRow> rows) {
  if (rows.empty()) return;
  out << "rows=" << rows.size() << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string p = "row." + std::to_string(i) + '.';
    out << p << "label=" << r.series_label << '\n';
    out << p << "n=" << r.n << '\n';
    out << p << "phrase_count=" << r.phrase_count << '\n';
    out << p << "k=" << exact(r.k) << '\n';
    out << p << "k_display=" << fixed(r.k, 3) << '\n';
    out << p << "verdict=" << verdict_string(r.verdict.classification) << '\n';
    out << p << "reason=" << r.verdict.reason << '\n';
    out << p << "criteria=" << to_string(r.verdict.criteria_mode) << '\n';
    out << p << "k_threshold=" << exact(r.verdict.k_threshold_used) << '\n';
    if (r.bell_stat) {
      out << p << "bell.kind=" << bell_kind_name(r.bell_stat->kind) << '\n';
      out << p << "bell.value=" << exact(r.bell_stat->value) << '\n';
      out << p << "bell.text=" << r.bell_stat->text << '\n';
    }
    nist::write_kv(out, r.verdict.battery, p + "battery.");
  }
}

// --- kv parsing ---------------------------------------------------------------

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw Error(ErrorKind::MalformedRecord, "not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::MalformedRecord, "not an unsigned integer: '" + s + "'");
  }
  return v;
}

std::vector<double> parse_p_values(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto item = s.substr(start, comma - start);
    out.push_back(item == "< 1e-300" ? 0.0 : to_double(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

class KvDoc {
 public:
  explicit KvDoc(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(lineno) + ": expected key=value", lineno);
      }
      values_[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorKind::MalformedRecord, "missing key '" + key + "'");
    return it->second;
  }

  std::map<std::string, std::string> with_prefix(const std::string& prefix) const {
    std::map<std::string, std::string> out;
    for (auto it = values_.lower_bound(prefix); it != values_.end() && it->first.starts_with(prefix); ++it) {
      out[it->first.substr(prefix.size())] = it->second;
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

nist::BatteryReport parse_battery(const KvDoc& doc, const std::string& p) {
  std::vector<nist::TestResult> results;
  for (int id = 1; id <= nist::kTestCount; ++id) {
    const std::string key = p + "test." + std::to_string(id) + '.';
    nist::TestResult t;
    t.test_id = id;
    t.name = doc.get(key + "name");
    t.status = nist::parse_status(doc.get(key + "status"));
    t.p_values = parse_p_values(doc.get(key + "p_values"));
    t.params = doc.with_prefix(key + "param.");
    results.push_back(std::move(t));
  }
  auto rep = nist::summarize(to_size(doc.get(p + "n")), to_double(doc.get(p + "alpha")), std::move(results));
  return rep;
}

}  // namespace

std::string_view to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::TableText: return "table";
    case ReportFormat::MachineKv: return "kv";
    case ReportFormat::Csv: return "csv";
  }
  return "table";
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "table") return ReportFormat::TableText;
  if (s == "kv") return ReportFormat::MachineKv;
  if (s == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::InvalidParams, "format must be table|kv|csv, got '" + std::string(s) + "'");
}

std::string render(std::span<const ReportRow> rows, ReportFormat format) {
  if (rows.empty() && format != ReportFormat::MachineKv) {
    throw Error(ErrorKind::EmptyReport, "no rows to render");
  }
  std::ostringstream out;
  switch (format) {
    case ReportFormat::TableText: render_table(out, rows); break;
    case ReportFormat::Csv: render_csv(out, rows); break;
    case ReportFormat::MachineKv: render_kv(out, rows); break;
  }
  return out.str();
}

std::vector<ReportRow> parse_kv_report(std::istream& in) {
  if (!in) throw Error(ErrorKind::UnreadableSource, "stream is not readable");
  KvDoc doc(in);
  std::vector<ReportRow> rows;
  if (!doc.has("rows")) return rows;
  const auto count = to_size(doc.get("rows"));
  for (std::size_t i = 0; i < count; ++i) {
    const std::string p = "row." + std::to_string(i) + '.';
    ReportRow r;
    r.series_label = doc.get(p + "label");
    r.n = to_size(doc.get(p + "n"));
    r.phrase_count = to_size(doc.get(p + "phrase_count"));
    r.k = to_double(doc.get(p + "k"));
    r.verdict.k_value = r.k;
    r.verdict.classification = parse_verdict_string(doc.get(p + "verdict"));
    r.verdict.reason = doc.get(p + "reason");
    r.verdict.criteria_mode = parse_criteria_mode(doc.get(p + "criteria"));
    r.verdict.k_threshold_used = to_double(doc.get(p + "k_threshold"));
    if (doc.has(p + "bell.kind")) {
      r.bell_stat = BellStat{parse_bell_kind(doc.get(p + "bell.kind")), to_double(doc.get(p + "bell.value")),
                             doc.get(p + "bell.text")};
    }
    r.verdict.battery = parse_battery(doc, p + "battery.");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace bellrand::app
