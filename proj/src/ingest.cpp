#include "bellrand/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "bellrand/digest.hpp"
#include "bellrand/error.hpp"
#include "bellrand/version.hpp"

namespace bellrand::ingest {

std::string_view to_string(Station s) { return s == Station::Alice ? "Alice" : "Bob"; }

CoincidenceRecord make_coincidence(const DetectionEvent& alice, const DetectionEvent& bob) {
  CoincidenceRecord rec;
  rec.alice = alice;
  rec.bob = bob;
  rec.delta = static_cast<std::int64_t>(bob.timestamp) - static_cast<std::int64_t>(alice.timestamp);
  rec.coincidence_time = std::min(alice.timestamp, bob.timestamp);
  return rec;
}

TickUnit TickUnit::parse(std::string_view name) {
  if (name == "ps") return picoseconds();
  if (name == "ns") return nanoseconds();
  throw Error(ErrorKind::InvalidParams, "unknown tick unit '" + std::string(name) + "' (expected ps|ns)");
}

std::string TickUnit::name() const {
  if (*this == picoseconds()) return "ps";
  if (*this == nanoseconds()) return "ns";
  return std::to_string(num) + "/" + std::to_string(den) + "s";
}

void validate(const RunDataset& run) {
  if (run.name.empty()) throw Error(ErrorKind::InvalidParams, "run name is empty");
  for (std::size_t i = 1; i < run.coincidences.size(); ++i) {
    if (run.coincidences[i].coincidence_time <= run.coincidences[i - 1].coincidence_time) {
      throw Error(ErrorKind::InvalidParams,
                  "coincidence times not strictly increasing at index " + std::to_string(i));
    }
  }
}

namespace {

std::string slurp(std::istream& source) {
  if (!source) throw Error(ErrorKind::UnreadableSource, "stream is not readable");
  std::string bytes{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  if (source.bad()) throw Error(ErrorKind::UnreadableSource, "read failed");
  return bytes;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open '" + path + "'");
  return slurp(in);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits into lines, accepting LF or CRLF, dropping a leading UTF-8 BOM.
std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back(text);
      break;
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto semi = line.find(';', start);
    fields.push_back(trim(line.substr(start, semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return fields;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint8_t> parse_bit(std::string_view s) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  return std::nullopt;
}

std::optional<Station> parse_station(std::string_view s) {
  if (s == "A" || s == "a" || s == "0" || s == "Alice") return Station::Alice;
  if (s == "B" || s == "b" || s == "1" || s == "Bob") return Station::Bob;
  return std::nullopt;
}

// Returns an error reason, or empty on success.
std::string parse_event_line(std::string_view line, const EventFormatConfig& format, DetectionEvent& ev) {
  auto fields = split_fields(line);
  std::size_t offset = 0;
  if (format.layout == Layout::StationColumn) {
    if (fields.size() != 4) return "expected 4 fields, got " + std::to_string(fields.size());
    auto st = parse_station(fields[0]);
    if (!st) return "bad station '" + std::string(fields[0]) + "'";
    ev.station = *st;
    offset = 1;
  } else {
    if (fields.size() != 3) return "expected 3 fields, got " + std::to_string(fields.size());
    ev.station = format.station;
  }
  auto t = parse_uint(fields[offset]);
  if (!t) return "bad timestamp '" + std::string(fields[offset]) + "'";
  auto s = parse_bit(fields[offset + 1]);
  if (!s) return "bad setting '" + std::string(fields[offset + 1]) + "'";
  auto d = parse_bit(fields[offset + 2]);
  if (!d) return "bad detector '" + std::string(fields[offset + 2]) + "'";
  ev.timestamp = *t;
  ev.setting = *s;
  ev.detector = *d;
  return {};
}

bool is_skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

ParseResult parse_event_bytes(const std::string& bytes, const EventFormatConfig& format) {
  ParseResult result;
  result.digest = sha256_hex(bytes);
  auto lines = split_lines(bytes);
  std::array<std::optional<Tick>, 2> last{};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (is_skippable(line)) continue;
    DetectionEvent ev;
    if (auto reason = parse_event_line(line, format, ev); !reason.empty()) {
      if (format.strict) throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(i + 1) + ": " + reason, i + 1);
      result.skipped.push_back({i + 1, std::move(reason)});
      continue;
    }
    auto& prev = last[static_cast<std::size_t>(ev.station)];
    if (format.strict && prev && ev.timestamp < *prev) {
      throw Error(ErrorKind::NonMonotoneTimestamps,
                  "line " + std::to_string(i + 1) + ": timestamp " + std::to_string(ev.timestamp) +
                      " precedes " + std::to_string(*prev),
                  i + 1);
    }
    prev = ev.timestamp;
    result.events.push_back(ev);
  }
  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const DetectionEvent& a, const DetectionEvent& b) { return a.timestamp < b.timestamp; });
  return result;
}

CoincidenceParseResult parse_coincidence_bytes(const std::string& bytes, bool strict, std::string_view default_name) {
  CoincidenceParseResult result;
  result.digest = sha256_hex(bytes);
  result.run.name = std::string(default_name);
  auto lines = split_lines(bytes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      auto eq = body.find('=');
      if (eq != std::string_view::npos && eq > 0) {
        auto key = std::string(trim(body.substr(0, eq)));
        auto value = std::string(trim(body.substr(eq + 1)));
        if (key == "run") {
          if (!value.empty()) result.run.name = value;
        } else if (key == "tick_unit") {
          result.run.tick_unit = TickUnit::parse(value);
        } else if (key.starts_with("meta.")) {
          result.run.metadata[key.substr(5)] = value;
        }
      }
      continue;
    }
    auto fields = split_fields(line);
    std::string reason;
    std::optional<std::uint64_t> t;
    std::array<std::optional<std::uint8_t>, 4> bits{};
    if (fields.size() != 5) {
      reason = "expected 5 fields, got " + std::to_string(fields.size());
    } else if (!(t = parse_uint(fields[0]))) {
      reason = "bad timestamp '" + std::string(fields[0]) + "'";
    } else {
      for (std::size_t k = 0; k < 4; ++k) {
        bits[k] = parse_bit(fields[k + 1]);
        if (!bits[k]) {
          reason = "bad bit field " + std::to_string(k + 2) + " '" + std::string(fields[k + 1]) + "'";
          break;
        }
      }
    }
    if (reason.empty() && !result.run.coincidences.empty() &&
        *t <= result.run.coincidences.back().coincidence_time) {
      if (strict) {
        throw Error(ErrorKind::NonMonotoneTimestamps,
                    "line " + std::to_string(i + 1) + ": coincidence time not strictly increasing", i + 1);
      }
      reason = "coincidence time not strictly increasing";
    }
    if (!reason.empty()) {
      if (strict) throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(i + 1) + ": " + reason, i + 1);
      result.skipped.push_back({i + 1, std::move(reason)});
      continue;
    }
    DetectionEvent a{Station::Alice, *t, *bits[0], *bits[1]};
    DetectionEvent b{Station::Bob, *t, *bits[2], *bits[3]};
    result.run.coincidences.push_back(make_coincidence(a, b));
  }
  return result;
}

}  // namespace

ParseResult parse_events(std::istream& source, const EventFormatConfig& format) {
  return parse_event_bytes(slurp(source), format);
}

ParseResult parse_events_file(const std::string& path, const EventFormatConfig& format) {
  return parse_event_bytes(slurp_file(path), format);
}

CoincidenceParseResult parse_coincidences(std::istream& source, bool strict, std::string_view default_name) {
  return parse_coincidence_bytes(slurp(source), strict, default_name);
}

CoincidenceParseResult parse_coincidences_file(const std::string& path, bool strict) {
  auto stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_coincidence_bytes(slurp_file(path), strict, stem.empty() ? "run" : stem);
}

std::vector<CoincidenceRecord> match_coincidences(std::span<const DetectionEvent> alice,
                                                  std::span<const DetectionEvent> bob, Tick window) {
  if (window == 0) throw Error(ErrorKind::ZeroWindow, "coincidence window must be positive");
  auto check_sorted = [](std::span<const DetectionEvent> events, std::string_view who) {
    for (std::size_t i = 1; i < events.size(); ++i) {
      if (events[i].timestamp < events[i - 1].timestamp) {
        throw Error(ErrorKind::UnsortedInput, std::string(who) + " events not sorted at index " + std::to_string(i));
      }
    }
  };
  check_sorted(alice, "Alice");
  check_sorted(bob, "Bob");

  auto dist = [](Tick x, Tick y) { return x > y ? x - y : y - x; };

  std::vector<CoincidenceRecord> out;
  std::size_t i = 0, j = 0;
  while (i < alice.size() && j < bob.size()) {
    const bool alice_first = alice[i].timestamp <= bob[j].timestamp;
    // `e` is the earliest unconsumed event, `p` the head of the other stream.
    auto& ei = alice_first ? i : j;
    auto own = alice_first ? alice : bob;
    const DetectionEvent& e = own[ei];
    const DetectionEvent& p = alice_first ? bob[j] : alice[i];
    const Tick d = dist(e.timestamp, p.timestamp);
    if (d > window) {
      ++ei;
      continue;
    }
    // e <= p, so a later own event is strictly closer to p iff the first one
    // past e's timestamp lies before p + d.
    const auto later = std::upper_bound(own.begin() + static_cast<std::ptrdiff_t>(ei) + 1, own.end(), e.timestamp,
                                        [](Tick t, const DetectionEvent& ev) { return t < ev.timestamp; });
    if (later != own.end() && later->timestamp < p.timestamp + d) {
      ++ei;
      continue;
    }
    auto rec = alice_first ? make_coincidence(e, p) : make_coincidence(p, e);
    if (out.empty() || rec.coincidence_time > out.back().coincidence_time) out.push_back(rec);
    ++i;
    ++j;
  }
  return out;
}

void write_coincidences(std::ostream& out, const RunDataset& run,
                        const std::map<std::string, std::string>& header) {
  out << "# bellrand " << kVersion << '\n';
  out << "# run=" << run.name << '\n';
  out << "# tick_unit=" << run.tick_unit.name() << '\n';
  for (const auto& [k, v] : header) out << "# " << k << '=' << v << '\n';
  for (const auto& [k, v] : run.metadata) out << "# meta." << k << '=' << v << '\n';
  out << "# timestamp;settingA;detectorA;settingB;detectorB\n";
  for (const auto& c : run.coincidences) {
    out << c.coincidence_time << ';' << int(c.alice.setting) << ';' << int(c.alice.detector) << ';'
        << int(c.bob.setting) << ';' << int(c.bob.detector) << '\n';
  }
}

}  // namespace bellrand::ingest
