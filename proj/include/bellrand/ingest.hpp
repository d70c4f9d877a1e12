#pragma once

// Detection-event ingestion: parsing of per-station and pre-matched
// coincidence files, nearest-neighbour coincidence matching, and a seeded
// synthetic generator for two-station experiments.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bellrand::ingest {

enum class Station : std::uint8_t { Alice = 0, Bob = 1 };

std::string_view to_string(Station s);

using Tick = std::uint64_t;

struct DetectionEvent {
  Station station = Station::Alice;
  Tick timestamp = 0;
  std::uint8_t setting = 0;   // 0: no voltage on the modulator, 1: voltage applied
  std::uint8_t detector = 0;  // which of the two detectors fired

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct CoincidenceRecord {
  DetectionEvent alice;
  DetectionEvent bob;
  std::int64_t delta = 0;  // bob.timestamp - alice.timestamp
  Tick coincidence_time = 0;

  friend bool operator==(const CoincidenceRecord&, const CoincidenceRecord&) = default;
};

/// Builds a record from a matched pair, filling delta and coincidence_time.
CoincidenceRecord make_coincidence(const DetectionEvent& alice, const DetectionEvent& bob);

/// Seconds per tick as an exact ratio.
struct TickUnit {
  std::uint64_t num = 1;
  std::uint64_t den = 1'000'000'000'000ULL;

  static TickUnit picoseconds() { return {1, 1'000'000'000'000ULL}; }
  static TickUnit nanoseconds() { return {1, 1'000'000'000ULL}; }
  /// Accepts "ps" or "ns"; throws InvalidParams otherwise.
  static TickUnit parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const TickUnit&, const TickUnit&) = default;
};

struct RunDataset {
  std::string name;
  std::vector<CoincidenceRecord> coincidences;
  TickUnit tick_unit;
  std::map<std::string, std::string> metadata;

  std::size_t size() const { return coincidences.size(); }
};

/// Throws InvalidParams if the name is empty or coincidence times are not
/// strictly increasing.
void validate(const RunDataset& run);

enum class Layout {
  StationEvents,  // timestamp;setting;detector, station given per file
  StationColumn,  // station;timestamp;setting;detector, station per line (A/B or 0/1)
};

struct EventFormatConfig {
  Layout layout = Layout::StationEvents;
  Station station = Station::Alice;  // used by StationEvents
  bool strict = true;
};

struct ParseIssue {
  std::size_t line = 0;
  std::string reason;
};

struct ParseResult {
  std::vector<DetectionEvent> events;
  std::vector<ParseIssue> skipped;
  std::string digest;  // sha256 of the raw bytes
};

/// Parses a per-station event stream. Strict mode throws MalformedRecord on the
/// first bad line and NonMonotoneTimestamps if a station's timestamps
/// decrease; lenient mode skips bad lines and sorts the survivors.
ParseResult parse_events(std::istream& source, const EventFormatConfig& format);
ParseResult parse_events_file(const std::string& path, const EventFormatConfig& format);

struct CoincidenceParseResult {
  RunDataset run;
  std::vector<ParseIssue> skipped;
  std::string digest;
};

/// Parses the pre-matched layout `timestamp;settingA;detectorA;settingB;detectorB`.
/// Comment lines of the form `# key=value` are collected into the metadata;
/// `run` and `tick_unit` keys set the dataset name and unit.
CoincidenceParseResult parse_coincidences(std::istream& source, bool strict = true,
                                          std::string_view default_name = "run");
CoincidenceParseResult parse_coincidences_file(const std::string& path, bool strict = true);

/// Greedy nearest-neighbour matching. Repeatedly takes the earliest
/// unconsumed event (Alice first on ties) and the head of the other stream;
/// the pair is emitted when it lies within the window and no later event of
/// the first event's station is strictly closer to that partner. Otherwise
/// the first event is dropped. A pair whose coincidence time repeats the
/// previous one (possible only with duplicate time tags) is dropped.
std::vector<CoincidenceRecord> match_coincidences(std::span<const DetectionEvent> alice,
                                                  std::span<const DetectionEvent> bob,
                                                  Tick window);

/// Writes the canonical coincidence file (LF terminated). `header` lines are
/// emitted as `# key=value` in map order after the version line.
void write_coincidences(std::ostream& out, const RunDataset& run,
                        const std::map<std::string, std::string>& header = {});

// --- synthetic generation ---------------------------------------------------

/// P(dA, dB | sA, sB): outer index sA*2+sB, inner index dA*2+dB.
using JointTable = std::array<std::array<double, 4>, 4>;

struct TimingModel {
  Tick mean_gap = 1000;   // coincidence-to-coincidence spacing
  Tick gap_jitter = 0;    // uniform +/- jitter on each gap
  Tick pair_jitter = 0;   // uniform +/- offset of Bob's tag relative to Alice's
};

struct SynthConfig {
  JointTable prob{};
  std::array<double, 4> setting_dist{0.25, 0.25, 0.25, 0.25};  // index sA*2+sB
  std::size_t n = 0;
  std::uint64_t seed = 0;
  TimingModel timing;
  std::string name = "synthetic";
};

/// Outcome table of a maximally entangled polarization pair measured at the
/// given analyzer angles (radians): E(a, b) = sign * cos(2 (a - b)), uniform
/// marginals. sign = +1 for |Phi+>, -1 for the singlet.
JointTable entangled_table(std::array<double, 2> alice_angles, std::array<double, 2> bob_angles,
                           double sign = 1.0);

/// Angles at which the +1 state saturates E00 + E01 + E10 - E11 = 2 sqrt 2.
JointTable chsh_optimal_table();

/// Every setting pair always yields (0, 0).
JointTable deterministic_table();

/// Deterministic for a fixed seed; throws InvalidDistribution on a bad table
/// and InvalidParams if the timing model cannot keep coincidence times
/// strictly increasing.
RunDataset synth_generate(const SynthConfig& config);

}  // namespace bellrand::ingest
