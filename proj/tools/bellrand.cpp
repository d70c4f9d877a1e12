// bellrand command line front end.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "bellrand/app/analysis.hpp"
#include "bellrand/bell.hpp"
#include "bellrand/complexity.hpp"
#include "bellrand/digest.hpp"
#include "bellrand/error.hpp"
#include "bellrand/ingest.hpp"
#include "bellrand/nist/battery.hpp"
#include "bellrand/series.hpp"
#include "bellrand/version.hpp"

namespace {

using namespace bellrand;

constexpr int kExitOk = 0;
constexpr int kExitNotRandom = 1;
constexpr int kExitInputError = 2;

using Header = std::map<std::string, std::string>;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Flat `key=value` config files: unsectioned keys belong to the subcommand
// being run. Sectioned INI/TOML keys keep working.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(const CLI::App* root) : root_(root) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    const auto subs = root_->get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty() || item.parents.front() == "default") item.parents = {subs.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

struct SourceOptions {
  std::string coincidences;
  std::string alice;
  std::string bob;
  std::string events;
  std::uint64_t window = 0;
  std::string tick_unit = "ps";
  bool lenient = false;
  std::string name = "run";
  std::size_t synthetic = 0;
  std::uint64_t seed = 0;
  std::string synthetic_table = "chsh";

  void attach(CLI::App& cmd) {
    auto* coinc = cmd.add_option("--coincidences", coincidences, "Pre-matched coincidence file")->check(CLI::ExistingFile);
    auto* a = cmd.add_option("--alice", alice, "Alice event file (timestamp;setting;detector)")->check(CLI::ExistingFile);
    auto* b = cmd.add_option("--bob", bob, "Bob event file (timestamp;setting;detector)")->check(CLI::ExistingFile);
    auto* ev = cmd.add_option("--events", events, "Single event file with a station column")->check(CLI::ExistingFile);
    a->needs(b);
    b->needs(a);
    cmd.add_option("--window", window, "Coincidence window in ticks");
    cmd.add_option("--tick-unit", tick_unit, "Tick unit of event files")->check(CLI::IsMember({"ps", "ns"}));
    cmd.add_flag("--lenient,!--strict", lenient, "Skip malformed lines instead of failing");
    cmd.add_option("--name", name, "Run name for event-file inputs");
    auto* syn = cmd.add_option("--synthetic", synthetic, "Generate N synthetic coincidences instead of reading files");
    cmd.add_option("--seed", seed, "Seed for synthetic generation");
    cmd.add_option("--synthetic-table", synthetic_table, "Outcome table for synthetic runs")
        ->check(CLI::IsMember({"chsh", "deterministic"}));
    coinc->excludes(a)->excludes(ev)->excludes(syn);
    a->excludes(ev)->excludes(syn);
    ev->excludes(syn);
  }

  ingest::RunDataset load(Header& header) const {
    header["source.strict"] = lenient ? "false" : "true";
    if (!coincidences.empty()) {
      auto res = ingest::parse_coincidences_file(coincidences, !lenient);
      header["source.kind"] = "coincidences";
      header["source.coincidences.sha256"] = res.digest;
      report_skipped(res.skipped);
      return std::move(res.run);
    }
    if (!alice.empty() || !events.empty()) {
      if (window == 0) throw Error(ErrorKind::ZeroWindow, "--window is required and must be positive for event inputs");
      std::vector<ingest::DetectionEvent> a_events, b_events;
      if (!alice.empty()) {
        auto ra = ingest::parse_events_file(alice, {ingest::Layout::StationEvents, ingest::Station::Alice, !lenient});
        auto rb = ingest::parse_events_file(bob, {ingest::Layout::StationEvents, ingest::Station::Bob, !lenient});
        header["source.kind"] = "station-events";
        header["source.alice.sha256"] = ra.digest;
        header["source.bob.sha256"] = rb.digest;
        report_skipped(ra.skipped);
        report_skipped(rb.skipped);
        a_events = std::move(ra.events);
        b_events = std::move(rb.events);
      } else {
        auto r = ingest::parse_events_file(events, {ingest::Layout::StationColumn, ingest::Station::Alice, !lenient});
        header["source.kind"] = "station-column";
        header["source.events.sha256"] = r.digest;
        report_skipped(r.skipped);
        for (auto& e : r.events) (e.station == ingest::Station::Alice ? a_events : b_events).push_back(e);
      }
      ingest::RunDataset run;
      run.name = name;
      run.tick_unit = ingest::TickUnit::parse(tick_unit);
      run.coincidences = ingest::match_coincidences(a_events, b_events, window);
      header["source.window"] = std::to_string(window);
      header["source.tick_unit"] = tick_unit;
      return run;
    }
    if (synthetic > 0) {
      ingest::SynthConfig cfg;
      cfg.prob = synthetic_table == "chsh" ? ingest::chsh_optimal_table() : ingest::deterministic_table();
      cfg.n = synthetic;
      cfg.seed = seed;
      cfg.timing = {1000, 400, 20};
      header["source.kind"] = "synthetic";
      header["source.synthetic.n"] = std::to_string(synthetic);
      header["source.synthetic.seed"] = std::to_string(seed);
      header["source.synthetic.table"] = synthetic_table;
      return ingest::synth_generate(cfg);
    }
    throw Error(ErrorKind::InvalidParams, "no input: give --coincidences, --alice/--bob, --events or --synthetic");
  }

  static void report_skipped(const std::vector<ingest::ParseIssue>& skipped) {
    for (const auto& s : skipped) std::cerr << "skipped line " << s.line << ": " << s.reason << '\n';
  }
};

struct OutputOptions {
  std::string path;

  void attach(CLI::App& cmd) { cmd.add_option("-o,--output", path, "Write output to a file instead of stdout"); }

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::UnreadableSource, "cannot write '" + path + "'");
    out << text;
  }
};

std::string header_text(const std::string& command, const Header& header) {
  std::string out = std::string("# bellrand ") + kVersion + '\n';
  out += "# command=" + command + '\n';
  for (const auto& [k, v] : header) out += "# " + k + '=' + v + '\n';
  return out;
}

struct BatteryOptions {
  nist::BatteryConfig cfg;

  void attach(CLI::App& cmd) {
    cmd.add_option("--alpha", cfg.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--block-frequency-m", cfg.block_frequency_m, "Block length for block frequency");
    cmd.add_option("--template-m", cfg.nonoverlapping_m, "Template length for non-overlapping templates");
    cmd.add_option("--overlapping-m", cfg.overlapping_m, "Template length for overlapping templates");
    cmd.add_option("--linear-complexity-m", cfg.linear_complexity_m, "Block length for linear complexity");
    cmd.add_option("--serial-m", cfg.serial_m, "Pattern length for the serial test");
    cmd.add_option("--apen-m", cfg.apen_m, "Pattern length for approximate entropy");
  }

  void describe(Header& h) const {
    h["alpha"] = num(cfg.alpha);
    h["battery.block_frequency_m"] = std::to_string(cfg.block_frequency_m);
    h["battery.nonoverlapping_m"] = std::to_string(cfg.nonoverlapping_m);
    h["battery.overlapping_m"] = std::to_string(cfg.overlapping_m);
    h["battery.linear_complexity_m"] = std::to_string(cfg.linear_complexity_m);
    h["battery.serial_m"] = std::to_string(cfg.serial_m);
    h["battery.apen_m"] = std::to_string(cfg.apen_m);
  }
};

series::BinarySeries load_bits(const std::string& path, Header& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open '" + path + "'");
  std::ostringstream raw;
  raw << in.rdbuf();
  header["source.bits.sha256"] = sha256_hex(raw.str());
  return series::read_bits_file(path);
}

int run_ingest(const SourceOptions& src, const OutputOptions& out) {
  Header header;
  const auto run = src.load(header);
  std::ostringstream text;
  ingest::write_coincidences(text, run, header);
  out.emit(text.str());
  std::cerr << run.size() << " coincidences\n";
  return kExitOk;
}

int run_analyze(const SourceOptions& src, const BatteryOptions& battery, const app::AnalysisConfig& base,
                const std::string& criteria, const std::string& qmap, const std::string& pattern,
                const std::string& format, const OutputOptions& out) {
  app::AnalysisConfig cfg = base;
  cfg.battery = battery.cfg;
  cfg.criteria = app::parse_criteria_mode(criteria);
  cfg.quaternary_map = series::parse_quaternary_map(qmap);
  cfg.chsh_pattern = bell::parse_sign_pattern(pattern);
  const auto fmt = app::parse_report_format(format);

  Header header;
  const auto run = src.load(header);
  battery.describe(header);
  header["k_min"] = num(cfg.k_min);
  header["criteria"] = std::string(app::to_string(cfg.criteria));
  header["quaternary_map"] = std::string(series::to_string(cfg.quaternary_map));
  header["gap_series"] = cfg.include_gap_series ? "true" : "false";
  header["chsh_pattern"] = std::string(bell::to_string(cfg.chsh_pattern));
  header["format"] = std::string(app::to_string(fmt));
  header["run"] = run.name;
  header["coincidences"] = std::to_string(run.size());

  const auto rows = app::analyze_run(run, cfg);
  out.emit(header_text("analyze", header) + app::render(rows, fmt));
  for (const auto& r : rows) {
    if (r.verdict.classification != app::Classification::Yes) return kExitNotRandom;
  }
  return kExitOk;
}

int run_complexity(const std::string& path, const OutputOptions& out) {
  Header header;
  const auto bits = load_bits(path, header);
  const auto r = complexity::normalized_complexity(bits.view());
  std::ostringstream text;
  text << header_text("complexity", header);
  text << "n=" << r.n << '\n' << "phrase_count=" << r.phrase_count << '\n';
  text << "limit=" << num(r.limit_used) << '\n' << "k=" << num(r.normalized) << '\n';
  out.emit(text.str());
  return kExitOk;
}

int run_nist(const std::string& path, const BatteryOptions& battery, const std::string& format,
             const OutputOptions& out) {
  Header header;
  const auto bits = load_bits(path, header);
  battery.describe(header);
  const auto rep = nist::run_battery(bits.view(), battery.cfg);
  std::ostringstream text;
  text << header_text("nist", header);
  if (format == "kv") {
    nist::write_kv(text, rep);
  } else {
    nist::write_text(text, rep);
  }
  out.emit(text.str());
  return rep.full_pass_excepting_9 ? kExitOk : kExitNotRandom;
}

int run_chsh(const SourceOptions& src, const std::string& pattern, const OutputOptions& out) {
  Header header;
  const auto run = src.load(header);
  const auto p = bell::parse_sign_pattern(pattern);
  header["chsh_pattern"] = std::string(bell::to_string(p));
  const auto counts = bell::tabulate_counts(run);
  std::ostringstream text;
  text << header_text("chsh", header);
  bell::write_counts(text, counts);
  const auto r = bell::chsh_from_counts(counts, p);
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb) text << "E" << sa << sb << '=' << num(r.correlations[sa][sb]) << '\n';
  text << "S=" << num(r.s_value) << '\n';
  text << "violates_local_bound=" << (r.violates_local_bound ? "true" : "false") << '\n';
  text << "max_S=" << num(r.max_s_value) << '\n';
  text << "max_pattern=" << bell::to_string(r.max_pattern) << '\n';
  out.emit(text.str());
  return kExitOk;
}

int run_report(const std::string& path, const std::string& format, const OutputOptions& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open '" + path + "'");
  const auto rows = app::parse_kv_report(in);
  out.emit(app::render(rows, app::parse_report_format(format)));
  for (const auto& r : rows) {
    if (r.verdict.classification != app::Classification::Yes) return kExitNotRandom;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Randomness assessment of two-station Bell-test outcome data"};
  cli.set_version_flag("--version", std::string(bellrand::kVersion));
  cli.set_config("--config", "", "Read options from a key=value file (CLI flags override it)");
  cli.config_formatter(std::make_shared<FlatConfig>(&cli));
  cli.require_subcommand(1);

  SourceOptions src;
  OutputOptions out;
  BatteryOptions battery;

  auto* ingest_cmd = cli.add_subcommand("ingest", "Match or parse events and write a canonical coincidence file");
  src.attach(*ingest_cmd);
  out.attach(*ingest_cmd);

  app::AnalysisConfig analysis;
  std::string criteria = "full", qmap = "two-bit", pattern = "11", format = "table";
  auto* analyze_cmd = cli.add_subcommand("analyze", "Complexity, NIST battery and verdict for every outcome series");
  src.attach(*analyze_cmd);
  out.attach(*analyze_cmd);
  battery.attach(*analyze_cmd);
  analyze_cmd->add_option("--k-min", analysis.k_min, "Complexity threshold")->check(CLI::Range(0.0, 1.0));
  analyze_cmd->add_option("--criteria", criteria, "Verdict criteria")->check(CLI::IsMember({"legacy", "full"}));
  analyze_cmd->add_option("--quaternary-map", qmap, "Bit mapping of the combined outcome series")
      ->check(CLI::IsMember({"two-bit", "detector"}));
  analyze_cmd->add_flag("--gap-series", analysis.include_gap_series, "Also analyse binarised time gaps");
  analyze_cmd->add_option("--chsh-pattern", pattern, "Term carrying the minus sign in S")
      ->check(CLI::IsMember({"00", "01", "10", "11"}));
  analyze_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"table", "kv", "csv"}));

  std::string bits_path;
  auto* complexity_cmd = cli.add_subcommand("complexity", "Lempel-Ziv complexity of a bit file");
  complexity_cmd->add_option("bits", bits_path, "Bit file (text or packed)")->required()->check(CLI::ExistingFile);
  out.attach(*complexity_cmd);

  std::string nist_format = "text";
  auto* nist_cmd = cli.add_subcommand("nist", "Run the fifteen-test battery on a bit file");
  nist_cmd->add_option("bits", bits_path, "Bit file (text or packed)")->required()->check(CLI::ExistingFile);
  nist_cmd->add_option("--format", nist_format, "Output format")->check(CLI::IsMember({"text", "kv"}));
  battery.attach(*nist_cmd);
  out.attach(*nist_cmd);

  auto* chsh_cmd = cli.add_subcommand("chsh", "Correlations and CHSH S of a run");
  src.attach(*chsh_cmd);
  out.attach(*chsh_cmd);
  chsh_cmd->add_option("--chsh-pattern", pattern, "Term carrying the minus sign in S")
      ->check(CLI::IsMember({"00", "01", "10", "11"}));

  std::string kv_path, report_format = "table";
  auto* report_cmd = cli.add_subcommand("report", "Re-render a kv report");
  report_cmd->add_option("kv", kv_path, "Report written with --format kv")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--format", report_format, "Report format")->check(CLI::IsMember({"table", "kv", "csv"}));
  out.attach(*report_cmd);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kExitInputError;
  }

  try {
    if (*ingest_cmd) return run_ingest(src, out);
    if (*analyze_cmd) return run_analyze(src, battery, analysis, criteria, qmap, pattern, format, out);
    if (*complexity_cmd) return run_complexity(bits_path, out);
    if (*nist_cmd) return run_nist(bits_path, battery, nist_format, out);
    if (*chsh_cmd) return run_chsh(src, pattern, out);
    if (*report_cmd) return run_report(kv_path, report_format, out);
  } catch (const bellrand::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
