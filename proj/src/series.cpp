#include "bellrand/series.hpp"

#include "bellrand/error.hpp"

namespace bellrand::series {

namespace {
__extension__ using u128 = unsigned __int128;
}

std::string_view to_string(QuaternaryMap m) {
  return m == QuaternaryMap::TwoBitMsbFirst ? "two-bit" : "detector";
}

QuaternaryMap parse_quaternary_map(std::string_view name) {
  if (name == "two-bit") return QuaternaryMap::TwoBitMsbFirst;
  if (name == "detector") return QuaternaryMap::DetectorBitOnly;
  throw Error(ErrorKind::InvalidParams, "unknown quaternary map '" + std::string(name) + "' (expected two-bit|detector)");
}

SymbolSeries extract_symbol_series(const ingest::RunDataset& run, Station station) {
  SymbolSeries out;
  out.run = run.name;
  out.station = station;
  out.symbols.reserve(run.size());
  for (const auto& c : run.coincidences) {
    const auto& ev = station == Station::Alice ? c.alice : c.bob;
    out.symbols.push_back(encode_outcome(ev.setting, ev.detector));
  }
  return out;
}

std::pair<BinarySeries, BinarySeries> split_by_setting(const SymbolSeries& series) {
  std::pair<BinarySeries, BinarySeries> out;
  const std::string base = series.run + ", " + std::string(ingest::to_string(series.station));
  out.first.label = base + ", setting = 0";
  out.second.label = base + ", setting = 1";
  for (auto sym : series.symbols) {
    (symbol_setting(sym) == 0 ? out.first : out.second).bits.push_back(symbol_detector(sym));
  }
  return out;
}

BinarySeries symbols_to_bits(const SymbolSeries& series, QuaternaryMap mapping) {
  BinarySeries out;
  out.label = series.run + ", all " + std::string(ingest::to_string(series.station)) + " outcomes";
  if (mapping == QuaternaryMap::TwoBitMsbFirst) {
    out.bits.reserve(2 * series.size());
    for (auto sym : series.symbols) {
      out.bits.push_back(symbol_detector(sym));
      out.bits.push_back(symbol_setting(sym));
    }
  } else {
    out.bits.reserve(series.size());
    for (auto sym : series.symbols) out.bits.push_back(symbol_detector(sym));
  }
  return out;
}

GapSeries time_difference_series(const ingest::RunDataset& run) {
  if (run.size() < 2) {
    throw Error(ErrorKind::TooShort, "time-difference series needs at least 2 coincidences, got " +
                                         std::to_string(run.size()));
  }
  GapSeries out;
  out.run = run.name;
  out.gaps.reserve(run.size() - 1);
  for (std::size_t i = 1; i < run.size(); ++i) {
    const auto prev = run.coincidences[i - 1].coincidence_time;
    const auto cur = run.coincidences[i].coincidence_time;
    if (cur <= prev) throw Error(ErrorKind::InvalidParams, "coincidence times not strictly increasing");
    out.gaps.push_back(cur - prev);
  }
  out.mean = {run.coincidences.back().coincidence_time - run.coincidences.front().coincidence_time,
              out.gaps.size()};
  return out;
}

BinarySeries binarize_by_mean(const GapSeries& gaps) {
  if (gaps.gaps.empty()) throw Error(ErrorKind::TooShort, "empty gap series");
  BinarySeries out;
  out.label = gaps.run + ", time gaps";
  out.bits.reserve(gaps.gaps.size());
  for (auto g : gaps.gaps) {
    // g > num/den  <=>  g*den > num
    out.bits.push_back(static_cast<u128>(g) * gaps.mean.den > gaps.mean.num ? 1 : 0);
  }
  return out;
}

}  // namespace bellrand::series
