#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellrand/ingest.hpp"

namespace bellrand::series {

using ingest::Station;

/// Quaternary outcome column of one station: symbol = 2 * detector + setting.
struct SymbolSeries {
  std::string run;
  Station station = Station::Alice;
  std::vector<std::uint8_t> symbols;

  std::size_t size() const { return symbols.size(); }
};

struct BinarySeries {
  std::string label;
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::span<const std::uint8_t> view() const { return bits; }
};

/// Exact non-negative rational.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct GapSeries {
  std::string run;
  std::vector<std::uint64_t> gaps;
  Rational mean;  // sum(gaps) / |gaps|, unreduced
};

enum class QuaternaryMap {
  TwoBitMsbFirst,   // (detector, setting) per symbol
  DetectorBitOnly,  // detector bit only
};

std::string_view to_string(QuaternaryMap m);
/// Accepts "two-bit" / "detector"; throws InvalidParams otherwise.
QuaternaryMap parse_quaternary_map(std::string_view name);

constexpr std::uint8_t encode_outcome(std::uint8_t setting, std::uint8_t detector) {
  return static_cast<std::uint8_t>(2 * (detector & 1) + (setting & 1));
}
constexpr std::uint8_t symbol_detector(std::uint8_t symbol) { return symbol >> 1; }
constexpr std::uint8_t symbol_setting(std::uint8_t symbol) { return symbol & 1; }

SymbolSeries extract_symbol_series(const ingest::RunDataset& run, Station station);

/// Detector bits of the symbols measured with setting 0 and setting 1.
std::pair<BinarySeries, BinarySeries> split_by_setting(const SymbolSeries& series);

BinarySeries symbols_to_bits(const SymbolSeries& series, QuaternaryMap mapping);

/// Throws TooShort with fewer than two coincidences.
GapSeries time_difference_series(const ingest::RunDataset& run);

/// Bit i is 1 iff gaps[i] is strictly above the exact mean.
BinarySeries binarize_by_mean(const GapSeries& gaps);

// --- interchange formats ------------------------------------------------------

/// One element per line, LF terminated.
void write_text(std::ostream& out, std::span<const std::uint8_t> elements);
/// Reads 0/1 characters (whitespace and `#` comment lines ignored).
BinarySeries read_text_bits(std::istream& in, std::string label = {});

/// Packed layout: magic "BRB1", 8-byte little-endian bit count, then the bits
/// MSB first, last byte zero padded.
void write_packed(std::ostream& out, std::span<const std::uint8_t> bits);
BinarySeries read_packed(std::istream& in, std::string label = {});

/// Reads either format, sniffing the packed magic.
BinarySeries read_bits_file(const std::string& path);

}  // namespace bellrand::series
