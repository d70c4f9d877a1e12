#include <array>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "bellrand/error.hpp"
#include "bellrand/series.hpp"

namespace bellrand::series {

namespace {
constexpr std::array<char, 4> kMagic{'B', 'R', 'B', '1'};
}

void write_text(std::ostream& out, std::span<const std::uint8_t> elements) {
  for (auto e : elements) out << static_cast<int>(e) << '\n';
}

BinarySeries read_text_bits(std::istream& in, std::string label) {
  if (!in) throw Error(ErrorKind::UnreadableSource, "stream is not readable");
  BinarySeries out;
  out.label = std::move(label);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.front() == '#') continue;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        out.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
      } else if (ch != ' ' && ch != '\t' && ch != '\r') {
        throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(lineno) + ": unexpected character", lineno);
      }
    }
  }
  return out;
}

void write_packed(std::ostream& out, std::span<const std::uint8_t> bits) {
  out.write(kMagic.data(), kMagic.size());
  std::uint64_t n = bits.size();
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((n >> (8 * i)) & 0xFF));
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    byte = static_cast<std::uint8_t>((byte << 1) | (bits[i] & 1));
    if (i % 8 == 7) {
      out.put(static_cast<char>(byte));
      byte = 0;
    }
  }
  if (auto rem = bits.size() % 8; rem != 0) out.put(static_cast<char>(byte << (8 - rem)));
}

BinarySeries read_packed(std::istream& in, std::string label) {
  if (!in) throw Error(ErrorKind::UnreadableSource, "stream is not readable");
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(ErrorKind::MalformedRecord, "missing packed-bit magic");
  std::array<unsigned char, 8> len{};
  in.read(reinterpret_cast<char*>(len.data()), len.size());
  if (!in) throw Error(ErrorKind::MalformedRecord, "truncated packed-bit header");
  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i) n = (n << 8) | len[i];
  std::string payload{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (payload.size() != (n + 7) / 8) {
    throw Error(ErrorKind::MalformedRecord, "packed payload has " + std::to_string(payload.size()) +
                                                " bytes, header implies " + std::to_string((n + 7) / 8));
  }
  BinarySeries out;
  out.label = std::move(label);
  out.bits.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.bits[i] = (static_cast<unsigned char>(payload[i / 8]) >> (7 - i % 8)) & 1;
  }
  return out;
}

BinarySeries read_bits_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open '" + path + "'");
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool packed = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return packed ? read_packed(in, path) : read_text_bits(in, path);
}

}  // namespace bellrand::series
