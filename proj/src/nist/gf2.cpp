#include <cmath>
#include <utility>

#include "bellrand/error.hpp"
#include "bellrand/nist/linalg.hpp"

namespace bellrand::nist {

std::size_t gf2_rank(std::vector<std::uint64_t> rows, std::size_t cols) {
  if (cols > 64) throw Error(ErrorKind::InvalidParams, "gf2_rank supports at most 64 columns");
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    const std::uint64_t mask = std::uint64_t{1} << col;
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::uint64_t> gf2_matrix_from_bits(std::span<const std::uint8_t> bits, std::size_t rows,
                                                std::size_t cols) {
  if (bits.size() < rows * cols) throw Error(ErrorKind::InvalidParams, "not enough bits for matrix");
  std::vector<std::uint64_t> m(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (bits[r * cols + c] & 1) m[r] |= std::uint64_t{1} << c;
    }
  }
  return m;
}

double gf2_rank_probability(std::size_t r, std::size_t rows, std::size_t cols) {
  if (r > std::min(rows, cols)) return 0.0;
  const double m = static_cast<double>(rows);
  const double q = static_cast<double>(cols);
  const double rr = static_cast<double>(r);
  double log2p = rr * (q + m - rr) - m * q;
  double prod = 1.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double di = static_cast<double>(i);
    prod *= (1.0 - std::exp2(di - q)) * (1.0 - std::exp2(di - m)) / (1.0 - std::exp2(di - rr));
  }
  return std::exp2(log2p) * prod;
}

}  // namespace bellrand::nist
