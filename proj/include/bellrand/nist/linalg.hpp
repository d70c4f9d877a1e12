#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bellrand::nist {

/// Rank over GF(2) of a rows x cols matrix (cols <= 64) stored one row per
/// word, column j in bit j. Gaussian elimination.
std::size_t gf2_rank(std::vector<std::uint64_t> rows, std::size_t cols);

/// Fills a rows x cols matrix row by row from consecutive bits.
std::vector<std::uint64_t> gf2_matrix_from_bits(std::span<const std::uint8_t> bits, std::size_t rows,
                                                std::size_t cols);

/// Probability that a uniformly random rows x cols GF(2) matrix has rank r.
double gf2_rank_probability(std::size_t r, std::size_t rows, std::size_t cols);

/// Length of the shortest LFSR generating the sequence (Berlekamp-Massey).
std::size_t linear_complexity(std::span<const std::uint8_t> bits);

}  // namespace bellrand::nist
