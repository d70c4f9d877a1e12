#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace bellrand::complexity {

struct ComplexityReport {
  std::size_t n = 0;
  std::size_t phrase_count = 0;  // c(n)
  double normalized = 0.0;       // K = c(n) / b(n)
  double limit_used = 0.0;       // b(n) = n / log2 n
};

/// Lempel-Ziv (1976) exhaustive-history phrase count. A phrase grows while it
/// can be copied from a start position inside the preceding text (overlap
/// allowed); the first symbol that breaks the copy closes it. A trailing
/// incomplete phrase counts as one. Linear time via a suffix automaton with
/// first-occurrence end positions. Throws EmptySeries on empty input.
std::size_t lz76_phrase_count(std::span<const std::uint8_t> bits);

/// Quadratic Kaspar-Schuster scan; same result, kept as the reference path.
std::size_t lz76_phrase_count_reference(std::span<const std::uint8_t> bits);

/// K = c(n) * log2(n) / n. Throws TooShort for n < 2.
ComplexityReport normalized_complexity(std::span<const std::uint8_t> bits);

}  // namespace bellrand::complexity
