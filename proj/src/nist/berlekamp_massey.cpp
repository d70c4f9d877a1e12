#include <vector>

#include "bellrand/nist/linalg.hpp"

namespace bellrand::nist {

std::size_t linear_complexity(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  std::vector<std::uint8_t> c(n + 1, 0), b(n + 1, 0), t(n + 1, 0);
  c[0] = b[0] = 1;
  std::size_t L = 0;
  std::ptrdiff_t m = -1;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t d = s[i] & 1;
    for (std::size_t j = 1; j <= L; ++j) d ^= c[j] & s[i - j];
    if (!d) continue;
    t = c;
    const std::size_t shift = i - static_cast<std::size_t>(m);
    for (std::size_t j = 0; j + shift <= n; ++j) c[j + shift] ^= b[j];
    if (2 * L <= i) {
      L = i + 1 - L;
      m = static_cast<std::ptrdiff_t>(i);
      b.swap(t);
    }
  }
  return L;
}

}  // namespace bellrand::nist
