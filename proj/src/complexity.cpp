#include "bellrand/complexity.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "bellrand/error.hpp"

namespace bellrand::complexity {

namespace {

// Suffix automaton over {0,1}; first_end is the end index of the first
// occurrence of the strings in a state.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::span<const std::uint8_t> s) {
    states_.reserve(2 * s.size() + 1);
    states_.push_back({});
    for (std::size_t i = 0; i < s.size(); ++i) extend(s[i] & 1, static_cast<std::int64_t>(i));
  }

  std::int32_t next(std::int32_t state, std::uint8_t c) const { return states_[state].next[c]; }
  std::int64_t first_end(std::int32_t state) const { return states_[state].first_end; }

 private:
  struct State {
    std::int64_t len = 0;
    std::int32_t link = -1;
    std::array<std::int32_t, 2> next{-1, -1};
    std::int64_t first_end = -1;
  };

  void extend(std::uint8_t c, std::int64_t pos) {
    const auto cur = static_cast<std::int32_t>(states_.size());
    states_.push_back({states_[last_].len + 1, -1, {-1, -1}, pos});
    std::int32_t p = last_;
    while (p != -1 && states_[p].next[c] == -1) {
      states_[p].next[c] = cur;
      p = states_[p].link;
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      const std::int32_t q = states_[p].next[c];
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const auto clone = static_cast<std::int32_t>(states_.size());
        State cl = states_[q];
        cl.len = states_[p].len + 1;
        states_.push_back(cl);
        while (p != -1 && states_[p].next[c] == q) {
          states_[p].next[c] = clone;
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

  std::vector<State> states_;
  std::int32_t last_ = 0;
};

}  // namespace

std::size_t lz76_phrase_count(std::span<const std::uint8_t> bits) {
  const auto n = static_cast<std::int64_t>(bits.size());
  if (n == 0) throw Error(ErrorKind::EmptySeries, "phrase count of an empty series");
  SuffixAutomaton sam(bits);
  std::size_t count = 0;
  std::int64_t start = 0;
  while (start < n) {
    // The candidate s[start, start+len) is reproducible iff it occurs starting
    // before `start`, i.e. its first occurrence ends before start+len-1.
    std::int32_t state = 0;
    std::int64_t len = 0;
    while (true) {
      if (start + len == n) {
        ++count;  // trailing incomplete phrase
        return count;
      }
      state = sam.next(state, bits[start + len] & 1);
      ++len;
      if (sam.first_end(state) >= start + len - 1) break;
    }
    ++count;
    start += len;
  }
  return count;
}

std::size_t lz76_phrase_count_reference(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  if (n == 0) throw Error(ErrorKind::EmptySeries, "phrase count of an empty series");
  if (n == 1) return 1;
  std::size_t c = 1, l = 1, i = 0, k = 1, k_max = 1;
  while (true) {
    if (s[i + k - 1] == s[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      if (k > k_max) k_max = k;
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

ComplexityReport normalized_complexity(std::span<const std::uint8_t> bits) {
  if (bits.size() < 2) {
    throw Error(ErrorKind::TooShort, "normalized complexity needs n >= 2, got " + std::to_string(bits.size()));
  }
  ComplexityReport r;
  r.n = bits.size();
  r.phrase_count = lz76_phrase_count(bits);
  const double n = static_cast<double>(r.n);
  r.limit_used = n / std::log2(n);
  r.normalized = static_cast<double>(r.phrase_count) / r.limit_used;
  return r;
}

}  // namespace bellrand::complexity
