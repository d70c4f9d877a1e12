#pragma once

// Per-test statistics. Each returns p-values and params; status is assigned by
// run_test. A result with empty p_values is NotApplicable.

#include <cstdint>
#include <span>
#include <string>

#include "bellrand/nist/battery.hpp"

namespace bellrand::nist::detail {

using Bits = std::span<const std::uint8_t>;

TestResult frequency(Bits bits);
TestResult block_frequency(Bits bits, std::size_t m);
TestResult runs(Bits bits);
TestResult longest_run(Bits bits);
TestResult rank(Bits bits);
TestResult spectral(Bits bits);
TestResult non_overlapping_template(Bits bits, std::size_t m);
TestResult overlapping_template(Bits bits, std::size_t m);
TestResult universal(Bits bits);
TestResult linear_complexity_test(Bits bits, std::size_t m);
TestResult serial(Bits bits, std::size_t m);
TestResult approximate_entropy(Bits bits, std::size_t m);
TestResult cumulative_sums(Bits bits);
TestResult random_excursions(Bits bits);
TestResult random_excursions_variant(Bits bits);

/// Aperiodic m-bit templates in ascending numeric order, MSB = first bit.
std::vector<std::uint32_t> aperiodic_templates(std::size_t m);

/// Marks the result not applicable with a reason.
TestResult not_applicable(TestResult r, std::string reason);

std::string fmt(double v);

}  // namespace bellrand::nist::detail
