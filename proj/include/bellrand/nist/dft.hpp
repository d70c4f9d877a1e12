#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bellrand::nist {

/// |X_k| for k in [0, n/2) of the DFT of the +/-1 mapped sequence.
std::vector<double> half_spectrum_moduli(std::span<const std::uint8_t> bits);

}  // namespace bellrand::nist
