#pragma once

#include <cstddef>

#include "sgrass/linalg.hpp"

namespace sgrass {

bool is_power_of_two(std::size_t n);

/// Unitary (1/sqrt(N) both directions) FFT. Length must be a power of two;
/// throws NonPowerOfTwoLength otherwise.
CVector fft(const CVector& x, bool inverse = false);

/// Unitary DFT of any length >= 1. Same sign and scaling conventions as fft().
CVector dft(const CVector& x, bool inverse = false);

}  // namespace sgrass
