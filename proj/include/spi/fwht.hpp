#pragma once

#include <span>

namespace spi {

// In-place fast Walsh-Hadamard transform in Sylvester (natural) order:
// after the call, data[i] = dot(H_N row i, input), N = data.size().
// N must be a power of two. Unnormalized; H*H = N*I, so applying it twice
// multiplies the input by N.
void fwht_inplace(std::span<double> data);

}  // namespace spi
