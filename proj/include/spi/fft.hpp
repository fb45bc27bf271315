#pragma once

#include <complex>
#include <span>

#include "spi/hadamard.hpp"

namespace spi {

// In-place radix-2 decimation-in-time FFT (forward, e^{-2*pi*i*k*n/N},
// unnormalized). Length must be a power of two.
void fft_radix2_inplace(std::span<std::complex<double>> a);

// Dominant first-quadrant bin of the zero-padded 2D spectrum of a pattern.
// u is the horizontal frequency index (along pattern columns), v the
// vertical one; both range over 0..pad/2 with DC at (0, 0).
struct SpectralPeak {
  int u = 0;
  int v = 0;
  double magnitude = 0.0;
};

// Pads `p` into the top-left corner of a pad x pad zero array, transforms,
// and scans frequency indices 0..pad/2 in both axes for the maximum
// magnitude. Ties go to the bin with the smallest Euclidean distance from
// DC, then smallest u, then smallest v.
// pad must be a power of two and >= p.side.
SpectralPeak dominant_spectral_peak(const Pattern2D& p, int pad);

// Default transform size for a pattern of side r: 256 while r <= 256,
// otherwise 2r (the fixed 256 only has headroom for r <= 128 patterns).
int default_spectral_pad(int side);

// Euclidean distance sqrt(u^2 + v^2) of the dominant peak; pad = 0 picks
// default_spectral_pad(p.side).
double spectral_peak_distance(const Pattern2D& p, int pad = 0);

}  // namespace spi
