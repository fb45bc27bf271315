#include "spi/fft.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "spi/errors.hpp"

namespace spi {

void fft_radix2_inplace(std::span<std::complex<double>> a) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ShapeError("fft_radix2_inplace: length must be a power of two");
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> t = a[i + j + len / 2] * w;
        a[i + j] = u + t;
        a[i + j + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
}

int default_spectral_pad(int side) { return side <= 256 ? 256 : 2 * side; }

SpectralPeak dominant_spectral_peak(const Pattern2D& p, int pad) {
  const int r = p.side;
  if (pad < r) throw ConfigError("dominant_spectral_peak: pad must be >= pattern side");
  if (pad <= 0 || (pad & (pad - 1)) != 0)
    throw ConfigError("dominant_spectral_peak: pad must be a power of two");

  const int half = pad / 2;
  // Row pass: only the first r rows of the padded array are nonzero.
  // Keep only columns 0..pad/2; the scan never looks past them.
  std::vector<std::complex<double>> rowbuf(static_cast<size_t>(pad));
  std::vector<std::complex<double>> cols(static_cast<size_t>(half + 1) * r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) rowbuf[static_cast<size_t>(j)] = {static_cast<double>(p.at(i, j)), 0.0};
    for (int j = r; j < pad; ++j) rowbuf[static_cast<size_t>(j)] = {0.0, 0.0};
    fft_radix2_inplace(rowbuf);
    for (int u = 0; u <= half; ++u) cols[static_cast<size_t>(u) * r + i] = rowbuf[static_cast<size_t>(u)];
  }

  SpectralPeak best;
  double best_mag2 = -1.0;
  std::int64_t best_d2 = 0;
  std::vector<std::complex<double>> colbuf(static_cast<size_t>(pad));
  for (int u = 0; u <= half; ++u) {
    for (int i = 0; i < r; ++i) colbuf[static_cast<size_t>(i)] = cols[static_cast<size_t>(u) * r + i];
    for (int i = r; i < pad; ++i) colbuf[static_cast<size_t>(i)] = {0.0, 0.0};
    fft_radix2_inplace(colbuf);
    for (int v = 0; v <= half; ++v) {
      const double mag2 = std::norm(colbuf[static_cast<size_t>(v)]);
      const std::int64_t d2 = static_cast<std::int64_t>(u) * u + static_cast<std::int64_t>(v) * v;
      bool take = false;
      if (mag2 > best_mag2) {
        take = true;
      } else if (mag2 == best_mag2) {
        if (d2 < best_d2) take = true;
        else if (d2 == best_d2 && (u < best.u || (u == best.u && v < best.v))) take = true;
      }
      if (take) {
        best = {u, v, std::sqrt(mag2)};
        best_mag2 = mag2;
        best_d2 = d2;
      }
    }
  }
  return best;
}

double spectral_peak_distance(const Pattern2D& p, int pad) {
  if (pad == 0) pad = default_spectral_pad(p.side);
  const SpectralPeak peak = dominant_spectral_peak(p, pad);
  return std::sqrt(static_cast<double>(static_cast<std::int64_t>(peak.u) * peak.u +
                                       static_cast<std::int64_t>(peak.v) * peak.v));
}

}  // namespace spi
