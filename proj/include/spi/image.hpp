#pragma once

#include <span>
#include <vector>

namespace spi {

// Square grayscale image, intensities nominally in [0, 255].
// Storage is row-major; the vectorized form used for sensing is
// column-major (see flatten_image).
struct GrayImage {
  int side = 0;
  std::vector<double> pix;  // side*side, row-major

  GrayImage() = default;
  GrayImage(int side_, double fill = 0.0)
      : side(side_), pix(static_cast<size_t>(side_) * side_, fill) {}

  double& at(int i, int j) { return pix[static_cast<size_t>(i) * side + j]; }
  double at(int i, int j) const { return pix[static_cast<size_t>(i) * side + j]; }
  size_t size() const { return pix.size(); }
};

// Column-major vectorization: out[j*r + i] = img(i, j).
// This is the layout every sensing/reconstruction routine assumes.
std::vector<double> flatten_image(const GrayImage& img);

// Inverse of flatten_image.
GrayImage unflatten_image(std::span<const double> v, int side);

// Clamp all pixels into [lo, hi].
void clamp_pixels(GrayImage& img, double lo = 0.0, double hi = 255.0);

}  // namespace spi
