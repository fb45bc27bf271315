#include "spi/image.hpp"

#include <algorithm>

#include "spi/errors.hpp"

namespace spi {

std::vector<double> flatten_image(const GrayImage& img) {
  const int r = img.side;
  std::vector<double> out(static_cast<size_t>(r) * r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      out[static_cast<size_t>(j) * r + i] = img.at(i, j);
  return out;
}

GrayImage unflatten_image(std::span<const double> v, int side) {
  if (v.size() != static_cast<size_t>(side) * side)
    throw ShapeError("unflatten_image: vector length does not match side*side");
  GrayImage img(side);
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i)
      img.at(i, j) = v[static_cast<size_t>(j) * side + i];
  return img;
}

void clamp_pixels(GrayImage& img, double lo, double hi) {
  for (double& p : img.pix) p = std::clamp(p, lo, hi);
}

}  // namespace spi
