#pragma once

#include <string>

#include "spi/image.hpp"

namespace spi {

// Decode a PNG or PGM file (chosen by magic bytes) to grayscale at native
// resolution. Color inputs are reduced with the standard luma weights
// 0.299 R + 0.587 G + 0.114 B; 16-bit samples are rescaled to [0, 255].
GrayImage load_gray_image(const std::string& path);

// Pixel-center-aligned bilinear resize to side x side. A same-size resize
// is an exact pass-through.
GrayImage resize_bilinear(const GrayImage& img, int side);

// load + luma + bilinear resize, the acquisition-side normalization.
GrayImage load_and_normalize(const std::string& path, int side);

// 8-bit grayscale outputs; pixels are clamped and rounded.
void save_png_gray(const GrayImage& img, const std::string& path);
void save_pgm(const GrayImage& img, const std::string& path);

}  // namespace spi
