#pragma once

#include "spi/image.hpp"

namespace spi {

// Stabilizing constants and exponents of the structural similarity index.
struct SsimConstants {
  double C1 = 2.55 * 2.55;
  double C2 = 7.65 * 7.65;
  double C3 = 7.65 * 7.65 / 2.0;
  double alpha = 1.0;
  double beta_exp = 1.0;
  double gamma = 1.0;
};

struct SsimBreakdown {
  double ssim = 0.0;
  double luminance = 0.0;
  double contrast = 0.0;
  double structure = 0.0;
};

// 10*log10(255^2 / MSE) in dB; identical images give +infinity.
double psnr(const GrayImage& ref, const GrayImage& test);

// Single-window SSIM over whole-image statistics (population moments).
SsimBreakdown ssim_global(const GrayImage& ref, const GrayImage& test,
                          const SsimConstants& k = {});

}  // namespace spi
