#include "spi/metrics.hpp"

#include <cmath>
#include <limits>

#include "spi/errors.hpp"

namespace spi {

double psnr(const GrayImage& ref, const GrayImage& test) {
  if (ref.side != test.side) throw ShapeError("psnr: image dimensions differ");
  double mse = 0.0;
  for (size_t q = 0; q < ref.pix.size(); ++q) {
    const double d = ref.pix[q] - test.pix[q];
    mse += d * d;
  }
  mse /= static_cast<double>(ref.pix.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

SsimBreakdown ssim_global(const GrayImage& ref, const GrayImage& test, const SsimConstants& k) {
  if (ref.side != test.side) throw ShapeError("ssim_global: image dimensions differ");
  const double n = static_cast<double>(ref.pix.size());
  double mu_r = 0.0, mu_t = 0.0;
  for (size_t q = 0; q < ref.pix.size(); ++q) {
    mu_r += ref.pix[q];
    mu_t += test.pix[q];
  }
  mu_r /= n;
  mu_t /= n;
  double var_r = 0.0, var_t = 0.0, cov = 0.0;
  for (size_t q = 0; q < ref.pix.size(); ++q) {
    const double dr = ref.pix[q] - mu_r;
    const double dt = test.pix[q] - mu_t;
    var_r += dr * dr;
    var_t += dt * dt;
    cov += dr * dt;
  }
  var_r /= n;  // population moments
  var_t /= n;
  cov /= n;
  const double sd_r = std::sqrt(var_r);
  const double sd_t = std::sqrt(var_t);

  SsimBreakdown out;
  out.luminance = (2.0 * mu_t * mu_r + k.C1) / (mu_t * mu_t + mu_r * mu_r + k.C1);
  out.contrast = (2.0 * sd_t * sd_r + k.C2) / (var_t + var_r + k.C2);
  out.structure = (cov + k.C3) / (sd_t * sd_r + k.C3);
  out.ssim = std::pow(out.luminance, k.alpha) * std::pow(out.contrast, k.beta_exp) *
             std::pow(out.structure, k.gamma);
  return out;
}

}  // namespace spi
