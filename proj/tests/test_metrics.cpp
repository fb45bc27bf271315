#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "spi/errors.hpp"
#include "spi/metrics.hpp"

#include "oracles.hpp"

TEST_CASE("psnr endpoints") {
  const spi::GrayImage a = oracle::random_image(8, 1);
  CHECK(std::isinf(spi::psnr(a, a)));
  CHECK(spi::psnr(a, a) > 0);

  const spi::GrayImage black(8, 0.0);
  const spi::GrayImage white(8, 255.0);
  CHECK(spi::psnr(black, white) == doctest::Approx(0.0).epsilon(1e-12));

  const spi::GrayImage dim(8, 25.5);
  CHECK(spi::psnr(black, dim) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("psnr symmetry and shape checking") {
  const spi::GrayImage a = oracle::random_image(8, 2);
  const spi::GrayImage b = oracle::random_image(8, 3);
  CHECK(spi::psnr(a, b) == spi::psnr(b, a));
  const spi::GrayImage small(4, 0.0);
  CHECK_THROWS_AS(spi::psnr(a, small), spi::ShapeError);
  CHECK_THROWS_AS(spi::ssim_global(a, small), spi::ShapeError);
}

TEST_CASE("ssim of identical images is exactly one") {
  const spi::GrayImage a = oracle::random_image(8, 4);
  const spi::SsimBreakdown s = spi::ssim_global(a, a);
  CHECK(s.ssim == 1.0);
  CHECK(s.luminance == 1.0);
  CHECK(s.contrast == 1.0);
  CHECK(s.structure == 1.0);
}

TEST_CASE("constant shift keeps contrast and structure at one") {
  const spi::GrayImage a = oracle::random_image(8, 5, 0.0, 200.0);
  spi::GrayImage b = a;
  for (double& v : b.pix) v += 50.0;  // no clipping applied
  const spi::SsimBreakdown s = spi::ssim_global(a, b);
  CHECK(s.contrast == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.structure == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.luminance < 1.0);
}

TEST_CASE("ssim matches the long-double formula oracle to 1e-12") {
  for (int trial = 0; trial < 50; ++trial) {
    const spi::GrayImage a = oracle::random_image(8, 100 + trial);
    spi::GrayImage b = a;
    spi::Xoshiro256pp rng(200 + trial);
    for (double& v : b.pix) v = std::clamp(v + 60.0 * (rng.uniform01() - 0.5), 0.0, 255.0);
    const spi::SsimBreakdown got = spi::ssim_global(a, b);
    const spi::SsimBreakdown want = oracle::ssim_direct(a, b);
    CHECK(got.ssim == doctest::Approx(want.ssim).epsilon(1e-12));
    CHECK(got.luminance == doctest::Approx(want.luminance).epsilon(1e-12));
    CHECK(got.contrast == doctest::Approx(want.contrast).epsilon(1e-12));
    CHECK(got.structure == doctest::Approx(want.structure).epsilon(1e-12));
  }
}

TEST_CASE("ssim symmetry and range on reconstruction-like pairs") {
  for (int trial = 0; trial < 200; ++trial) {
    const spi::GrayImage a = oracle::random_image(8, 400 + trial);
    spi::GrayImage b = a;
    spi::Xoshiro256pp rng(600 + trial);
    for (double& v : b.pix) v = std::clamp(v + 80.0 * (rng.uniform01() - 0.5), 0.0, 255.0);

    const spi::SsimBreakdown ab = spi::ssim_global(a, b);
    const spi::SsimBreakdown ba = spi::ssim_global(b, a);
    CHECK(ab.ssim == doctest::Approx(ba.ssim).epsilon(1e-14));

    for (double factor : {ab.ssim, ab.luminance, ab.contrast, ab.structure}) {
      CHECK(factor > 0.0);
      CHECK(factor <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("custom exponents feed the combined index") {
  const spi::GrayImage a = oracle::random_image(8, 900);
  spi::GrayImage b = a;
  for (double& v : b.pix) v = std::clamp(v + 20.0, 0.0, 255.0);
  spi::SsimConstants k;
  k.alpha = 2.0;
  const spi::SsimBreakdown s = spi::ssim_global(a, b, k);
  const spi::SsimBreakdown base = spi::ssim_global(a, b);
  CHECK(s.ssim == doctest::Approx(base.luminance * base.ssim).epsilon(1e-12));
}
