#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "spi/errors.hpp"
#include "spi/metrics.hpp"
#include "spi/sampling.hpp"
#include "spi/tv_solver.hpp"

#include "oracles.hpp"

using spi::build_hadamard;
using spi::HadamardMatrix;

namespace {

spi::GrayImage square_phantom(int side, int box, double bg, double fg) {
  spi::GrayImage img(side, bg);
  const int lo = (side - box) / 2, hi = lo + box;
  for (int i = lo; i < hi; ++i)
    for (int j = lo; j < hi; ++j) img.at(i, j) = fg;
  return img;
}

std::vector<std::int64_t> all_rows(std::int64_t n) {
  std::vector<std::int64_t> rows(static_cast<size_t>(n));
  std::iota(rows.begin(), rows.end(), std::int64_t{0});
  return rows;
}

}  // namespace

TEST_CASE("forward differences: constant and step images") {
  const int r = 8;
  std::vector<double> x(static_cast<size_t>(r) * r, 5.0), gh(x.size()), gv(x.size());
  spi::forward_diff(x, r, gh, gv);
  for (double v : gh) CHECK(v == 0.0);
  for (double v : gv) CHECK(v == 0.0);

  // Left half 0, right half 255: only the horizontal component on the step
  // column is nonzero.
  spi::GrayImage step(r, 0.0);
  for (int i = 0; i < r; ++i)
    for (int j = r / 2; j < r; ++j) step.at(i, j) = 255.0;
  spi::GrayImage ih, iv;
  spi::discrete_gradient(step, ih, iv);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      CHECK(iv.at(i, j) == 0.0);
      CHECK(ih.at(i, j) == (j == r / 2 - 1 ? 255.0 : 0.0));
    }
}

TEST_CASE("gradient adjoint identity at r = 8") {
  const int r = 8;
  const size_t n = static_cast<size_t>(r) * r;
  spi::Xoshiro256pp rng(2024);
  std::vector<double> x(n), wh(n), wv(n), gh(n), gv(n), back(n);
  for (auto& v : x) v = rng.uniform01() * 255.0;
  for (auto& v : wh) v = rng.uniform01() - 0.5;
  for (auto& v : wv) v = rng.uniform01() - 0.5;

  spi::forward_diff(x, r, gh, gv);
  double lhs = 0.0;
  for (size_t q = 0; q < n; ++q) lhs += gh[q] * wh[q] + gv[q] * wv[q];
  spi::forward_diff_adjoint(wh, wv, r, back);
  double rhs = 0.0;
  for (size_t q = 0; q < n; ++q) rhs += x[q] * back[q];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("isotropic shrinkage matches the scalar formula at 1e-12") {
  spi::Xoshiro256pp rng(515);
  const size_t n = 500;
  std::vector<double> zh(n), zv(n), wh(n), wv(n);
  for (size_t q = 0; q < n; ++q) {
    zh[q] = 4.0 * (rng.uniform01() - 0.5);
    zv[q] = 4.0 * (rng.uniform01() - 0.5);
  }
  const double beta = 32.0;
  spi::shrink_isotropic(zh, zv, 1.0 / beta, wh, wv);
  for (size_t q = 0; q < n; ++q) {
    const double nrm = std::sqrt(zh[q] * zh[q] + zv[q] * zv[q]);
    const double f = std::max(nrm - 1.0 / beta, 0.0);
    const double eh = nrm > 0.0 ? f * zh[q] / nrm : 0.0;
    const double ev = nrm > 0.0 ? f * zv[q] / nrm : 0.0;
    CHECK(wh[q] == doctest::Approx(eh).epsilon(1e-12));
    CHECK(wv[q] == doctest::Approx(ev).epsilon(1e-12));
    // Minimizer property: value at w no worse than small perturbations.
    const auto obj = [&](double ah, double av) {
      return std::sqrt(ah * ah + av * av) +
             beta / 2.0 * ((ah - zh[q]) * (ah - zh[q]) + (av - zv[q]) * (av - zv[q]));
    };
    const double at_w = obj(wh[q], wv[q]);
    for (double d : {-1e-4, 1e-4}) {
      CHECK(at_w <= obj(wh[q] + d, wv[q]) + 1e-12);
      CHECK(at_w <= obj(wh[q], wv[q] + d) + 1e-12);
    }
  }
}

TEST_CASE("anisotropic shrinkage soft-thresholds each component") {
  const std::vector<double> zh = {0.5, -0.01, 0.0};
  const std::vector<double> zv = {-0.2, 0.04, 0.0};
  std::vector<double> wh(3), wv(3);
  spi::shrink_anisotropic(zh, zv, 0.03125, wh, wv);
  CHECK(wh[0] == doctest::Approx(0.46875));
  CHECK(wv[0] == doctest::Approx(-0.16875));
  CHECK(wh[1] == 0.0);
  CHECK(wv[1] == doctest::Approx(0.00875));
  CHECK(wh[2] == 0.0);
  CHECK(wv[2] == 0.0);
}

TEST_CASE("x-subproblem gradient matches central differences at r = 8") {
  const int r = 8;
  const HadamardMatrix h = build_hadamard(6);
  const size_t n = 64;
  spi::Xoshiro256pp rng(11);
  std::vector<std::int64_t> rows;
  for (std::int64_t i = 0; i < 64; i += 3) rows.push_back(i);  // arbitrary subset
  const spi::WalshSensor sensor(h, rows);

  std::vector<double> wh(n), wv(n), nuh(n), nuv(n), lam(rows.size()), b(rows.size()), x(n);
  for (auto& v : wh) v = rng.uniform01() - 0.5;
  for (auto& v : wv) v = rng.uniform01() - 0.5;
  for (auto& v : nuh) v = rng.uniform01() - 0.5;
  for (auto& v : nuv) v = rng.uniform01() - 0.5;
  for (auto& v : lam) v = rng.uniform01() - 0.5;
  for (auto& v : b) v = 100.0 * rng.uniform01();
  for (auto& v : x) v = 255.0 * rng.uniform01();

  const spi::TvQuadraticModel model(sensor, r, 256.0, 32.0, wh, wv, nuh, nuv, lam, b);
  std::vector<double> g(n);
  model.gradient(x, g);

  const double eps = 1e-3;
  for (size_t q = 0; q < n; q += 5) {
    std::vector<double> xp = x, xm = x;
    xp[q] += eps;
    xm[q] -= eps;
    const double fd = (model.value(xp) - model.value(xm)) / (2.0 * eps);
    CHECK(g[q] == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("sensor applies are mutually adjoint") {
  const HadamardMatrix h = build_hadamard(6);
  std::vector<std::int64_t> rows = {0, 5, 17, 40, 63};
  const spi::WalshSensor sensor(h, rows);
  spi::Xoshiro256pp rng(77);
  std::vector<double> x(64), u(rows.size()), ax(rows.size()), atu(64);
  for (auto& v : x) v = rng.uniform01();
  for (auto& v : u) v = rng.uniform01();
  sensor.apply(x, ax);
  sensor.apply_adjoint(u, atu);
  double lhs = 0.0, rhs = 0.0;
  for (size_t m = 0; m < u.size(); ++m) lhs += ax[m] * u[m];
  for (size_t q = 0; q < x.size(); ++q) rhs += x[q] * atu[q];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("full sampling with no noise recovers the scene") {
  const HadamardMatrix h = build_hadamard(8);  // r = 16
  const spi::GrayImage img = oracle::random_image(16, 321);
  const spi::MeasurementSet ms = spi::acquire(img, all_rows(256), h, 0.0, 1);
  const spi::ReconstructionResult rec = spi::reconstruct(ms, h, {});
  CHECK(spi::psnr(img, rec.image) > 60.0);
}

TEST_CASE("a single zero DC measurement yields the zero image") {
  const HadamardMatrix h = build_hadamard(8);
  spi::MeasurementSet ms;
  ms.row_indices = {0};
  ms.y = {0.0};
  ms.y_noisy = {0.0};
  const spi::ReconstructionResult rec = spi::reconstruct(ms, h, {});
  for (double v : rec.image.pix) CHECK(v == 0.0);
  CHECK(rec.converged);
}

TEST_CASE("phantom at 30 percent sampling reconstructs cleanly") {
  const HadamardMatrix h = build_hadamard(10);  // r = 32
  const spi::GrayImage phantom = square_phantom(32, 12, 20.0, 230.0);
  const spi::RowOrdering ord = spi::order_rows(h, spi::Strategy::CakeCutting);
  const auto rows = spi::select_rows(ord, 0.3);
  const spi::MeasurementSet ms = spi::acquire(phantom, rows, h, 0.0, 7);

  spi::SolverConfig cfg;
  cfg.trace_path = "solver_trace_tmp.csv";
  const spi::ReconstructionResult rec = spi::reconstruct(ms, h, cfg);
  CHECK(spi::ssim_global(phantom, rec.image).ssim > 0.95);

  // Feasibility pressure: the final residual cannot exceed the first one.
  std::ifstream trace(cfg.trace_path);
  REQUIRE(trace.good());
  std::string line;
  std::getline(trace, line);
  CHECK(line == "iteration,objective,fidelity_residual");
  double first_res = -1.0, last_res = -1.0;
  long iter = 0;
  while (std::getline(trace, line)) {
    std::istringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');
    ++iter;
    std::getline(ss, tok, ',');
    const double obj = std::stod(tok);
    CHECK(std::isfinite(obj));
    std::getline(ss, tok, ',');
    const double res = std::stod(tok);
    if (first_res < 0.0) first_res = res;
    last_res = res;
  }
  CHECK(iter == rec.outer_iterations);
  CHECK(last_res <= first_res);
  std::remove(cfg.trace_path.c_str());
}

TEST_CASE("reconstruction is deterministic") {
  const HadamardMatrix h = build_hadamard(8);
  const spi::GrayImage img = oracle::random_image(16, 654);
  const spi::RowOrdering ord = spi::order_rows(h, spi::Strategy::AscendingScale);
  const auto rows = spi::select_rows(ord, 0.4);
  const spi::MeasurementSet ms = spi::acquire(img, rows, h, 0.1, 42);
  const spi::ReconstructionResult a = spi::reconstruct(ms, h, {});
  const spi::ReconstructionResult b = spi::reconstruct(ms, h, {});
  CHECK(a.image.pix == b.image.pix);
  CHECK(a.outer_iterations == b.outer_iterations);
  CHECK(a.final_objective == b.final_objective);
}

TEST_CASE("at full sampling the row order does not matter") {
  const HadamardMatrix h = build_hadamard(8);
  const spi::GrayImage img = oracle::random_image(16, 987);

  const spi::MeasurementSet natural = spi::acquire(img, all_rows(256), h, 0.0, 1);
  const spi::RowOrdering ord = spi::order_rows(h, spi::Strategy::CakeCutting);
  const auto cc_rows = spi::select_rows(ord, 1.0);
  const spi::MeasurementSet shuffled = spi::acquire(img, cc_rows, h, 0.0, 1);

  const spi::ReconstructionResult a = spi::reconstruct(natural, h, {});
  const spi::ReconstructionResult b = spi::reconstruct(shuffled, h, {});
  for (size_t q = 0; q < a.image.pix.size(); ++q)
    CHECK(std::abs(a.image.pix[q] - b.image.pix[q]) < 1e-6);
}

TEST_CASE("divergent configurations raise a solver error") {
  const HadamardMatrix h = build_hadamard(8);
  const spi::GrayImage img = oracle::random_image(16, 13);
  spi::MeasurementSet ms = spi::acquire(img, all_rows(256), h, 0.0, 1);
  ms.y_noisy[3] = std::numeric_limits<double>::quiet_NaN();
  try {
    spi::reconstruct(ms, h, {});
    FAIL("expected SolverError");
  } catch (const spi::SolverError& e) {
    CHECK(e.iterations >= 0);
  }
}

TEST_CASE("dimension mismatches raise shape errors") {
  const HadamardMatrix h = build_hadamard(8);
  spi::MeasurementSet ms;
  ms.row_indices = {0, 1};
  ms.y = {1.0};
  ms.y_noisy = {1.0};
  CHECK_THROWS_AS(spi::reconstruct(ms, h, {}), spi::ShapeError);

  spi::MeasurementSet bad;
  bad.row_indices = {300};
  bad.y = {1.0};
  bad.y_noisy = {1.0};
  CHECK_THROWS_AS(spi::reconstruct(bad, h, {}), spi::ShapeError);
}

TEST_CASE("solver config validation") {
  spi::SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.mu = 0.0;
  CHECK_THROWS_AS(cfg.validate(), spi::ConfigError);
  cfg.mu = 256.0;
  cfg.max_outer = 0;
  CHECK_THROWS_AS(cfg.validate(), spi::ConfigError);
}
