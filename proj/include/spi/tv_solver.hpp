#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spi/hadamard.hpp"
#include "spi/image.hpp"
#include "spi/sampling.hpp"

namespace spi {

enum class TvType { Isotropic, Anisotropic };

struct SolverConfig {
  double mu = 256.0;   // fidelity penalty weight (on the unit-norm sensing operator)
  double beta = 32.0;  // gradient-splitting penalty weight
  double tol = 1e-4;   // relative-change stopping threshold
  int max_outer = 300;
  int max_inner = 20;
  bool nonneg = true;
  TvType tv_type = TvType::Isotropic;
  std::string trace_path;  // nonempty => per-iteration CSV trace

  void validate() const;
};

struct ReconstructionResult {
  GrayImage image;  // clamped to [0, 255]
  int outer_iterations = 0;
  double final_objective = 0.0;  // total variation of the final iterate
  bool converged = false;
};

// Forward differences with replicate boundary (zero difference at the last
// row/column). Inputs/outputs are column-major vectors of length side^2:
// gh(i,j) = x(i,j+1) - x(i,j), gv(i,j) = x(i+1,j) - x(i,j).
void forward_diff(std::span<const double> x, int side, std::span<double> gh,
                  std::span<double> gv);

// Adjoint of forward_diff (negative divergence), consistent boundary.
void forward_diff_adjoint(std::span<const double> gh, std::span<const double> gv, int side,
                          std::span<double> out);

// Spec-level convenience: per-pixel gradient of an image as two images.
void discrete_gradient(const GrayImage& img, GrayImage& gh, GrayImage& gv);

// 2D shrinkage: w_i = max(||z_i||_2 - thr, 0) * z_i / ||z_i||_2 per pixel.
void shrink_isotropic(std::span<const double> zh, std::span<const double> zv, double thr,
                      std::span<double> wh, std::span<double> wv);

// Component-wise soft threshold.
void shrink_anisotropic(std::span<const double> zh, std::span<const double> zv, double thr,
                        std::span<double> wh, std::span<double> wv);

// Selected Walsh rows scaled by 1/sqrt(N), applied through the fast
// transform: apply() is O(N log N) regardless of how many rows are kept.
// With the scaling, A*A^T = I, which keeps the penalty weights in
// SolverConfig meaningful across image sizes.
class WalshSensor {
 public:
  WalshSensor(const HadamardMatrix& h, std::span<const std::int64_t> rows);

  std::int64_t n() const { return n_; }
  size_t m() const { return rows_.size(); }

  void apply(std::span<const double> x, std::span<double> out) const;          // A x
  void apply_adjoint(std::span<const double> v, std::span<double> out) const;  // A^T v

 private:
  std::int64_t n_ = 0;
  double scale_ = 1.0;  // 1/sqrt(N)
  std::vector<std::int64_t> rows_;
  mutable std::vector<double> buf_;  // transform workspace, one solver per instance
};

// Smooth part of the augmented Lagrangian at fixed splitting variables and
// multipliers:
//   q(x) = -nu'(Dx - w) + beta/2 ||Dx - w||^2 - lam'(Ax - b) + mu/2 ||Ax - b||^2.
// The x-subproblem minimizes q (optionally over x >= 0).
class TvQuadraticModel {
 public:
  TvQuadraticModel(const WalshSensor& sensor, int side, double mu, double beta,
                   std::span<const double> wh, std::span<const double> wv,
                   std::span<const double> nuh, std::span<const double> nuv,
                   std::span<const double> lam, std::span<const double> b);

  double value(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> g) const;
  // Curvature g' (beta D'D + mu A'A) g, used for the exact first step length.
  double curvature(std::span<const double> g) const;

 private:
  const WalshSensor* sensor_;
  int side_;
  double mu_, beta_;
  std::span<const double> wh_, wv_, nuh_, nuv_, lam_, b_;
  mutable std::vector<double> th_, tv_, tm_, tn_;  // scratch
};

// TV minimization under Walsh-row measurements by augmented Lagrangian
// alternating direction: exact 2D shrinkage for the splitting variables,
// projected BB gradient descent with backtracking for x, then multiplier
// ascent. Deterministic for fixed inputs. Reconstructs from ms.y_noisy.
ReconstructionResult reconstruct(const MeasurementSet& ms, const HadamardMatrix& h,
                                 const SolverConfig& cfg);

}  // namespace spi
