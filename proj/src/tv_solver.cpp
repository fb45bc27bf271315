#include "spi/tv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "spi/errors.hpp"
#include "spi/fwht.hpp"

namespace spi {

void SolverConfig::validate() const {
  if (!(mu > 0.0) || !(beta > 0.0) || !(tol > 0.0))
    throw ConfigError("SolverConfig: mu, beta, tol must be > 0");
  if (max_outer < 1 || max_inner < 1)
    throw ConfigError("SolverConfig: iteration limits must be >= 1");
}

void forward_diff(std::span<const double> x, int side, std::span<double> gh,
                  std::span<double> gv) {
  const int r = side;
  for (int j = 0; j < r; ++j) {
    const size_t col = static_cast<size_t>(j) * r;
    for (int i = 0; i < r; ++i) {
      const size_t idx = col + i;
      gh[idx] = (j < r - 1) ? x[idx + r] - x[idx] : 0.0;
      gv[idx] = (i < r - 1) ? x[idx + 1] - x[idx] : 0.0;
    }
  }
}

void forward_diff_adjoint(std::span<const double> gh, std::span<const double> gv, int side,
                          std::span<double> out) {
  const int r = side;
  for (int j = 0; j < r; ++j) {
    const size_t col = static_cast<size_t>(j) * r;
    for (int i = 0; i < r; ++i) {
      const size_t idx = col + i;
      double acc = 0.0;
      if (j >= 1) acc += gh[idx - r];
      if (j <= r - 2) acc -= gh[idx];
      if (i >= 1) acc += gv[idx - 1];
      if (i <= r - 2) acc -= gv[idx];
      out[idx] = acc;
    }
  }
}

void discrete_gradient(const GrayImage& img, GrayImage& gh, GrayImage& gv) {
  const int r = img.side;
  const std::vector<double> x = flatten_image(img);
  std::vector<double> h(x.size()), v(x.size());
  forward_diff(x, r, h, v);
  gh = unflatten_image(h, r);
  gv = unflatten_image(v, r);
}

void shrink_isotropic(std::span<const double> zh, std::span<const double> zv, double thr,
                      std::span<double> wh, std::span<double> wv) {
  for (size_t q = 0; q < zh.size(); ++q) {
    const double nrm = std::sqrt(zh[q] * zh[q] + zv[q] * zv[q]);
    if (nrm > thr) {
      const double f = 1.0 - thr / nrm;
      wh[q] = f * zh[q];
      wv[q] = f * zv[q];
    } else {
      wh[q] = 0.0;
      wv[q] = 0.0;
    }
  }
}

void shrink_anisotropic(std::span<const double> zh, std::span<const double> zv, double thr,
                        std::span<double> wh, std::span<double> wv) {
  auto soft = [thr](double z) {
    const double a = std::abs(z) - thr;
    return a > 0.0 ? (z > 0.0 ? a : -a) : 0.0;
  };
  for (size_t q = 0; q < zh.size(); ++q) {
    wh[q] = soft(zh[q]);
    wv[q] = soft(zv[q]);
  }
}

WalshSensor::WalshSensor(const HadamardMatrix& h, std::span<const std::int64_t> rows)
    : n_(h.order()),
      scale_(1.0 / std::sqrt(static_cast<double>(h.order()))),
      rows_(rows.begin(), rows.end()),
      buf_(static_cast<size_t>(h.order())) {
  if (rows_.empty()) throw ShapeError("WalshSensor: empty row selection");
  for (std::int64_t idx : rows_)
    if (idx < 0 || idx >= n_) throw ShapeError("WalshSensor: row index out of range");
}

void WalshSensor::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != static_cast<size_t>(n_) || out.size() != rows_.size())
    throw ShapeError("WalshSensor::apply: dimension mismatch");
  std::copy(x.begin(), x.end(), buf_.begin());
  fwht_inplace(buf_);
  for (size_t m = 0; m < rows_.size(); ++m)
    out[m] = buf_[static_cast<size_t>(rows_[m])] * scale_;
}

void WalshSensor::apply_adjoint(std::span<const double> v, std::span<double> out) const {
  if (v.size() != rows_.size() || out.size() != static_cast<size_t>(n_))
    throw ShapeError("WalshSensor::apply_adjoint: dimension mismatch");
  std::fill(buf_.begin(), buf_.end(), 0.0);
  for (size_t m = 0; m < rows_.size(); ++m)
    buf_[static_cast<size_t>(rows_[m])] += v[m] * scale_;
  fwht_inplace(buf_);
  std::copy(buf_.begin(), buf_.end(), out.begin());
}

TvQuadraticModel::TvQuadraticModel(const WalshSensor& sensor, int side, double mu, double beta,
                                   std::span<const double> wh, std::span<const double> wv,
                                   std::span<const double> nuh, std::span<const double> nuv,
                                   std::span<const double> lam, std::span<const double> b)
    : sensor_(&sensor),
      side_(side),
      mu_(mu),
      beta_(beta),
      wh_(wh),
      wv_(wv),
      nuh_(nuh),
      nuv_(nuv),
      lam_(lam),
      b_(b),
      th_(static_cast<size_t>(sensor.n())),
      tv_(static_cast<size_t>(sensor.n())),
      tm_(sensor.m()),
      tn_(static_cast<size_t>(sensor.n())) {}

double TvQuadraticModel::value(std::span<const double> x) const {
  forward_diff(x, side_, th_, tv_);
  double acc = 0.0;
  for (size_t q = 0; q < th_.size(); ++q) {
    const double dh = th_[q] - wh_[q];
    const double dv = tv_[q] - wv_[q];
    acc += -nuh_[q] * dh - nuv_[q] * dv + 0.5 * beta_ * (dh * dh + dv * dv);
  }
  sensor_->apply(x, tm_);
  for (size_t m = 0; m < tm_.size(); ++m) {
    const double res = tm_[m] - b_[m];
    acc += -lam_[m] * res + 0.5 * mu_ * res * res;
  }
  return acc;
}

void TvQuadraticModel::gradient(std::span<const double> x, std::span<double> g) const {
  forward_diff(x, side_, th_, tv_);
  for (size_t q = 0; q < th_.size(); ++q) {
    th_[q] = beta_ * (th_[q] - wh_[q]) - nuh_[q];
    tv_[q] = beta_ * (tv_[q] - wv_[q]) - nuv_[q];
  }
  forward_diff_adjoint(th_, tv_, side_, g);
  sensor_->apply(x, tm_);
  for (size_t m = 0; m < tm_.size(); ++m) tm_[m] = mu_ * (tm_[m] - b_[m]) - lam_[m];
  sensor_->apply_adjoint(tm_, tn_);
  for (size_t q = 0; q < g.size(); ++q) g[q] += tn_[q];
}

double TvQuadraticModel::curvature(std::span<const double> g) const {
  forward_diff(g, side_, th_, tv_);
  double acc = 0.0;
  for (size_t q = 0; q < th_.size(); ++q)
    acc += beta_ * (th_[q] * th_[q] + tv_[q] * tv_[q]);
  sensor_->apply(g, tm_);
  for (size_t m = 0; m < tm_.size(); ++m) acc += mu_ * tm_[m] * tm_[m];
  return acc;
}

namespace {

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double a : v) acc += a * a;
  return std::sqrt(acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t q = 0; q < a.size(); ++q) acc += a[q] * b[q];
  return acc;
}

double tv_objective(std::span<const double> gh, std::span<const double> gv, TvType type) {
  double acc = 0.0;
  if (type == TvType::Isotropic) {
    for (size_t q = 0; q < gh.size(); ++q)
      acc += std::sqrt(gh[q] * gh[q] + gv[q] * gv[q]);
  } else {
    for (size_t q = 0; q < gh.size(); ++q) acc += std::abs(gh[q]) + std::abs(gv[q]);
  }
  return acc;
}

}  // namespace

ReconstructionResult reconstruct(const MeasurementSet& ms, const HadamardMatrix& h,
                                 const SolverConfig& cfg) {
  cfg.validate();
  const std::int64_t n = h.order();
  const auto r = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  if (static_cast<std::int64_t>(r) * r != n)
    throw ShapeError("reconstruct: matrix order is not a perfect square");
  if (ms.y_noisy.size() != ms.row_indices.size())
    throw ShapeError("reconstruct: measurement / row count mismatch");

  const WalshSensor sensor(h, ms.row_indices);
  const size_t nn = static_cast<size_t>(n);
  const size_t mm = sensor.m();

  // Scaled data: b = y / sqrt(N) so that sensor rows are unit norm.
  std::vector<double> b(mm);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (size_t m = 0; m < mm; ++m) b[m] = ms.y_noisy[m] * inv_sqrt_n;

  // x0 = A'b = Phi'y / N: adjoint back-projection, exact at full sampling.
  std::vector<double> x(nn);
  sensor.apply_adjoint(b, x);

  std::vector<double> wh(nn, 0.0), wv(nn, 0.0);
  std::vector<double> nuh(nn, 0.0), nuv(nn, 0.0);
  std::vector<double> lam(mm, 0.0);
  std::vector<double> dxh(nn), dxv(nn), zh(nn), zv(nn);
  std::vector<double> g(nn), x_prev(nn), g_prev(nn), x_trial(nn), res(mm);
  std::vector<double> x_outer = x;

  std::ofstream trace;
  if (!cfg.trace_path.empty()) {
    trace.open(cfg.trace_path);
    if (!trace) throw IoError("reconstruct: cannot open trace file '" + cfg.trace_path + "'");
    trace << "iteration,objective,fidelity_residual\n";
  }

  const double thr = 1.0 / cfg.beta;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  bool converged = false;
  int outer = 0;

  while (outer < cfg.max_outer) {
    ++outer;

    // (a) splitting variables by exact shrinkage on z = Dx - nu/beta.
    forward_diff(x, r, dxh, dxv);
    for (size_t q = 0; q < nn; ++q) {
      zh[q] = dxh[q] - nuh[q] / cfg.beta;
      zv[q] = dxv[q] - nuv[q] / cfg.beta;
    }
    if (cfg.tv_type == TvType::Isotropic)
      shrink_isotropic(zh, zv, thr, wh, wv);
    else
      shrink_anisotropic(zh, zv, thr, wh, wv);

    // (b) x-subproblem: projected gradient descent, BB step + backtracking.
    const TvQuadraticModel model(sensor, r, cfg.mu, cfg.beta, wh, wv, nuh, nuv, lam, b);
    double qx = model.value(x);
    if (!std::isfinite(qx))
      throw SolverError("reconstruct: non-finite objective", outer - 1);
    model.gradient(x, g);
    double alpha = 0.0;
    for (int inner = 0; inner < cfg.max_inner; ++inner) {
      if (inner == 0) {
        // Exact minimizing step along -g for the quadratic model.
        const double gg = dot(g, g);
        const double curv = model.curvature(g);
        alpha = curv > 0.0 ? gg / curv : 1.0 / (8.0 * cfg.beta + cfg.mu);
      } else {
        // BB1 step from the last displacement / gradient change.
        double ss = 0.0, su = 0.0;
        for (size_t q = 0; q < nn; ++q) {
          const double s = x[q] - x_prev[q];
          ss += s * s;
          su += s * (g[q] - g_prev[q]);
        }
        if (su > 0.0) alpha = ss / su;
        // otherwise keep the previous accepted step
      }
      if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = 1.0 / (8.0 * cfg.beta + cfg.mu);

      // Backtracking with sufficient decrease along the projected step.
      double q_trial = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 30; ++bt) {
        if (cfg.nonneg) {
          for (size_t q = 0; q < nn; ++q) x_trial[q] = std::max(0.0, x[q] - alpha * g[q]);
        } else {
          for (size_t q = 0; q < nn; ++q) x_trial[q] = x[q] - alpha * g[q];
        }
        q_trial = model.value(x_trial);
        double gd = 0.0;
        for (size_t q = 0; q < nn; ++q) gd += g[q] * (x_trial[q] - x[q]);
        if (std::isfinite(q_trial) && q_trial <= qx + 1e-4 * gd) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!std::isfinite(q_trial))
        throw SolverError("reconstruct: non-finite objective in line search", outer - 1);
      if (!accepted) break;  // step collapsed, x is as good as this subproblem gets

      std::swap(x_prev, x);
      std::swap(g_prev, g);
      std::swap(x, x_trial);
      qx = q_trial;
      model.gradient(x, g);

      double step2 = 0.0, base2 = 0.0;
      for (size_t q = 0; q < nn; ++q) {
        const double d = x[q] - x_prev[q];
        step2 += d * d;
        base2 += x_prev[q] * x_prev[q];
      }
      if (step2 <= 0.01 * cfg.tol * cfg.tol * std::max(base2, 1e-30)) break;
    }

    // (c) multiplier ascent.
    forward_diff(x, r, dxh, dxv);
    for (size_t q = 0; q < nn; ++q) {
      nuh[q] -= cfg.beta * (dxh[q] - wh[q]);
      nuv[q] -= cfg.beta * (dxv[q] - wv[q]);
    }
    sensor.apply(x, res);
    double resnorm2 = 0.0;
    for (size_t m = 0; m < mm; ++m) {
      const double d = res[m] - b[m];
      lam[m] -= cfg.mu * d;
      resnorm2 += d * d;
    }

    if (trace.is_open()) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", outer,
                    tv_objective(dxh, dxv, cfg.tv_type), sqrt_n * std::sqrt(resnorm2));
      trace << buf;
    }

    double diff2 = 0.0, base2 = 0.0;
    for (size_t q = 0; q < nn; ++q) {
      const double d = x[q] - x_outer[q];
      diff2 += d * d;
      base2 += x_outer[q] * x_outer[q];
    }
    if (!std::isfinite(diff2))
      throw SolverError("reconstruct: non-finite iterate", outer);
    x_outer = x;
    if (diff2 <= cfg.tol * cfg.tol * std::max(base2, 1e-30)) {
      converged = true;
      break;
    }
  }

  forward_diff(x, r, dxh, dxv);

  ReconstructionResult out;
  out.outer_iterations = outer;
  out.converged = converged;
  out.final_objective = tv_objective(dxh, dxv, cfg.tv_type);
  out.image = unflatten_image(x, r);
  clamp_pixels(out.image);
  return out;
}

}  // namespace spi
