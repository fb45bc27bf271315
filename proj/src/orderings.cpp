#include "spi/orderings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "spi/errors.hpp"
#include "spi/fft.hpp"

namespace spi {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Natural: return "NATURAL";
    case Strategy::CakeCutting: return "CC";
    case Strategy::TotalGradient: return "TG";
    case Strategy::AscendingScale: return "AS";
    case Strategy::AscendingInertia: return "AI";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "NATURAL") return Strategy::Natural;
  if (s == "CC") return Strategy::CakeCutting;
  if (s == "TG") return Strategy::TotalGradient;
  if (s == "AS") return Strategy::AscendingScale;
  if (s == "AI") return Strategy::AscendingInertia;
  throw ConfigError("unknown ordering strategy '" + s + "'");
}

double score_cake_cutting(const Pattern2D& p) {
  const int r = p.side;
  const size_t n = static_cast<size_t>(r) * r;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<int> stack;
  int blocks = 0;
  for (int start = 0; start < static_cast<int>(n); ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    ++blocks;
    const std::int8_t value = p.v[static_cast<size_t>(start)];
    seen[static_cast<size_t>(start)] = 1;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int i = cur / r, j = cur % r;
      const int nb[4] = {i > 0 ? cur - r : -1, i + 1 < r ? cur + r : -1,
                         j > 0 ? cur - 1 : -1, j + 1 < r ? cur + 1 : -1};
      for (int q : nb) {
        if (q >= 0 && !seen[static_cast<size_t>(q)] && p.v[static_cast<size_t>(q)] == value) {
          seen[static_cast<size_t>(q)] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return static_cast<double>(blocks);
}

void gradient_2d(const Pattern2D& p, std::vector<double>& gx, std::vector<double>& gy) {
  const int r = p.side;
  if (r < 2) throw ShapeError("gradient_2d: pattern side must be >= 2");
  const size_t n = static_cast<size_t>(r) * r;
  gx.assign(n, 0.0);
  gy.assign(n, 0.0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const size_t idx = static_cast<size_t>(i) * r + j;
      if (j == 0)
        gx[idx] = static_cast<double>(p.at(i, 1)) - p.at(i, 0);
      else if (j == r - 1)
        gx[idx] = static_cast<double>(p.at(i, r - 1)) - p.at(i, r - 2);
      else
        gx[idx] = (static_cast<double>(p.at(i, j + 1)) - p.at(i, j - 1)) / 2.0;
      if (i == 0)
        gy[idx] = static_cast<double>(p.at(1, j)) - p.at(0, j);
      else if (i == r - 1)
        gy[idx] = static_cast<double>(p.at(r - 1, j)) - p.at(r - 2, j);
      else
        gy[idx] = (static_cast<double>(p.at(i + 1, j)) - p.at(i - 1, j)) / 2.0;
    }
  }
}

double score_total_gradient(const Pattern2D& p) {
  std::vector<double> gx, gy;
  gradient_2d(p, gx, gy);
  double total = 0.0;
  for (size_t q = 0; q < gx.size(); ++q) total += std::abs(gx[q]) + std::abs(gy[q]);
  return total;
}

std::vector<std::uint8_t> pattern_to_binary(const Pattern2D& p) {
  std::vector<std::uint8_t> out(p.v.size());
  for (size_t q = 0; q < p.v.size(); ++q) out[q] = p.v[q] > 0 ? 1 : 0;
  return out;
}

GlcmCounts glcm(const std::vector<std::uint8_t>& p01, int side, GlcmDirection dir, int offset) {
  if (offset != 1) throw ConfigError("glcm: only offset 1 is supported");
  if (p01.size() != static_cast<size_t>(side) * side)
    throw ShapeError("glcm: array length does not match side*side");
  int di = 0, dj = 0;
  switch (dir) {
    case GlcmDirection::Deg0: di = 0; dj = 1; break;
    case GlcmDirection::Deg45: di = -1; dj = 1; break;
    case GlcmDirection::Deg90: di = -1; dj = 0; break;
    case GlcmDirection::Deg135: di = -1; dj = -1; break;
  }
  GlcmCounts counts;
  for (int i = 0; i < side; ++i) {
    const int ni = i + di;
    if (ni < 0 || ni >= side) continue;
    for (int j = 0; j < side; ++j) {
      const int nj = j + dj;
      if (nj < 0 || nj >= side) continue;
      const std::uint8_t a = p01[static_cast<size_t>(i) * side + j];
      const std::uint8_t b = p01[static_cast<size_t>(ni) * side + nj];
      counts.g[a][b] += 1.0;
      counts.g[b][a] += 1.0;
    }
  }
  return counts;
}

double glcm_inertia(const GlcmCounts& counts, int levels) {
  const double n = counts.total();
  if (n == 0.0) return 0.0;
  const double w = static_cast<double>(levels - 1) * (levels - 1);
  return w * (counts.g[0][1] + counts.g[1][0]) / n;
}

double score_ascending_inertia(const Pattern2D& p) {
  const std::vector<std::uint8_t> p01 = pattern_to_binary(p);
  const GlcmDirection dirs[4] = {GlcmDirection::Deg0, GlcmDirection::Deg45,
                                 GlcmDirection::Deg90, GlcmDirection::Deg135};
  double sum = 0.0;
  for (GlcmDirection d : dirs) sum += glcm_inertia(glcm(p01, p.side, d), p.side);
  return sum / 4.0;
}

double score_pattern(const Pattern2D& p, Strategy s, int pad) {
  switch (s) {
    case Strategy::Natural: return 0.0;
    case Strategy::CakeCutting: return score_cake_cutting(p);
    case Strategy::TotalGradient: return score_total_gradient(p);
    case Strategy::AscendingScale: return spectral_peak_distance(p, pad);
    case Strategy::AscendingInertia: return score_ascending_inertia(p);
  }
  return 0.0;
}

namespace {

double score_row_index(const HadamardMatrix& h, std::int64_t i, Strategy s, int pad,
                       std::vector<std::int8_t>& rowbuf) {
  h.row(i, rowbuf);
  const Pattern2D p = reshape_row(rowbuf);
  return score_pattern(p, s, pad);
}

}  // namespace

std::vector<double> score_rows(const HadamardMatrix& h, Strategy s, const OrderingOptions& opts) {
  const std::int64_t n = h.order();
  std::vector<double> scores(static_cast<size_t>(n), 0.0);
  if (s == Strategy::Natural) return scores;
  const int pad = opts.pad;
  if (opts.parallel) {
#pragma omp parallel
    {
      std::vector<std::int8_t> rowbuf(static_cast<size_t>(n));
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < n; ++i)
        scores[static_cast<size_t>(i)] = score_row_index(h, i, s, pad, rowbuf);
    }
  } else {
    std::vector<std::int8_t> rowbuf(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
      scores[static_cast<size_t>(i)] = score_row_index(h, i, s, pad, rowbuf);
  }
  return scores;
}

std::vector<double> score_rows_serial(const HadamardMatrix& h, Strategy s, int pad) {
  OrderingOptions opts;
  opts.pad = pad;
  opts.parallel = false;
  return score_rows(h, s, opts);
}

RowOrdering order_rows(const HadamardMatrix& h, Strategy s, const OrderingOptions& opts) {
  RowOrdering ord;
  ord.strategy = s;
  ord.scores = score_rows(h, s, opts);
  const std::int64_t n = h.order();
  ord.permutation.resize(static_cast<size_t>(n));
  std::iota(ord.permutation.begin(), ord.permutation.end(), std::int64_t{0});
  if (s != Strategy::Natural) {
    std::sort(ord.permutation.begin(), ord.permutation.end(),
              [&](std::int64_t a, std::int64_t b) {
                const double sa = ord.scores[static_cast<size_t>(a)];
                const double sb = ord.scores[static_cast<size_t>(b)];
                return sa < sb || (sa == sb && a < b);
              });
  }
  return ord;
}

void write_ordering(const RowOrdering& ordering, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_ordering: cannot open '" + path + "' for writing");
  for (std::int64_t idx : ordering.permutation) out << idx << '\n';
  if (!out) throw IoError("write_ordering: write failed for '" + path + "'");
}

}  // namespace spi
