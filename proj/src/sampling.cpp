#include "spi/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "spi/errors.hpp"
#include "spi/fwht.hpp"
#include "spi/rng.hpp"

namespace spi {

void SensingConfig::validate() const {
  if (!(sampling_ratio > 0.0 && sampling_ratio <= 1.0))
    throw ConfigError("SensingConfig: sampling_ratio must be in (0, 1]");
  if (!(noise_c >= 0.0)) throw ConfigError("SensingConfig: noise_c must be >= 0");
  if (runs < 1) throw ConfigError("SensingConfig: runs must be >= 1");
}

std::int64_t measurement_count(double sampling_ratio, std::int64_t n) {
  if (!(sampling_ratio > 0.0 && sampling_ratio <= 1.0))
    throw ConfigError("measurement_count: sampling ratio must be in (0, 1]");
  const auto m = static_cast<std::int64_t>(std::round(sampling_ratio * static_cast<double>(n)));
  return std::max<std::int64_t>(1, std::min(n, m));
}

std::vector<std::int64_t> select_rows(const RowOrdering& ordering, double sampling_ratio) {
  const auto n = static_cast<std::int64_t>(ordering.permutation.size());
  const std::int64_t m = measurement_count(sampling_ratio, n);
  return {ordering.permutation.begin(), ordering.permutation.begin() + m};
}

std::vector<double> sense(const GrayImage& img, std::span<const std::int64_t> rows,
                          const HadamardMatrix& h) {
  const std::int64_t n = h.order();
  if (static_cast<std::int64_t>(img.size()) != n)
    throw ShapeError("sense: image pixel count does not match matrix order");
  std::vector<double> proj = flatten_image(img);
  fwht_inplace(proj);
  std::vector<double> y(rows.size());
  for (size_t m = 0; m < rows.size(); ++m) {
    const std::int64_t idx = rows[m];
    if (idx < 0 || idx >= n) throw ShapeError("sense: row index out of range");
    y[m] = proj[static_cast<size_t>(idx)];
  }
  return y;
}

std::vector<double> sense_reference(const GrayImage& img, std::span<const std::int64_t> rows,
                                    const HadamardMatrix& h) {
  const std::int64_t n = h.order();
  if (static_cast<std::int64_t>(img.size()) != n)
    throw ShapeError("sense_reference: image pixel count does not match matrix order");
  const std::vector<double> x = flatten_image(img);
  std::vector<std::int8_t> rowbuf(static_cast<size_t>(n));
  std::vector<double> y(rows.size());
  for (size_t m = 0; m < rows.size(); ++m) {
    const std::int64_t idx = rows[m];
    if (idx < 0 || idx >= n) throw ShapeError("sense_reference: row index out of range");
    h.row(idx, rowbuf);
    double acc = 0.0;
    for (std::int64_t j = 0; j < n; ++j)
      acc += static_cast<double>(rowbuf[static_cast<size_t>(j)]) * x[static_cast<size_t>(j)];
    y[m] = acc;
  }
  return y;
}

std::vector<double> add_noise(std::span<const double> y, double c, std::uint64_t seed) {
  if (y.empty()) throw ConfigError("add_noise: empty measurement vector");
  if (!(c >= 0.0)) throw ConfigError("add_noise: c must be >= 0");
  std::vector<double> out(y.begin(), y.end());
  if (c == 0.0) return out;
  double mean_abs = 0.0;
  for (double v : y) mean_abs += std::abs(v);
  mean_abs /= static_cast<double>(y.size());
  const double amp = c * mean_abs;
  NormalGenerator gen(seed);
  for (double& v : out) v += amp * gen.next();
  return out;
}

MeasurementSet acquire(const GrayImage& img, std::span<const std::int64_t> rows,
                       const HadamardMatrix& h, double c, std::uint64_t seed) {
  MeasurementSet ms;
  ms.row_indices.assign(rows.begin(), rows.end());
  ms.y = sense(img, rows, h);
  ms.y_noisy = add_noise(ms.y, c, seed);
  return ms;
}

std::uint64_t derive_cell_seed(std::uint64_t base_seed, const std::string& image_id,
                               Strategy strategy, double sampling_ratio, double c, int run) {
  std::uint64_t s = hash64(base_seed, image_id);
  s = hash64(s, static_cast<std::uint64_t>(strategy));
  s = hash64(s, static_cast<std::uint64_t>(std::llround(sampling_ratio * 1e9)));
  s = hash64(s, static_cast<std::uint64_t>(std::llround(c * 1e9)));
  s = hash64(s, static_cast<std::uint64_t>(run));
  return s;
}

void write_measurements(const MeasurementSet& ms, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_measurements: cannot open '" + path + "'");
  out << "rank\trow\ty\ty_noisy\n";
  char buf[96];
  for (size_t m = 0; m < ms.y.size(); ++m) {
    std::snprintf(buf, sizeof(buf), "%zu\t%lld\t%.17g\t%.17g\n", m,
                  static_cast<long long>(ms.row_indices[m]), ms.y[m], ms.y_noisy[m]);
    out << buf;
  }
  if (!out) throw IoError("write_measurements: write failed for '" + path + "'");
}

}  // namespace spi
