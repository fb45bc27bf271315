#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spi/hadamard.hpp"
#include "spi/image.hpp"
#include "spi/orderings.hpp"

namespace spi {

struct SensingConfig {
  double sampling_ratio = 1.0;  // in (0, 1]
  double noise_c = 0.0;         // proportional noise constant, >= 0
  std::uint64_t seed = 0;
  int runs = 1;

  void validate() const;  // throws ConfigError
};

// One simulated acquisition: clean projections, their noisy version, and
// the natural row indices that produced them, in acquisition order.
struct MeasurementSet {
  std::vector<double> y;
  std::vector<double> y_noisy;
  std::vector<std::int64_t> row_indices;
};

// M = round(SR * N) half away from zero, clamped to [1, N].
std::int64_t measurement_count(double sampling_ratio, std::int64_t n);

// First M entries of the ordering's permutation.
std::vector<std::int64_t> select_rows(const RowOrdering& ordering, double sampling_ratio);

// y[m] = dot(H row_indices[m], flatten_image(img)), evaluated through the
// fast Walsh-Hadamard transform.
std::vector<double> sense(const GrayImage& img, std::span<const std::int64_t> rows,
                          const HadamardMatrix& h);

// Row-by-row dot products; serial reference for sense().
std::vector<double> sense_reference(const GrayImage& img, std::span<const std::int64_t> rows,
                                    const HadamardMatrix& h);

// y_s[m] = y[m] + c * mean(|y|) * sigma_m with sigma_m standard normal from
// the seeded generator. c == 0 returns y unchanged, bit for bit.
std::vector<double> add_noise(std::span<const double> y, double c, std::uint64_t seed);

MeasurementSet acquire(const GrayImage& img, std::span<const std::int64_t> rows,
                       const HadamardMatrix& h, double c, std::uint64_t seed);

// Per-run seed: hash chain over the experiment coordinates. SR and c enter
// as round(value * 1e9) so equal config values always hash equally.
std::uint64_t derive_cell_seed(std::uint64_t base_seed, const std::string& image_id,
                               Strategy strategy, double sampling_ratio, double c, int run);

// Columnar debug dump: rank, natural row index, y, y_noisy.
void write_measurements(const MeasurementSet& ms, const std::string& path);

}  // namespace spi
