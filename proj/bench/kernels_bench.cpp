// Timing harness for the parallel kernels against their serial references:
// row scoring per strategy, and fast-transform sensing vs dense row dots.
//
// Usage: spi-kernel-bench [k] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "spi/fwht.hpp"
#include "spi/hadamard.hpp"
#include "spi/orderings.hpp"
#include "spi/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int k = argc > 1 ? std::atoi(argv[1]) : 10;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 1;
  if (k < 2 || k % 2 != 0) {
    std::fprintf(stderr, "k must be even and >= 2\n");
    return 1;
  }

#ifdef _OPENMP
  std::printf("k = %d (N = %lld), repeats = %d, OpenMP threads = %d\n", k,
              static_cast<long long>(1LL << k), repeats, omp_get_max_threads());
#else
  std::printf("k = %d (N = %lld), repeats = %d, OpenMP off\n", k,
              static_cast<long long>(1LL << k), repeats);
#endif

  const spi::HadamardMatrix h = spi::build_hadamard(k);

  const spi::Strategy strategies[] = {spi::Strategy::CakeCutting, spi::Strategy::TotalGradient,
                                      spi::Strategy::AscendingScale,
                                      spi::Strategy::AscendingInertia};
  std::printf("%-22s %12s %12s %8s\n", "kernel", "serial [s]", "parallel [s]", "speedup");
  for (spi::Strategy s : strategies) {
    double t_serial = 0.0, t_parallel = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      auto serial = spi::score_rows_serial(h, s);
      t_serial += seconds_since(t0);

      spi::OrderingOptions opts;
      opts.parallel = true;
      t0 = std::chrono::steady_clock::now();
      auto parallel = spi::score_rows(h, s, opts);
      t_parallel += seconds_since(t0);

      if (serial != parallel) {
        std::fprintf(stderr, "mismatch between serial and parallel %s scores\n",
                     spi::strategy_name(s).c_str());
        return 1;
      }
    }
    std::printf("%-22s %12.4f %12.4f %8.2f\n",
                ("score " + spi::strategy_name(s)).c_str(), t_serial / repeats,
                t_parallel / repeats, t_serial / std::max(t_parallel, 1e-12));
  }

  // Sensing: fast Walsh-Hadamard path vs dense row dot products.
  const auto n = h.order();
  const auto side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  spi::GrayImage img(side);
  for (size_t q = 0; q < img.pix.size(); ++q) img.pix[q] = static_cast<double>(q % 256);
  std::vector<std::int64_t> rows(static_cast<size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = i;

  double t_dense = 0.0, t_fast = 0.0;
  for (int rep = 0; rep < repeats; ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    auto y_dense = spi::sense_reference(img, rows, h);
    t_dense += seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto y_fast = spi::sense(img, rows, h);
    t_fast += seconds_since(t0);

    for (size_t m = 0; m < y_fast.size(); ++m) {
      if (std::abs(y_fast[m] - y_dense[m]) > 1e-6 * std::max(1.0, std::abs(y_dense[m]))) {
        std::fprintf(stderr, "sense mismatch at %zu\n", m);
        return 1;
      }
    }
  }
  std::printf("%-22s %12.4f %12.4f %8.2f\n", "sense (dense vs fwht)", t_dense / repeats,
              t_fast / repeats, t_dense / std::max(t_fast, 1e-12));
  return 0;
}
