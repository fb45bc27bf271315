#include "spi/fwht.hpp"

#include "spi/errors.hpp"

namespace spi {

void fwht_inplace(std::span<double> data) {
  const size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ShapeError("fwht_inplace: length must be a power of two");
  for (size_t h = 1; h < n; h <<= 1) {
    for (size_t i = 0; i < n; i += h << 1) {
      for (size_t j = i; j < i + h; ++j) {
        const double a = data[j];
        const double b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

}  // namespace spi
