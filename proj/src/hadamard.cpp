#include "spi/hadamard.hpp"

#include <cmath>

#include "spi/errors.hpp"

namespace spi {

HadamardMatrix build_hadamard(int k) {
  if (k < 0) throw ConfigError("build_hadamard: k must be >= 0");
  if (k > HadamardMatrix::kMaxLog2Order)
    throw CapacityError("build_hadamard: order 2^" + std::to_string(k) +
                        " exceeds the supported array size");
  HadamardMatrix h;
  h.k_ = k;
  h.order_ = std::int64_t{1} << k;
  if (h.order_ <= HadamardMatrix::kDenseOrderLimit) {
    const std::int64_t n = h.order_;
    h.dense_.assign(static_cast<size_t>(n) * n, 1);
    // Sylvester doubling: copy the m x m block right, down, and negated
    // down-right.
    for (std::int64_t m = 1; m < n; m <<= 1) {
      for (std::int64_t i = 0; i < m; ++i) {
        const std::int8_t* src = &h.dense_[static_cast<size_t>(i) * n];
        std::int8_t* right = &h.dense_[static_cast<size_t>(i) * n + m];
        std::int8_t* down = &h.dense_[static_cast<size_t>(i + m) * n];
        std::int8_t* diag = &h.dense_[static_cast<size_t>(i + m) * n + m];
        for (std::int64_t j = 0; j < m; ++j) {
          right[j] = src[j];
          down[j] = src[j];
          diag[j] = static_cast<std::int8_t>(-src[j]);
        }
      }
    }
  }
  return h;
}

void HadamardMatrix::row(std::int64_t i, std::span<std::int8_t> out) const {
  if (i < 0 || i >= order_) throw ShapeError("HadamardMatrix::row: index out of range");
  if (out.size() != static_cast<size_t>(order_))
    throw ShapeError("HadamardMatrix::row: output span has wrong length");
  if (!dense_.empty()) {
    const std::int8_t* src = &dense_[static_cast<size_t>(i) * order_];
    std::copy(src, src + order_, out.begin());
    return;
  }
  for (std::int64_t j = 0; j < order_; ++j)
    out[static_cast<size_t>(j)] = static_cast<std::int8_t>(sylvester_entry(i, j));
}

std::vector<std::int8_t> HadamardMatrix::row(std::int64_t i) const {
  std::vector<std::int8_t> out(static_cast<size_t>(order_));
  row(i, out);
  return out;
}

Pattern2D reshape_row(std::span<const std::int8_t> row) {
  const size_t n = row.size();
  if (n == 0) throw ShapeError("reshape_row: empty row");
  const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (static_cast<size_t>(r) * r != n || (r & (r - 1)) != 0)
    throw ShapeError("reshape_row: length must be the square of a power of two");
  Pattern2D p(static_cast<int>(r));
  for (int j = 0; j < p.side; ++j)
    for (int i = 0; i < p.side; ++i)
      p.at(i, j) = row[static_cast<size_t>(j) * r + i];
  return p;
}

std::vector<std::int8_t> flatten_pattern(const Pattern2D& p) {
  const int r = p.side;
  std::vector<std::int8_t> out(static_cast<size_t>(r) * r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      out[static_cast<size_t>(j) * r + i] = p.at(i, j);
  return out;
}

}  // namespace spi
