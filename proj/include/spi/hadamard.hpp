#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spi {

// Sylvester (natural order) Hadamard matrix H_N, N = 2^k.
// Entries are +1/-1 stored as int8. Small orders keep a dense buffer;
// large orders generate rows on demand from the index identity
// H[i][j] = (-1)^popcount(i & j). Both paths agree bit for bit.
class HadamardMatrix {
 public:
  // Largest order kept dense (8192^2 bytes = 64 MB). Above this rows are
  // generated on demand and memory stays flat.
  static constexpr std::int64_t kDenseOrderLimit = std::int64_t{1} << 13;
  static constexpr int kMaxLog2Order = 30;

  std::int64_t order() const { return order_; }
  int log2_order() const { return k_; }
  bool is_dense() const { return !dense_.empty(); }

  // Single entry, +1 or -1.
  int entry(std::int64_t i, std::int64_t j) const {
    if (!dense_.empty()) return dense_[static_cast<size_t>(i) * order_ + j];
    return sylvester_entry(i, j);
  }

  // Fill `out` (length N) with row i.
  void row(std::int64_t i, std::span<std::int8_t> out) const;
  std::vector<std::int8_t> row(std::int64_t i) const;

  friend HadamardMatrix build_hadamard(int k);

 private:
  static int sylvester_entry(std::int64_t i, std::int64_t j) {
    return (__builtin_popcountll(static_cast<unsigned long long>(i & j)) & 1) ? -1 : 1;
  }

  int k_ = 0;
  std::int64_t order_ = 1;
  std::vector<std::int8_t> dense_;  // empty => on-demand rows
};

// H_{2^k} by the doubling recursion. Throws CapacityError when 2^k exceeds
// the supported range.
HadamardMatrix build_hadamard(int k);

// A Walsh row reshaped column by column into a square +-1 pattern:
// pattern(i, j) = row[j*r + i], r = sqrt(N). Storage is row-major.
struct Pattern2D {
  int side = 0;
  std::vector<std::int8_t> v;  // side*side, row-major

  Pattern2D() = default;
  explicit Pattern2D(int side_, std::int8_t fill = 1)
      : side(side_), v(static_cast<size_t>(side_) * side_, fill) {}

  std::int8_t at(int i, int j) const { return v[static_cast<size_t>(i) * side + j]; }
  std::int8_t& at(int i, int j) { return v[static_cast<size_t>(i) * side + j]; }
};

// Column-by-column reshape of a +-1 row of length N = r^2.
// Throws ShapeError when N is not the square of a power of two.
Pattern2D reshape_row(std::span<const std::int8_t> row);

// Exact inverse of reshape_row: out[j*r + i] = p(i, j).
std::vector<std::int8_t> flatten_pattern(const Pattern2D& p);

}  // namespace spi
