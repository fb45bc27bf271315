#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spi/hadamard.hpp"

namespace spi {

// Row-ordering strategies. Natural keeps the Sylvester sequence; the other
// four sort rows by an ascending per-pattern score.
enum class Strategy { Natural, CakeCutting, TotalGradient, AscendingScale, AscendingInertia };

// Short tags used in CLI arguments, config files and CSV columns.
std::string strategy_name(Strategy s);          // "NATURAL", "CC", "TG", "AS", "AI"
Strategy parse_strategy(const std::string& s);  // throws ConfigError on unknown tag

struct RowScore {
  std::int64_t natural_index = 0;
  double score = 0.0;
};

// Permutation of natural row indices with the per-row scores that produced
// it. scores[] is aligned to the natural index, not to rank.
struct RowOrdering {
  Strategy strategy = Strategy::Natural;
  std::vector<std::int64_t> permutation;
  std::vector<double> scores;
};

// ---- per-pattern scores ----

// Number of maximal 4-connected regions of equal value.
double score_cake_cutting(const Pattern2D& p);

// MATLAB-style gradient stencil: central differences inside, single-sided
// at the borders. gx differentiates along columns (j), gy along rows (i).
// Both outputs are side*side row-major. Requires side >= 2.
void gradient_2d(const Pattern2D& p, std::vector<double>& gx, std::vector<double>& gy);

// Sum of |gx| + |gy| over all pixels.
double score_total_gradient(const Pattern2D& p);

// Mean GLCM inertia over the four directions at offset 1; see glcm() below.
double score_ascending_inertia(const Pattern2D& p);

// spectral_peak_distance (ascending scale score) lives in spi/fft.hpp.

// ---- gray-level co-occurrence ----

enum class GlcmDirection { Deg0, Deg45, Deg90, Deg135 };

// Pair counts over binary levels {0, 1}. Counting is symmetric (each pixel
// pair contributes to (a,b) and (b,a)), so the four directions together
// cover all eight neighbors and the matrix is symmetric.
struct GlcmCounts {
  std::array<std::array<double, 2>, 2> g{};  // g[a][b]
  double total() const { return g[0][0] + g[0][1] + g[1][0] + g[1][1]; }
};

// p01: row-major side*side array over {0, 1}. Only offset 1 is supported.
GlcmCounts glcm(const std::vector<std::uint8_t>& p01, int side, GlcmDirection dir,
                int offset = 1);

// Pattern values -1 -> 0, +1 -> 1.
std::vector<std::uint8_t> pattern_to_binary(const Pattern2D& p);

// Inertia of a binary GLCM whose two levels sit in bins 1 and `levels` of a
// levels-sized quantization, i.e. |j-k|^2 = (levels-1)^2 across a
// transition and 0 on the diagonal. Normalized by the total count, so the
// value is invariant under scaling all counts.
double glcm_inertia(const GlcmCounts& counts, int levels);

// ---- ordering ----

struct OrderingOptions {
  int pad = 0;           // AS transform size; 0 = default_spectral_pad(side)
  bool parallel = true;  // score rows with OpenMP
};

// Score of one pattern under a strategy (Natural scores 0).
double score_pattern(const Pattern2D& p, Strategy s, int pad = 0);

// Score every row of H. Returned vector is indexed by natural row index.
std::vector<double> score_rows(const HadamardMatrix& h, Strategy s,
                               const OrderingOptions& opts = {});

// Serial reference for score_rows; kept for tests and the kernel benchmark.
std::vector<double> score_rows_serial(const HadamardMatrix& h, Strategy s, int pad = 0);

// Ascending-score permutation; ties resolve to ascending natural index.
// Natural returns the identity.
RowOrdering order_rows(const HadamardMatrix& h, Strategy s, const OrderingOptions& opts = {});

// One 0-based natural index per line, in rank order.
void write_ordering(const RowOrdering& ordering, const std::string& path);

}  // namespace spi
