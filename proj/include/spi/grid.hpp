#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spi/orderings.hpp"
#include "spi/tv_solver.hpp"

namespace spi {

// Full experiment description: every (image, strategy, SR, noise, run)
// combination becomes one cell.
struct ExperimentGrid {
  std::vector<std::string> image_paths;
  int side = 128;
  std::vector<Strategy> strategies = {Strategy::Natural, Strategy::CakeCutting,
                                      Strategy::TotalGradient, Strategy::AscendingScale,
                                      Strategy::AscendingInertia};
  std::vector<double> sampling_ratios = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06,
                                         0.07, 0.08, 0.09, 0.1,  0.2,  0.3, 0.5};
  std::vector<double> noise_levels = {0.0, 0.1, 0.5};
  int runs = 5;
  std::uint64_t base_seed = 20220101;
  SolverConfig solver;
  std::string out_dir = "out";
  bool save_images = true;

  void validate() const;  // throws ConfigError
};

// CI-sized grid: side 64, three sampling ratios, three runs.
void apply_desk_preset(ExperimentGrid& grid);

// Flat JSON object; unknown keys are rejected. See README for the schema.
ExperimentGrid load_grid_config(const std::string& path);

struct CellResult {
  std::string image_id;
  Strategy strategy = Strategy::Natural;
  double sr = 0.0;
  double c = 0.0;
  int run = 0;
  double ssim = 0.0;
  double psnr = 0.0;
  int solver_iterations = 0;
  double wall_time_s = 0.0;
  bool ok = false;
  std::string error;
};

struct AggregateRow {
  Strategy strategy = Strategy::Natural;
  double sr = 0.0;
  double c = 0.0;
  int n = 0;
  double ssim_mean = 0.0, ssim_std = 0.0;
  double psnr_mean = 0.0, psnr_std = 0.0;
};

struct GridOutcome {
  std::vector<CellResult> cells;   // sorted by cell key
  std::vector<AggregateRow> rows;  // grouped by (strategy, sr, c)
  int failed_cells = 0;
  std::string cells_csv_path;
  std::string aggregate_csv_path;
};

// Mean and sample standard deviation of the successful cells, grouped by
// (strategy, SR, c) in grid order.
std::vector<AggregateRow> aggregate_cells(const std::vector<CellResult>& cells);

// Runs every cell (OpenMP across cells, deterministic row order), writes
// <out_dir>/cells.csv, <out_dir>/aggregate.csv and, when save_images is
// set, one reconstructed PNG per cell under <out_dir>/recon/.
// Solver failures are recorded per cell; the grid keeps going.
GridOutcome run_grid(const ExperimentGrid& grid);

// CSV serializations (schema_version line first, then the header row).
void write_cells_csv(const std::vector<CellResult>& cells, const std::string& path);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path);

}  // namespace spi
