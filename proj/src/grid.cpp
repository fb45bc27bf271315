#include "spi/grid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"

#include "spi/errors.hpp"
#include "spi/image_io.hpp"
#include "spi/metrics.hpp"
#include "spi/sampling.hpp"

namespace spi {

namespace fs = std::filesystem;
using nlohmann::json;

void ExperimentGrid::validate() const {
  if (image_paths.empty()) throw ConfigError("grid: at least one image is required");
  if (side < 2 || (side & (side - 1)) != 0)
    throw ConfigError("grid: side must be a power of two >= 2");
  if (strategies.empty()) throw ConfigError("grid: at least one strategy is required");
  for (double sr : sampling_ratios)
    if (!(sr > 0.0 && sr <= 1.0)) throw ConfigError("grid: sampling ratios must be in (0, 1]");
  if (sampling_ratios.empty()) throw ConfigError("grid: at least one sampling ratio is required");
  for (double c : noise_levels)
    if (!(c >= 0.0)) throw ConfigError("grid: noise levels must be >= 0");
  if (noise_levels.empty()) throw ConfigError("grid: at least one noise level is required");
  if (runs < 1) throw ConfigError("grid: runs must be >= 1");
  solver.validate();
}

void apply_desk_preset(ExperimentGrid& grid) {
  grid.side = 64;
  grid.sampling_ratios = {0.05, 0.1, 0.2};
  grid.runs = 3;
}

namespace {

std::string image_id_from_path(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ExperimentGrid load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config '" + path + "': top level must be an object");

  static const std::set<std::string> known = {
      "images", "side", "strategies", "sampling_ratios", "noise_levels",
      "runs",   "base_seed", "out_dir", "save_images", "solver"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw ConfigError("config '" + path + "': unknown key '" + key + "'");

  ExperimentGrid grid;
  try {
    if (doc.contains("images")) grid.image_paths = doc["images"].get<std::vector<std::string>>();
    if (doc.contains("side")) grid.side = doc["side"].get<int>();
    if (doc.contains("strategies")) {
      grid.strategies.clear();
      for (const auto& s : doc["strategies"]) grid.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (doc.contains("sampling_ratios"))
      grid.sampling_ratios = doc["sampling_ratios"].get<std::vector<double>>();
    if (doc.contains("noise_levels"))
      grid.noise_levels = doc["noise_levels"].get<std::vector<double>>();
    if (doc.contains("runs")) grid.runs = doc["runs"].get<int>();
    if (doc.contains("base_seed")) grid.base_seed = doc["base_seed"].get<std::uint64_t>();
    if (doc.contains("out_dir")) grid.out_dir = doc["out_dir"].get<std::string>();
    if (doc.contains("save_images")) grid.save_images = doc["save_images"].get<bool>();
    if (doc.contains("solver")) {
      const json& s = doc["solver"];
      static const std::set<std::string> solver_known = {"mu",        "beta",      "tol",
                                                         "max_outer", "max_inner", "nonneg",
                                                         "tv"};
      for (const auto& [key, _] : s.items())
        if (!solver_known.count(key))
          throw ConfigError("config '" + path + "': unknown solver key '" + key + "'");
      if (s.contains("mu")) grid.solver.mu = s["mu"].get<double>();
      if (s.contains("beta")) grid.solver.beta = s["beta"].get<double>();
      if (s.contains("tol")) grid.solver.tol = s["tol"].get<double>();
      if (s.contains("max_outer")) grid.solver.max_outer = s["max_outer"].get<int>();
      if (s.contains("max_inner")) grid.solver.max_inner = s["max_inner"].get<int>();
      if (s.contains("nonneg")) grid.solver.nonneg = s["nonneg"].get<bool>();
      if (s.contains("tv")) {
        const std::string t = s["tv"].get<std::string>();
        if (t == "isotropic") grid.solver.tv_type = TvType::Isotropic;
        else if (t == "anisotropic") grid.solver.tv_type = TvType::Anisotropic;
        else throw ConfigError("config '" + path + "': tv must be isotropic or anisotropic");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  grid.validate();
  return grid;
}

std::vector<AggregateRow> aggregate_cells(const std::vector<CellResult>& cells) {
  // Group key in first-appearance order so the aggregate follows grid order.
  std::vector<AggregateRow> rows;
  std::map<std::string, size_t> index;
  std::vector<std::vector<const CellResult*>> groups;
  for (const CellResult& cell : cells) {
    if (!cell.ok) continue;
    char key[128];
    std::snprintf(key, sizeof(key), "%d|%.12g|%.12g", static_cast<int>(cell.strategy), cell.sr,
                  cell.c);
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&cell);
  }
  for (const auto& group : groups) {
    AggregateRow row;
    row.strategy = group.front()->strategy;
    row.sr = group.front()->sr;
    row.c = group.front()->c;
    row.n = static_cast<int>(group.size());
    double ssim_sum = 0.0, psnr_sum = 0.0;
    for (const CellResult* cell : group) {
      ssim_sum += cell->ssim;
      psnr_sum += cell->psnr;
    }
    row.ssim_mean = ssim_sum / row.n;
    row.psnr_mean = psnr_sum / row.n;
    if (row.n > 1) {
      double ssim_var = 0.0, psnr_var = 0.0;
      for (const CellResult* cell : group) {
        ssim_var += (cell->ssim - row.ssim_mean) * (cell->ssim - row.ssim_mean);
        psnr_var += (cell->psnr - row.psnr_mean) * (cell->psnr - row.psnr_mean);
      }
      row.ssim_std = std::sqrt(ssim_var / (row.n - 1));
      row.psnr_std = std::sqrt(psnr_var / (row.n - 1));
    }
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
    if (a.strategy != b.strategy) return static_cast<int>(a.strategy) < static_cast<int>(b.strategy);
    if (a.sr != b.sr) return a.sr < b.sr;
    return a.c < b.c;
  });
  return rows;
}

void write_cells_csv(const std::vector<CellResult>& cells, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "schema_version,1\n";
  out << "image_id,strategy,sr,c,run,ssim,psnr,solver_iterations,status,wall_time_s\n";
  for (const CellResult& cell : cells) {
    out << cell.image_id << ',' << strategy_name(cell.strategy) << ',' << fmt_double(cell.sr)
        << ',' << fmt_double(cell.c) << ',' << cell.run << ',' << fmt_double(cell.ssim) << ','
        << fmt_double(cell.psnr) << ',' << cell.solver_iterations << ','
        << (cell.ok ? "ok" : "solver_error") << ',' << fmt_double(cell.wall_time_s) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "schema_version,1\n";
  out << "strategy,sr,c,n,ssim_mean,ssim_std,psnr_mean,psnr_std\n";
  for (const AggregateRow& row : rows) {
    out << strategy_name(row.strategy) << ',' << fmt_double(row.sr) << ',' << fmt_double(row.c)
        << ',' << row.n << ',' << fmt_double(row.ssim_mean) << ',' << fmt_double(row.ssim_std)
        << ',' << fmt_double(row.psnr_mean) << ',' << fmt_double(row.psnr_std) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

GridOutcome run_grid(const ExperimentGrid& grid) {
  grid.validate();
  fs::create_directories(grid.out_dir);
  if (grid.save_images) fs::create_directories(fs::path(grid.out_dir) / "recon");

  const int k = 2 * static_cast<int>(std::llround(std::log2(grid.side)));
  const HadamardMatrix h = build_hadamard(k);

  // Load and normalize every scene once.
  std::vector<GrayImage> scenes;
  std::vector<std::string> ids;
  scenes.reserve(grid.image_paths.size());
  for (const std::string& path : grid.image_paths) {
    scenes.push_back(load_and_normalize(path, grid.side));
    ids.push_back(image_id_from_path(path));
  }

  // Orderings are shared across cells; compute each strategy once.
  std::map<Strategy, RowOrdering> orderings;
  for (Strategy s : grid.strategies)
    if (!orderings.count(s)) orderings.emplace(s, order_rows(h, s));

  struct CellSpec {
    size_t image = 0;
    Strategy strategy = Strategy::Natural;
    double sr = 0.0, c = 0.0;
    int run = 0;
  };
  std::vector<CellSpec> specs;
  for (size_t im = 0; im < scenes.size(); ++im)
    for (Strategy s : grid.strategies)
      for (double sr : grid.sampling_ratios)
        for (double c : grid.noise_levels)
          for (int run = 0; run < grid.runs; ++run) specs.push_back({im, s, sr, c, run});

  GridOutcome outcome;
  outcome.cells.resize(specs.size());
  outcome.cells_csv_path = (fs::path(grid.out_dir) / "cells.csv").string();
  outcome.aggregate_csv_path = (fs::path(grid.out_dir) / "aggregate.csv").string();

  // Incremental flush: rows land in cells.csv in spec order as soon as every
  // earlier cell has finished, whatever order the workers complete in.
  std::ofstream cells_out(outcome.cells_csv_path);
  if (!cells_out) throw IoError("cannot write '" + outcome.cells_csv_path + "'");
  cells_out << "schema_version,1\n";
  cells_out << "image_id,strategy,sr,c,run,ssim,psnr,solver_iterations,status,wall_time_s\n";
  std::vector<char> done(specs.size(), 0);
  size_t next_flush = 0;

  const auto count = static_cast<std::int64_t>(specs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const CellSpec& spec = specs[static_cast<size_t>(idx)];
    CellResult cell;
    cell.image_id = ids[spec.image];
    cell.strategy = spec.strategy;
    cell.sr = spec.sr;
    cell.c = spec.c;
    cell.run = spec.run;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const GrayImage& scene = scenes[spec.image];
      const RowOrdering& ordering = orderings.at(spec.strategy);
      const std::vector<std::int64_t> rows = select_rows(ordering, spec.sr);
      const std::uint64_t seed =
          derive_cell_seed(grid.base_seed, cell.image_id, spec.strategy, spec.sr, spec.c, spec.run);
      const MeasurementSet ms = acquire(scene, rows, h, spec.c, seed);
      const ReconstructionResult rec = reconstruct(ms, h, grid.solver);
      cell.ssim = ssim_global(scene, rec.image).ssim;
      cell.psnr = psnr(scene, rec.image);
      cell.solver_iterations = rec.outer_iterations;
      cell.ok = true;
      if (grid.save_images) {
        char name[160];
        std::snprintf(name, sizeof(name), "%s_%s_sr%g_c%g_run%d.png", cell.image_id.c_str(),
                      strategy_name(spec.strategy).c_str(), spec.sr, spec.c, spec.run);
        save_png_gray(rec.image, (fs::path(grid.out_dir) / "recon" / name).string());
      }
    } catch (const SolverError& e) {
      cell.ok = false;
      cell.error = e.what();
      cell.solver_iterations = e.iterations;
      cell.ssim = std::nan("");
      cell.psnr = std::nan("");
    }
    cell.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

#pragma omp critical(spi_grid_writer)
    {
      outcome.cells[static_cast<size_t>(idx)] = std::move(cell);
      done[static_cast<size_t>(idx)] = 1;
      while (next_flush < specs.size() && done[next_flush]) {
        const CellResult& c = outcome.cells[next_flush];
        cells_out << c.image_id << ',' << strategy_name(c.strategy) << ',' << fmt_double(c.sr)
                  << ',' << fmt_double(c.c) << ',' << c.run << ',' << fmt_double(c.ssim) << ','
                  << fmt_double(c.psnr) << ',' << c.solver_iterations << ','
                  << (c.ok ? "ok" : "solver_error") << ',' << fmt_double(c.wall_time_s) << '\n';
        cells_out.flush();
        ++next_flush;
      }
    }
  }
  cells_out.close();

  for (const CellResult& cell : outcome.cells)
    if (!cell.ok) ++outcome.failed_cells;
  outcome.rows = aggregate_cells(outcome.cells);
  write_aggregate_csv(outcome.rows, outcome.aggregate_csv_path);
  return outcome;
}

}  // namespace spi
