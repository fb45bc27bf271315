// spi-bench: single-pixel-imaging benchmark harness.
//
// Subcommands:
//   run     -- execute an experiment grid described by a JSON config
//   order   -- export a row ordering as a text file
//   metrics -- score one image against a reference

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "spi/errors.hpp"
#include "spi/grid.hpp"
#include "spi/image_io.hpp"
#include "spi/metrics.hpp"
#include "spi/orderings.hpp"

namespace {

int cmd_run(const std::string& config_path, bool desk) {
  spi::ExperimentGrid grid = spi::load_grid_config(config_path);
  if (desk) {
    spi::apply_desk_preset(grid);
    grid.validate();
  }
  const spi::GridOutcome outcome = spi::run_grid(grid);
  std::printf("cells: %zu  failed: %d\n", outcome.cells.size(), outcome.failed_cells);
  std::printf("per-cell CSV:   %s\n", outcome.cells_csv_path.c_str());
  std::printf("aggregate CSV:  %s\n", outcome.aggregate_csv_path.c_str());
  if (!outcome.cells.empty() && outcome.failed_cells == static_cast<int>(outcome.cells.size())) {
    std::fprintf(stderr, "error: every cell failed\n");
    return 3;
  }
  return 0;
}

int cmd_order(const std::string& strategy, int k, const std::string& out_path, int pad) {
  const spi::HadamardMatrix h = spi::build_hadamard(k);
  spi::OrderingOptions opts;
  opts.pad = pad;
  const spi::RowOrdering ordering = spi::order_rows(h, spi::parse_strategy(strategy), opts);
  spi::write_ordering(ordering, out_path);
  std::printf("wrote %zu indices to %s\n", ordering.permutation.size(), out_path.c_str());
  return 0;
}

int cmd_metrics(const std::string& ref_path, const std::string& test_path) {
  const spi::GrayImage ref = spi::load_gray_image(ref_path);
  const spi::GrayImage test = spi::load_gray_image(test_path);
  const spi::SsimBreakdown s = spi::ssim_global(ref, test);
  std::printf("ssim  %.6f  (l %.6f  c %.6f  s %.6f)\n", s.ssim, s.luminance, s.contrast,
              s.structure);
  std::printf("psnr  %.4f dB\n", spi::psnr(ref, test));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-pixel imaging simulation benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  bool desk = false;
  CLI::App* run = app.add_subcommand("run", "run an experiment grid");
  run->add_option("--config", config_path, "JSON grid config")->required();
  run->add_flag("--desk", desk, "shrink to the CI-sized preset (side 64, 3 SRs, 3 runs)");

  std::string strategy = "CC", order_out;
  int order_k = 4, order_pad = 0;
  CLI::App* order = app.add_subcommand("order", "export a row ordering");
  order->add_option("--strategy", strategy, "NATURAL, CC, TG, AS or AI")->required();
  order->add_option("--k", order_k, "log2 of the matrix order (must be even)")->required();
  order->add_option("--out", order_out, "output text file")->required();
  order->add_option("--pad", order_pad, "AS transform size (0 = default)");

  std::string ref_path, test_path;
  CLI::App* metrics = app.add_subcommand("metrics", "score an image against a reference");
  metrics->add_option("--ref", ref_path, "reference image (PNG/PGM)")->required();
  metrics->add_option("--test", test_path, "image under test (PNG/PGM)")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path, desk);
    if (order->parsed()) return cmd_order(strategy, order_k, order_out, order_pad);
    if (metrics->parsed()) return cmd_metrics(ref_path, test_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const spi::IoError& e) {  // covers FormatError as well
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 2;
  } catch (const spi::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const spi::ShapeError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const spi::CapacityError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
