// gce: command-line front end for the Gaussian color enhancement models.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gce/bench.hpp"
#include "gce/golden.hpp"
#include "gce/imageio.hpp"
#include "gce/metrics.hpp"
#include "gce/pipeline.hpp"

namespace {

struct EnhanceArgs {
  std::string input;
  std::string output;
  std::string model = "golden";
  std::string border = "replicate";
  std::string stats_mode = "two_pass";
  std::string format = "p6";
  double k = 1.5;
  double scale = 32.0;
  bool parallel = false;
};

struct SimulateArgs {
  std::string input;
  std::string output;
  std::string trace;
  std::string border = "replicate";
  std::string stats_mode = "two_pass";
  std::size_t fifo_depth = 0;
  bool parallel = false;
};

struct BenchArgs {
  std::string sizes = "64x64,256x256";
  int reps = 5;
  std::string impl = "both";
  std::string out;
  bool parallel = false;
  double clock_hz = gce::bench::kReferenceClockHz;
  std::uint64_t latency = gce::bench::kReferenceLatency;
};

gce::io::PpmFormat parse_format(const std::string& f) {
  if (f == "p6" || f == "P6") return gce::io::PpmFormat::p6;
  if (f == "p3" || f == "P3") return gce::io::PpmFormat::p3;
  throw std::invalid_argument("unknown output format '" + f + "'");
}

int cmd_enhance(const EnhanceArgs& a) {
  const gce::RgbImage input = gce::io::read_ppm_file(a.input);
  const auto border = gce::parse_border_policy(a.border);
  gce::RgbImage out;
  if (a.model == "golden") {
    gce::golden::EnhanceParams params;
    params.k = a.k;
    params.scale = a.scale;
    params.border = border;
    out = gce::golden::enhance_rgb(input, params, a.parallel);
  } else if (a.model == "hw") {
    if (a.k != 1.5 || a.scale != 32.0) {
      throw std::invalid_argument("the hardware model's log stage is fixed at k=1.5, scale=32");
    }
    gce::hw::PipelineConfig cfg;
    cfg.border = border;
    cfg.stats_mode = gce::hw::parse_stats_mode(a.stats_mode);
    cfg.parallel = a.parallel;
    out = gce::hw::pipeline_run(input, cfg).image;
  } else {
    throw std::invalid_argument("unknown model '" + a.model + "' (golden or hw)");
  }
  gce::io::write_ppm_file(a.output, out, parse_format(a.format));
  std::cout << "enhanced " << out.width() << "x" << out.height() << " model=" << a.model
            << " psnr_vs_input=" << gce::metrics::format_psnr(gce::metrics::psnr(input, out))
            << " dB -> " << a.output << "\n";
  return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path) {
  const gce::RgbImage a = gce::io::read_ppm_file(a_path);
  const gce::RgbImage b = gce::io::read_ppm_file(b_path);
  const double db = gce::metrics::psnr(a, b);
  const auto d = gce::metrics::diff_stats(a, b);
  std::cout << "psnr=" << gce::metrics::format_psnr(db) << " max_abs=" << d.max_abs
            << " mean_abs=" << d.mean_abs << " count_nonzero=" << d.count_nonzero << "\n";
  return 0;
}

int cmd_simulate(const SimulateArgs& a) {
  const gce::RgbImage input = gce::io::read_ppm_file(a.input);
  gce::hw::PipelineConfig cfg;
  cfg.border = gce::parse_border_policy(a.border);
  cfg.stats_mode = gce::hw::parse_stats_mode(a.stats_mode);
  cfg.parallel = a.parallel;
  cfg.trace = !a.trace.empty();
  if (a.fifo_depth > 0) cfg.fifo_depth = a.fifo_depth;
  const auto res = gce::hw::pipeline_run(input, cfg);
  const auto& r = res.report;
  std::cout << "width=" << input.width() << " height=" << input.height() << "\n"
            << "latency_cycles=" << r.latency_cycles << "\n"
            << "total_cycles=" << r.total_cycles << "\n"
            << "pixels_out=" << r.pixels_out << "\n"
            << "steady_state_rate=" << r.steady_state_rate << "\n"
            << "stats_mode=" << gce::hw::to_string(r.stats_mode) << "\n"
            << "projected_fps@" << gce::bench::kReferenceClockHz / 1e6 << "MHz="
            << r.projected_fps(gce::bench::kReferenceClockHz, input.width(), input.height())
            << "\n";
  if (!a.output.empty()) gce::io::write_ppm_file(a.output, res.image);
  if (!a.trace.empty()) {
    std::ofstream os(a.trace);
    if (!os) throw std::runtime_error("cannot write '" + a.trace + "'");
    gce::hw::write_trace_csv(os, res.trace);
  }
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  gce::bench::BenchOptions opts;
  opts.sizes = gce::bench::parse_sizes(a.sizes);
  opts.repetitions = a.reps;
  opts.parallel = a.parallel;
  std::vector<gce::bench::BenchRow> rows;
  auto run = [&](gce::bench::Impl impl) {
    auto r = gce::bench::run_bench(opts, impl);
    rows.insert(rows.end(), r.begin(), r.end());
  };
  if (a.impl == "both") {
    run(gce::bench::Impl::golden);
    run(gce::bench::Impl::hw);
  } else {
    run(gce::bench::parse_impl(a.impl));
  }
  rows.push_back(gce::bench::projection_row(1600, 1200, a.clock_hz, a.latency));
  if (a.out.empty()) {
    gce::bench::write_csv(std::cout, rows);
  } else {
    std::ofstream os(a.out);
    if (!os) throw std::runtime_error("cannot write '" + a.out + "'");
    gce::bench::write_csv(os, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian color image enhancement: golden model and streaming hardware model"};
  app.require_subcommand(1);

  EnhanceArgs ea;
  auto* enhance = app.add_subcommand("enhance", "Enhance a PPM image");
  enhance->add_option("input", ea.input, "Input PPM")->required();
  enhance->add_option("output", ea.output, "Output PPM")->required();
  enhance->add_option("--model", ea.model, "golden or hw")->check(CLI::IsMember({"golden", "hw"}));
  enhance->add_option("--border", ea.border, "replicate, reflect or zero")
      ->check(CLI::IsMember({"replicate", "reflect", "zero"}));
  enhance->add_option("--stats-mode", ea.stats_mode, "two_pass or previous_frame (hw)")
      ->check(CLI::IsMember({"two_pass", "previous_frame"}));
  enhance->add_option("--k", ea.k, "Log gain");
  enhance->add_option("--scale", ea.scale, "Post-log scale");
  enhance->add_option("--format", ea.format, "p6 or p3")->check(CLI::IsMember({"p6", "p3"}));
  enhance->add_flag("--parallel", ea.parallel, "Process channels on separate threads");

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "PSNR and difference statistics of two PPMs");
  compare->add_option("a", cmp_a, "First PPM")->required();
  compare->add_option("b", cmp_b, "Second PPM")->required();

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Run the hardware model and report cycles");
  simulate->add_option("input", sa.input, "Input PPM")->required();
  simulate->add_option("--out", sa.output, "Write the enhanced image here");
  simulate->add_option("--trace", sa.trace, "Write the per-cycle stage trace CSV here");
  simulate->add_option("--border", sa.border, "replicate, reflect or zero")
      ->check(CLI::IsMember({"replicate", "reflect", "zero"}));
  simulate->add_option("--stats-mode", sa.stats_mode, "two_pass or previous_frame")
      ->check(CLI::IsMember({"two_pass", "previous_frame"}));
  simulate->add_option("--fifo-depth", sa.fifo_depth, "Row FIFO depth (default: image width)");
  simulate->add_flag("--parallel", sa.parallel, "Run channels on separate threads");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Throughput benchmark as CSV");
  bench->add_option("--sizes", ba.sizes, "Comma-separated WxH list");
  bench->add_option("--reps", ba.reps, "Repetitions per size (median reported)");
  bench->add_option("--impl", ba.impl, "golden, hw or both")
      ->check(CLI::IsMember({"golden", "hw", "both"}));
  bench->add_option("--out", ba.out, "CSV output file (default stdout)");
  bench->add_option("--clock", ba.clock_hz, "Clock for the projection row (Hz)");
  bench->add_option("--latency", ba.latency, "Latency for the projection row (cycles)");
  bench->add_flag("--parallel", ba.parallel, "Process channels on separate threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enhance) return cmd_enhance(ea);
    if (*compare) return cmd_compare(cmp_a, cmp_b);
    if (*simulate) return cmd_simulate(sa);
    if (*bench) return cmd_bench(ba);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
