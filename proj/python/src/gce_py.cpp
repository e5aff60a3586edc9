#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "gce/golden.hpp"
#include "gce/hw_arith.hpp"
#include "gce/imageio.hpp"
#include "gce/metrics.hpp"
#include "gce/pipeline.hpp"

namespace py = pybind11;
using namespace gce;

namespace {

using Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

// Images cross the boundary as (height, width, 3) uint8 arrays.
RgbImage to_image(const Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 3) {
    throw py::value_error("expected a (height, width, 3) uint8 array");
  }
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  RgbImage img(w, h);
  const std::uint8_t* src = a.data();
  for (std::size_t i = 0; i < w * h; ++i) {
    img.r.data()[i] = src[3 * i];
    img.g.data()[i] = src[3 * i + 1];
    img.b.data()[i] = src[3 * i + 2];
  }
  return img;
}

Array to_array(const RgbImage& img) {
  Array out({img.height(), img.width(), std::size_t{3}});
  std::uint8_t* dst = out.mutable_data();
  for (std::size_t i = 0; i < img.width() * img.height(); ++i) {
    dst[3 * i] = img.r.data()[i];
    dst[3 * i + 1] = img.g.data()[i];
    dst[3 * i + 2] = img.b.data()[i];
  }
  return out;
}

py::dict report_dict(const hw::CycleReport& r) {
  py::dict d;
  d["latency_cycles"] = r.latency_cycles;
  d["total_cycles"] = r.total_cycles;
  d["pixels_out"] = r.pixels_out;
  d["steady_state_rate"] = r.steady_state_rate;
  d["bubble_free"] = r.bubble_free;
  d["stats_mode"] = std::string(hw::to_string(r.stats_mode));
  return d;
}

Array enhance(const Array& image, const std::string& model, const std::string& border, double k,
              double scale, bool parallel) {
  const RgbImage img = to_image(image);
  if (model == "golden") {
    golden::EnhanceParams params;
    params.k = k;
    params.scale = scale;
    params.border = parse_border_policy(border);
    params.validate();
    RgbImage out;
    {
      py::gil_scoped_release release;
      out = golden::enhance_rgb(img, params, parallel);
    }
    return to_array(out);
  }
  if (model != "hw") throw py::value_error("model must be 'golden' or 'hw'");
  if (k != 1.5 || scale != 32.0) {
    throw py::value_error("the hardware model's log stage is fixed at k=1.5, scale=32");
  }
  hw::PipelineConfig cfg;
  cfg.border = parse_border_policy(border);
  cfg.parallel = parallel;
  RgbImage out;
  {
    py::gil_scoped_release release;
    out = hw::pipeline_run(img, cfg).image;
  }
  return to_array(out);
}

py::tuple simulate(const Array& image, const std::string& border, const std::string& stats_mode,
                   bool parallel) {
  hw::PipelineConfig cfg;
  cfg.border = parse_border_policy(border);
  cfg.stats_mode = hw::parse_stats_mode(stats_mode);
  cfg.parallel = parallel;
  const RgbImage img = to_image(image);
  hw::PipelineResult res;
  {
    py::gil_scoped_release release;
    res = hw::pipeline_run(img, cfg);
  }
  return py::make_tuple(to_array(res.image), report_dict(res.report));
}

Array read_ppm(const std::string& path) { return to_array(io::read_ppm_file(path)); }

void write_ppm(const std::string& path, const Array& image, const std::string& format) {
  if (format != "p6" && format != "p3") throw py::value_error("format must be 'p6' or 'p3'");
  io::write_ppm_file(path, to_image(image), format == "p6" ? io::PpmFormat::p6 : io::PpmFormat::p3);
}

int conv_fixed(const Array& window) {
  if (window.ndim() != 2 || window.shape(0) != 5 || window.shape(1) != 5) {
    throw py::value_error("expected a 5x5 uint8 window");
  }
  hw::Window5 w{};
  for (int y = 0; y < 5; ++y) std::memcpy(w[y].data(), window.data(y, 0), 5);
  return hw::conv_fixed(w, golden::gaussian_kernel_5x5());
}

}  // namespace

PYBIND11_MODULE(_gce, m) {
  m.doc() = "Gaussian-based color image enhancement";

  py::register_exception<io::PpmError>(m, "PpmError", PyExc_ValueError);

  m.def("gaussian_kernel", [] {
    const auto k = golden::gaussian_kernel_5x5();
    py::list rows;
    for (const auto& row : k.weights) rows.append(py::cast(row));
    return py::make_tuple(rows, k.denom);
  }, "Returns (weights, denom) of the 5x5 integer Gaussian mask.");

  m.def("enhance", &enhance, py::arg("image"), py::arg("model") = "golden",
        py::arg("border") = "replicate", py::arg("k") = 1.5, py::arg("scale") = 32.0,
        py::arg("parallel") = false,
        "Enhances a (height, width, 3) uint8 image with the float or hardware model.");

  m.def("simulate", &simulate, py::arg("image"), py::arg("border") = "replicate",
        py::arg("stats_mode") = "two_pass", py::arg("parallel") = false,
        "Runs the hardware model and returns (image, cycle report dict).");

  m.def("psnr", [](const Array& a, const Array& b) { return metrics::psnr(to_image(a), to_image(b)); },
        py::arg("a"), py::arg("b"));

  m.def("diff_stats", [](const Array& a, const Array& b) {
    const auto s = metrics::diff_stats(to_image(a), to_image(b));
    py::dict d;
    d["max_abs"] = s.max_abs;
    d["mean_abs"] = s.mean_abs;
    d["count_nonzero"] = s.count_nonzero;
    return d;
  }, py::arg("a"), py::arg("b"));

  m.def("fps_model", &hw::fps_model, py::arg("width"), py::arg("height"), py::arg("clock_hz"),
        py::arg("latency"));
  m.def("streaming_latency", &hw::streaming_latency, py::arg("width"));

  m.def("read_ppm", &read_ppm, py::arg("path"));
  m.def("write_ppm", &write_ppm, py::arg("path"), py::arg("image"), py::arg("format") = "p6");

  m.def("log2_fixed", &hw::log2_fixed, py::arg("v"),
        "Hardware 48*log2(1+v) for an 8-bit input, as Q10.6 raw bits.");
  m.def("log2_mitchell", &hw::log2_mitchell, py::arg("v"));
  m.def("conv_fixed", &conv_fixed, py::arg("window"));
  m.def("mult8x8", [](std::uint8_t a, std::uint8_t b) { return hw::mult8x8(a, b); }, py::arg("a"),
        py::arg("b"));
}
