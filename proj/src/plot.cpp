#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "eqbearing/io.hpp"

namespace eqbearing {

namespace {

constexpr double kWidth = 960.0;
constexpr double kPanelHeight = 260.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 40.0;
constexpr std::size_t kMaxPoints = 2000;
constexpr double kRadToDeg = 180.0 / M_PI;

struct Panel {
  double y0;  // top edge in the document
  double t_min, t_max;
  double v_min, v_max;

  double px(double t) const {
    const double span = t_max > t_min ? t_max - t_min : 1.0;
    return kLeft + (t - t_min) / span * (kWidth - kLeft - kRight);
  }
  double py(double v) const {
    const double span = v_max > v_min ? v_max - v_min : 1.0;
    const double inner = kPanelHeight - kTop - kBottom;
    return y0 + kTop + (v_max - std::clamp(v, v_min, v_max)) / span * inner;
  }
};

double angle_between(const Vector3& a, const Vector3& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

void frame(std::string& svg, const Panel& p, const std::string& title, const std::string& unit) {
  const double x1 = kLeft;
  const double x2 = kWidth - kRight;
  const double y1 = p.y0 + kTop;
  const double y2 = p.y0 + kPanelHeight - kBottom;
  fmt::format_to(std::back_inserter(svg),
                 "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                 "fill=\"none\" stroke=\"#444\"/>\n",
                 x1, y1, x2 - x1, y2 - y1);
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"14\">{}</text>\n", x1, p.y0 + 20.0,
                 title);
  for (int i = 0; i <= 4; ++i) {
    const double v = p.v_min + (p.v_max - p.v_min) * i / 4.0;
    const double t = p.t_min + (p.t_max - p.t_min) * i / 4.0;
    fmt::format_to(std::back_inserter(svg),
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.3g}</text>\n",
                   x1 - 6.0, p.py(v) + 4.0, v);
    fmt::format_to(std::back_inserter(svg),
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"middle\">{:.3g}</text>\n",
                   p.px(t), y2 + 16.0, t);
  }
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">t [s]</text>\n",
                 (x1 + x2) / 2.0, y2 + 32.0);
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"16\" y=\"{:.2f}\" font-size=\"12\" transform=\"rotate(-90 16 {:.2f})\" "
                 "text-anchor=\"middle\">{}</text>\n",
                 (y1 + y2) / 2.0, (y1 + y2) / 2.0, unit);
}

template <typename Fn>
void curve(std::string& svg, const Panel& p, const std::vector<SampleRecord>& records,
           Fn value, const char* color, bool dashed, const char* label) {
  const std::size_t stride = std::max<std::size_t>(1, (records.size() + kMaxPoints - 1) / kMaxPoints);
  fmt::format_to(std::back_inserter(svg),
                 "<polyline class=\"curve\" data-label=\"{}\" fill=\"none\" stroke=\"{}\" "
                 "stroke-width=\"1.2\"{} points=\"",
                 label, color, dashed ? " stroke-dasharray=\"6 4\"" : "");
  for (std::size_t i = 0; i < records.size(); i += stride) {
    fmt::format_to(std::back_inserter(svg), "{:.2f},{:.2f} ", p.px(records[i].t),
                   p.py(value(records[i])));
  }
  const auto& last = records.back();
  fmt::format_to(std::back_inserter(svg), "{:.2f},{:.2f}\"/>\n", p.px(last.t), p.py(value(last)));
}

}  // namespace

std::string render_plot(const std::vector<SampleRecord>& records) {
  if (records.empty()) throw std::invalid_argument("render_plot: no records");
  const double t0 = records.front().t;
  const double t1 = records.back().t;
  const bool have_eqv = !std::isnan(records.front().angle_err_eqv);
  const bool have_naive = !std::isnan(records.front().angle_err_naive);

  std::string svg;
  fmt::format_to(std::back_inserter(svg),
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                 "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\">\n",
                 kWidth, 3 * kPanelHeight, kWidth, 3 * kPanelHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // (a) bearing components
  const Panel a{0.0, t0, t1, -1.05, 1.05};
  svg += "<g id=\"panel-a\">\n";
  frame(svg, a,
        have_eqv ? "Bearing components: truth (dashed), equivariant estimate (solid)"
                 : "Bearing components: truth (dashed), naive estimate (solid)",
        "component");
  static const char* colors[3] = {"#d62728", "#2ca02c", "#1f77b4"};
  static const char* truth_labels[3] = {"xi_x", "xi_y", "xi_z"};
  static const char* est_labels[3] = {"xihat_x", "xihat_y", "xihat_z"};
  for (int i = 0; i < 3; ++i) {
    curve(svg, a, records, [i](const SampleRecord& r) { return r.xi[i]; }, colors[i], true,
          truth_labels[i]);
  }
  for (int i = 0; i < 3; ++i) {
    curve(svg, a, records,
          [i, have_eqv](const SampleRecord& r) { return have_eqv ? r.xihat_eqv[i] : r.xihat_naive[i]; },
          colors[i], false, est_labels[i]);
  }
  svg += "</g>\n";

  // (b) estimation error
  double err_max = 1.0;
  for (const auto& r : records) {
    if (have_eqv) err_max = std::max(err_max, r.angle_err_eqv * kRadToDeg);
    if (have_naive) err_max = std::max(err_max, r.angle_err_naive * kRadToDeg);
  }
  const Panel b{kPanelHeight, t0, t1, 0.0, err_max};
  svg += "<g id=\"panel-b\">\n";
  frame(svg, b, "Estimation angle error: equivariant (blue), naive (orange)", "error [deg]");
  if (have_eqv) {
    curve(svg, b, records, [](const SampleRecord& r) { return r.angle_err_eqv * kRadToDeg; },
          "#1f77b4", false, "angle_err_eqv");
  }
  if (have_naive) {
    curve(svg, b, records, [](const SampleRecord& r) { return r.angle_err_naive * kRadToDeg; },
          "#ff7f0e", false, "angle_err_naive");
  }
  svg += "</g>\n";

  // (c) measurement error
  double meas_max = 1.0;
  for (const auto& r : records) meas_max = std::max(meas_max, angle_between(r.xi, r.y) * kRadToDeg);
  const Panel c{2 * kPanelHeight, t0, t1, 0.0, meas_max};
  svg += "<g id=\"panel-c\">\n";
  frame(svg, c, "Measurement angle error (outliers circled)", "error [deg]");
  curve(svg, c, records, [](const SampleRecord& r) { return angle_between(r.xi, r.y) * kRadToDeg; },
        "#7f7f7f", false, "measurement_err");
  for (const auto& r : records) {
    if (!r.outlier) continue;
    fmt::format_to(std::back_inserter(svg),
                   "<circle class=\"outlier\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"none\" "
                   "stroke=\"#d62728\"/>\n",
                   c.px(r.t), c.py(angle_between(r.xi, r.y) * kRadToDeg));
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void write_plot(const std::vector<SampleRecord>& records, const std::string& path) {
  const std::string svg = render_plot(records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << svg;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace eqbearing
