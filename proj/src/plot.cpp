#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fqb/io.hpp"

namespace fqb {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 64;
constexpr double kRight = 20;
constexpr double kTop = 36;
constexpr double kBottom = 52;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1-2-5 tick spacing giving roughly `target` intervals.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10 * mag;
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  return fmt::format("{:g}", v);
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-12) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
};

}  // namespace

std::string render_svg_plot(const std::vector<PlotSeries>& series, const PlotStyle& style) {
  Extent xs;
  Extent ys;
  ys.add(0.0);
  bool any = false;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("plot series '" + s.label + "' has ragged data");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xs.add(s.x[i]);
      ys.add(s.y[i]);
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("nothing to plot");
  xs.pad();
  ys.pad();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xs.lo) / (xs.hi - xs.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + (ys.hi - y) / (ys.hi - ys.lo) * plot_h; };

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  if (!style.title.empty()) {
    svg += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       num(kLeft + plot_w / 2), escape(style.title));
  }

  // axes and ticks
  svg += fmt::format("<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n");
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n", num(kLeft), num(kTop), num(plot_w),
                     num(plot_h));
  svg += "</g>\n<g font-size=\"11\">\n";
  const double xstep = tick_step(xs.hi - xs.lo, 6);
  for (long i = std::lround(std::ceil(xs.lo / xstep - 1e-9)); i * xstep <= xs.hi + 1e-9 * xstep; ++i) {
    const double t = i * xstep;
    const double x = px(t);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", num(x),
                       num(kTop + plot_h), num(kTop + plot_h + 5));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(x),
                       num(kTop + plot_h + 18), tick_label(t));
  }
  const double ystep = tick_step(ys.hi - ys.lo, 5);
  for (long i = std::lround(std::ceil(ys.lo / ystep - 1e-9)); i * ystep <= ys.hi + 1e-9 * ystep; ++i) {
    const double t = i * ystep;
    const double y = py(t);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", num(kLeft - 5),
                       num(y), num(kLeft));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(kLeft - 8), num(y + 4),
                       tick_label(t));
  }
  svg += "</g>\n";
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(kLeft + plot_w / 2),
                     num(kHeight - 12), escape(style.x_label));
  svg += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                     num(kTop + plot_h / 2), escape(style.y_label));

  // data
  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (s.x.size() == 1) {
      svg += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", num(px(s.x[0])), num(py(s.y[0])),
                         color);
      continue;
    }
    if (s.x.empty()) continue;
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (style.steps && i > 0) points += fmt::format("{},{} ", num(px(s.x[i])), num(py(s.y[i - 1])));
      points += fmt::format("{},{} ", num(px(s.x[i])), num(py(s.y[i])));
    }
    points.pop_back();
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
  }

  // legend
  double ly = kTop + 14;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series[k].label.empty()) continue;
    const char* color = kPalette[k % std::size(kPalette)];
    const double lx = kLeft + plot_w - 150;
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                       num(lx), num(ly - 4), num(lx + 20), color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num(lx + 26), num(ly), escape(series[k].label));
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path, const PlotStyle& style) {
  const std::string svg = render_svg_plot(series, style);
  std::ofstream out = open_output(path);
  out << svg;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

PlotSeries energy_series(const KickSeries& series, std::string label) {
  PlotSeries s{std::move(label), {}, {}};
  for (const KickRecord& r : series.records) {
    s.x.push_back(static_cast<double>(r.n));
    s.y.push_back(r.delta_e);
  }
  return s;
}

PlotSeries sweep_series(const SweepResult& sweep, std::string label) {
  PlotSeries s{std::move(label), {}, {}};
  for (const SweepPoint& pt : sweep.points) {
    s.x.push_back(pt.value);
    s.y.push_back(pt.delta_e_max);
  }
  return s;
}

}  // namespace fqb
