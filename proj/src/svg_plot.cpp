#include "ksortlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "ksortlab/errors.hpp"

namespace ksortlab::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      const double c = std::isfinite(lo) ? lo : 0.0;
      lo = c - 1.0;
      hi = c + 1.0;
      return;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// "Nice" tick step covering the range in about five intervals.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

class Canvas {
 public:
  Canvas(Range x, Range y) : x_(x), y_(y) {}

  double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * plot_w(); }
  double py(double y) const { return kTop + (y_.hi - y) / (y_.hi - y_.lo) * plot_h(); }
  static double plot_w() { return kWidth - kLeft - kRight; }
  static double plot_h() { return kHeight - kTop - kBottom; }

  void frame(std::ostringstream& out, const std::string& title, const std::string& x_label,
             const std::string& y_label) const {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w()
        << "\" height=\"" << plot_h() << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kLeft + plot_w() / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"16\">" << escape(title) << "</text>\n";
    out << "<text x=\"" << kLeft + plot_w() / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << kTop + plot_h() / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << kTop + plot_h() / 2 << ")\">" << escape(y_label) << "</text>\n";

    const double xs = tick_step(x_.hi - x_.lo);
    for (double v = std::ceil(x_.lo / xs) * xs; v <= x_.hi; v += xs) {
      out << "<line x1=\"" << num(px(v)) << "\" y1=\"" << kTop + plot_h() << "\" x2=\""
          << num(px(v)) << "\" y2=\"" << kTop + plot_h() + 5 << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << num(px(v)) << "\" y=\"" << kTop + plot_h() + 18
          << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(v) << "</text>\n";
    }
    const double ys = tick_step(y_.hi - y_.lo);
    for (double v = std::ceil(y_.lo / ys) * ys; v <= y_.hi; v += ys) {
      out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(v)) << "\" x2=\"" << kLeft
          << "\" y2=\"" << num(py(v)) << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(v) + 3)
          << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(v) << "</text>\n";
    }
  }

 private:
  Range x_;
  Range y_;
};

std::string open_document() {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw schema_error("write failed for '" + path.string() + "'");
}

std::string stem_for(const RegressionFit& fit) { return fit.label.empty() ? "fit" : fit.label; }

Series fitted_curve(const RegressionFit& fit, const std::string& color) {
  Series curve{"fit " + stem_for(fit), {}, true, color};
  if (fit.design.empty()) return curve;
  const double lo = std::max<double>(2.0, static_cast<double>(fit.design.front().n));
  const double hi = static_cast<double>(fit.design.back().n);
  const ModelCoefficients model = fit.coefficients();
  constexpr int kSteps = 100;
  for (int s = 0; s <= kSteps; ++s) {
    const double n = lo + (hi - lo) * s / kSteps;
    curve.points.emplace_back(n, model(n));
  }
  return curve;
}

Series observed_points(const RegressionFit& fit, const std::string& color) {
  Series points{"observed " + stem_for(fit), {}, false, color};
  for (const auto& row : fit.design) points.points.emplace_back(row.x2, row.y);
  return points;
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string render(const Chart& chart) {
  Range xr;
  Range yr;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      xr.include(x);
      yr.include(y);
    }
  }
  if (chart.reference_y) yr.include(*chart.reference_y);
  xr.pad();
  yr.pad();
  const Canvas canvas(xr, yr);

  std::ostringstream out;
  out << open_document();
  canvas.frame(out, chart.title, chart.x_label, chart.y_label);

  if (chart.reference_y) {
    out << "<line x1=\"" << kLeft << "\" y1=\"" << num(canvas.py(*chart.reference_y))
        << "\" x2=\"" << kLeft + Canvas::plot_w() << "\" y2=\""
        << num(canvas.py(*chart.reference_y))
        << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }

  double legend_y = kTop + 10;
  for (const auto& s : chart.series) {
    if (s.connect) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) out << num(canvas.px(x)) << ',' << num(canvas.py(y)) << ' ';
      out << "\"/>\n";
    } else {
      for (const auto& [x, y] : s.points) {
        out << "<circle cx=\"" << num(canvas.px(x)) << "\" cy=\"" << num(canvas.py(y))
            << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
      }
    }
    if (!s.name.empty()) {
      const double lx = kWidth - kRight + 12;
      out << "<rect x=\"" << lx << "\" y=\"" << legend_y - 8 << "\" width=\"10\" height=\"10\" "
          << "fill=\"" << s.color << "\"/>\n";
      out << "<text x=\"" << lx + 14 << "\" y=\"" << legend_y + 1 << "\" font-size=\"11\">"
          << escape(s.name) << "</text>\n";
      legend_y += 18;
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string render(const Histogram& hist, const std::string& title, const std::string& x_label) {
  Range xr;
  Range yr;
  xr.include(hist.start);
  xr.include(hist.start + hist.width * static_cast<double>(hist.counts.size()));
  yr.include(0.0);
  for (auto c : hist.counts) yr.include(static_cast<double>(c));
  yr.hi += 0.5;
  xr.pad();
  const Canvas canvas(xr, yr);

  std::ostringstream out;
  out << open_document();
  canvas.frame(out, title, x_label, "Frequency");
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double x0 = hist.start + hist.width * static_cast<double>(b);
    const double x1 = x0 + hist.width;
    const double top = canvas.py(static_cast<double>(hist.counts[b]));
    out << "<rect x=\"" << num(canvas.px(x0)) << "\" y=\"" << num(top) << "\" width=\""
        << num(canvas.px(x1) - canvas.px(x0)) << "\" height=\"" << num(canvas.py(0.0) - top)
        << "\" fill=\"#1f77b4\" stroke=\"white\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::string> write_fit_plots(const RegressionFit& fit, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string stem = stem_for(fit);
  const DiagnosticSeries diag = diagnostics_series(fit);
  std::vector<std::string> written;

  const auto emit = [&](const std::string& name, const std::string& content) {
    const fs::path path = fs::path(out_dir) / (stem + "_" + name + ".svg");
    write_file(path, content);
    written.push_back(path.string());
  };

  Chart normal{"Normal probability plot (" + stem + ")", "Residual", "Normal score", {}, {}};
  Series np{"", {}, false, kPalette[0]};
  for (const auto& p : diag.normal) np.points.emplace_back(p.residual, p.z);
  normal.series.push_back(std::move(np));
  emit("normal_probability", render(normal));

  Chart vs_fit{"Residuals versus fitted values (" + stem + ")", "Fitted value", "Residual", {}, 0.0};
  Series vf{"", diag.fit_vs_residual, false, kPalette[0]};
  vs_fit.series.push_back(std::move(vf));
  emit("residual_vs_fit", render(vs_fit));

  emit("residual_histogram", render(diag.histogram, "Histogram of residuals (" + stem + ")", "Residual"));

  Chart order{"Residuals versus observation order (" + stem + ")", "Observation order", "Residual", {}, 0.0};
  Series os{"", {}, true, kPalette[0]};
  for (const auto& [t, e] : diag.order_vs_residual) os.points.emplace_back(static_cast<double>(t), e);
  order.series.push_back(os);
  os.connect = false;
  order.series.push_back(std::move(os));
  emit("residual_vs_order", render(order));

  Chart times{"Mean sorting time versus n (" + stem + ")", "n", "Mean time (s)", {}, {}};
  times.series.push_back(observed_points(fit, kPalette[0]));
  times.series.push_back(fitted_curve(fit, kPalette[1]));
  emit("times_vs_n", render(times));

  return written;
}

std::string write_comparison_plot(const std::vector<RegressionFit>& fits,
                                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  Chart chart{"Mean sorting time versus n", "n", "Mean time (s)", {}, {}};
  std::size_t colour = 0;
  for (const auto& fit : fits) {
    const char* c = kPalette[colour++ % std::size(kPalette)];
    chart.series.push_back(observed_points(fit, c));
    chart.series.push_back(fitted_curve(fit, c));
  }
  const fs::path path = fs::path(out_dir) / "comparison_times_vs_n.svg";
  write_file(path, render(chart));
  return path.string();
}

}  // namespace ksortlab::svg
