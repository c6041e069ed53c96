#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksortlab/stats.hpp"

namespace ksortlab::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool connect = false;  // polyline instead of markers
  std::string color = "#1f77b4";
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::optional<double> reference_y;  // dashed horizontal line
};

// Self-contained SVG 1.1 document.
std::string render(const Chart& chart);
std::string render(const Histogram& hist, const std::string& title, const std::string& x_label);

std::string escape(const std::string& text);

// The four residual diagnostics plus a times-vs-n curve for one fit; returns
// the written file paths.
std::vector<std::string> write_fit_plots(const RegressionFit& fit, const std::string& out_dir);

// Observed points and fitted curves of several fits on one chart.
std::string write_comparison_plot(const std::vector<RegressionFit>& fits,
                                  const std::string& out_dir);

}  // namespace ksortlab::svg
