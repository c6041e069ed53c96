#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ksortlab/bench.hpp"

namespace ksortlab {

// One observation of the cost model y = b0 + b1 * n log2 n + b2 * n.
struct DesignRow {
  std::uint64_t n = 0;
  double x1 = 0.0;  // n log2 n
  double x2 = 0.0;  // n
  double y = 0.0;   // mean seconds

  friend bool operator==(const DesignRow&, const DesignRow&) = default;
};

// Coefficients of y = b0 + b1 * n log2 n + b2 * n.
struct ModelCoefficients {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  double operator()(double n) const;
  Eigen::Vector3d vector() const { return {b0, b1, b2}; }
};

struct AnovaTable {
  double ss_reg = 0.0;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  double ms_reg = 0.0;
  double ms_res = 0.0;
  double f = 0.0;
  double p_f = 0.0;
  int df_reg = 2;
  int df_res = 0;
  int df_tot = 0;
};

// Sequential sums of squares: n log2 n entered first, then n.
struct SequentialSS {
  double ss_x1_first = 0.0;
  double ss_x2_added = 0.0;
};

struct ObservationDiagnostics {
  double fit = 0.0;
  double se_fit = 0.0;
  double residual = 0.0;
  double st_resid = 0.0;
  double leverage = 0.0;
  bool flagged = false;  // |st_resid| > 2
};

struct RegressionFit {
  std::string label;
  std::vector<DesignRow> design;
  Eigen::Vector3d coef = Eigen::Vector3d::Zero();
  Eigen::Vector3d se = Eigen::Vector3d::Zero();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  double s = 0.0;
  double r2 = 0.0;
  double r2_adj = 0.0;
  double r2_pred = 0.0;
  double press = 0.0;
  double vif = 0.0;
  AnovaTable anova;
  SequentialSS seq_ss;
  std::vector<ObservationDiagnostics> obs_table;

  double b0() const { return coef(0); }
  double b1() const { return coef(1); }
  double b2() const { return coef(2); }
  ModelCoefficients coefficients() const { return {coef(0), coef(1), coef(2)}; }
};

inline constexpr double kLargeResidualThreshold = 2.0;

// Rows for one algorithm's timing records, sorted by n. Needs at least four
// rows so the residual has a degree of freedom.
std::vector<DesignRow> build_design(std::span<const BenchRecord> records);

// Same, after selecting `algorithm`'s rows out of a mixed record list.
std::vector<DesignRow> build_design(std::span<const BenchRecord> records, Algorithm algorithm);

// Least squares on [1, n log2 n, n] through a column-pivoted Householder QR
// of the column-equilibrated design. Throws fit_error on a singular or
// near-singular design.
RegressionFit ols_fit(std::span<const DesignRow> design, std::string label = {});

// 2-norm condition estimate beyond which ols_fit refuses the design.
inline constexpr double kMaxDesignCondition = 1e10;

// b0 + b1 n log2 n + b2 n; n >= 2.
double predict(const RegressionFit& fit, std::uint64_t n);
double predict(const ModelCoefficients& model, std::uint64_t n);

struct DiffModel {
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  ModelCoefficients as_model() const { return {d0, d1, d2}; }
};

DiffModel diff_model(const ModelCoefficients& k, const ModelCoefficients& h);

// Requires both fits to share the same design sizes.
DiffModel diff_model(const RegressionFit& k, const RegressionFit& h);

enum class CrossoverMethod { empirical_bracket, model_root };

struct CrossoverEstimate {
  CrossoverMethod method = CrossoverMethod::empirical_bracket;
  // Empty when no sign change was found.
  std::optional<double> n_star;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> bracket;
  // Empirical method: how many adjacent size pairs flip sign in total.
  std::size_t sign_changes = 0;

  bool found() const { return n_star.has_value(); }
};

// Last adjacent common size pair where sign(mean_K - mean_H) flips, i.e. the
// point past which the ordering holds for the rest of the grid. n_star is
// the bracket midpoint.
CrossoverEstimate crossover_empirical(std::span<const BenchRecord> records);

// Bisection of the difference model over [n_lo, n_hi] down to one element.
// Throws bracket_error when the ends do not straddle a sign change.
CrossoverEstimate crossover_model(const DiffModel& diff, std::uint64_t n_lo, std::uint64_t n_hi);

struct NormalPlotPoint {
  double position = 0.0;  // (t - 0.375) / (m + 0.25)
  double z = 0.0;         // standard-normal quantile of position
  double residual = 0.0;  // t-th smallest residual
};

struct Histogram {
  double start = 0.0;
  double width = 0.0;
  std::vector<std::size_t> counts;
};

struct DiagnosticSeries {
  std::vector<NormalPlotPoint> normal;
  std::vector<std::pair<double, double>> fit_vs_residual;
  Histogram histogram;
  std::vector<std::pair<std::size_t, double>> order_vs_residual;  // 1-based order
};

DiagnosticSeries diagnostics_series(const RegressionFit& fit);

// Scott's-rule histogram.
Histogram scott_histogram(std::span<const double> values);

// Value as printed with a fixed number of decimals; `half_unit` is half of
// one unit in the last printed digit.
struct PrintedValue {
  double value = 0.0;
  double half_unit = 0.0;
  std::string text;

  bool matches(double x) const;
};

PrintedValue printed(std::string_view text);

// Printed coefficients for the bundled reference timings.
namespace reference {
struct PrintedModel {
  PrintedValue b0;
  PrintedValue b1;
  PrintedValue b2;

  ModelCoefficients coefficients() const { return {b0.value, b1.value, b2.value}; }
};

PrintedModel ksort_model();
PrintedModel heapsort_model();
PrintedModel difference_model();
}  // namespace reference

struct DiffDiscrepancy {
  std::string coefficient;
  double computed = 0.0;
  PrintedValue reference;
};

// Coefficients of `computed` that disagree with `reference` beyond printed
// precision.
std::vector<DiffDiscrepancy> compare_diff(const DiffModel& computed,
                                          const reference::PrintedModel& reference);

// Tabular text report: coefficient block, S/R-Sq/PRESS, ANOVA,
// sequential SS and the observation table.
std::string format_fit_report(const RegressionFit& fit);

}  // namespace ksortlab
