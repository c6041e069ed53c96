#include "ksortlab/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ksortlab/errors.hpp"
#include "ksortlab/special_functions.hpp"

namespace ksortlab {

namespace {

constexpr const char* kColumnNames[3] = {"intercept", "n*log2(n)", "n"};

struct LeastSquares {
  Eigen::VectorXd coef;
  Eigen::VectorXd fitted;
  Eigen::VectorXd leverage;
  Eigen::MatrixXd xtx_inverse;
  double ss_res = 0.0;
};

// QR solve of y ~ X with columns scaled to unit norm first. Scaling does not
// change the least-squares solution but makes the pivoted R diagonal a
// usable conditioning signal for columns of wildly different magnitude.
LeastSquares solve_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 std::span<const char* const> names) {
  const Eigen::Index cols = x.cols();
  Eigen::VectorXd scale = x.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (scale(c) == 0.0) {
      throw fit_error(std::string("design column '") + names[c] + "' is identically zero");
    }
  }
  const Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  const double r_max = std::fabs(r(0, 0));
  const double r_min = std::fabs(r(cols - 1, cols - 1));
  const double condition = r_min > 0.0 ? r_max / r_min : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxDesignCondition)) {
    const auto worst = qr.colsPermutation().indices()(cols - 1);
    std::ostringstream msg;
    msg << "design is singular or near-singular (condition estimate " << condition
        << "): column '" << names[worst] << "' is collinear with the remaining columns";
    throw fit_error(msg.str());
  }

  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cols, cols));
  const auto& perm = qr.colsPermutation();

  LeastSquares out;
  const Eigen::VectorXd coef_scaled = qr.solve(y);
  out.coef = coef_scaled.cwiseQuotient(scale);
  out.fitted = x * out.coef;
  out.ss_res = (y - out.fitted).squaredNorm();

  // Thin Q = X_s P R^-1; the hat diagonal is its row-wise squared norm.
  const Eigen::MatrixXd q_thin = (xs * perm) * r_inv;
  out.leverage = q_thin.rowwise().squaredNorm();

  const Eigen::MatrixXd scaled_inverse = perm * (r_inv * r_inv.transpose()) * perm.transpose();
  out.xtx_inverse =
      scale.cwiseInverse().asDiagonal() * scaled_inverse * scale.cwiseInverse().asDiagonal();
  return out;
}

double centered_ss(const Eigen::VectorXd& v, double mean) {
  return (v.array() - mean).square().sum();
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

std::string fixed_sig(double v, int significant) {
  if (v == 0.0 || !std::isfinite(v)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }
  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  const int decimals = std::max(0, significant - 1 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

double ModelCoefficients::operator()(double n) const {
  return b0 + b1 * n * std::log2(n) + b2 * n;
}

std::vector<DesignRow> build_design(std::span<const BenchRecord> records) {
  if (records.size() < 4) {
    throw fit_error("need at least 4 observations for a 3-parameter fit, got " +
                    std::to_string(records.size()));
  }
  std::vector<DesignRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    if (r.algorithm != records.front().algorithm) {
      throw fit_error("design mixes algorithms; select one algorithm first");
    }
    if (!r.mean_seconds) {
      throw fit_error("record for n=" + std::to_string(r.n) + " has no mean_seconds");
    }
    rows.push_back(DesignRow{r.n, n_log2_n(r.n), static_cast<double>(r.n), *r.mean_seconds});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const DesignRow& a, const DesignRow& b) { return a.n < b.n; });
  return rows;
}

std::vector<DesignRow> build_design(std::span<const BenchRecord> records, Algorithm algorithm) {
  std::vector<BenchRecord> selected;
  std::copy_if(records.begin(), records.end(), std::back_inserter(selected),
               [&](const BenchRecord& r) { return r.algorithm == algorithm; });
  return build_design(selected);
}

RegressionFit ols_fit(std::span<const DesignRow> design, std::string label) {
  const auto m = static_cast<Eigen::Index>(design.size());
  if (m < 4) {
    throw fit_error("need at least 4 observations for a 3-parameter fit, got " +
                    std::to_string(m));
  }

  Eigen::MatrixXd x(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index t = 0; t < m; ++t) {
    const auto& row = design[static_cast<std::size_t>(t)];
    x(t, 0) = 1.0;
    x(t, 1) = row.x1;
    x(t, 2) = row.x2;
    y(t) = row.y;
  }

  const LeastSquares full = solve_least_squares(x, y, kColumnNames);
  const LeastSquares first = solve_least_squares(x.leftCols(2), y, kColumnNames);

  RegressionFit fit;
  fit.label = std::move(label);
  fit.design.assign(design.begin(), design.end());
  fit.coef = full.coef;

  const double y_mean = y.mean();
  auto& anova = fit.anova;
  anova.df_reg = 2;
  anova.df_res = static_cast<int>(m) - 3;
  anova.df_tot = static_cast<int>(m) - 1;
  anova.ss_res = full.ss_res;
  anova.ss_reg = centered_ss(full.fitted, y_mean);
  anova.ss_tot = centered_ss(y, y_mean);
  anova.ms_reg = anova.ss_reg / anova.df_reg;
  anova.ms_res = anova.ss_res / anova.df_res;
  anova.f = anova.ms_reg / anova.ms_res;
  anova.p_f = special::f_upper_p(anova.f, anova.df_reg, anova.df_res);

  fit.seq_ss.ss_x1_first = centered_ss(first.fitted, y_mean);
  fit.seq_ss.ss_x2_added = first.ss_res - full.ss_res;

  fit.s = std::sqrt(anova.ms_res);
  fit.r2 = anova.ss_reg / anova.ss_tot;
  fit.r2_adj = 1.0 - (anova.ss_res / anova.df_res) / (anova.ss_tot / anova.df_tot);

  for (int c = 0; c < 3; ++c) {
    fit.se(c) = fit.s * std::sqrt(full.xtx_inverse(c, c));
    fit.t(c) = fit.coef(c) / fit.se(c);
    fit.p(c) = special::student_t_two_sided_p(fit.t(c), anova.df_res);
  }

  fit.obs_table.resize(static_cast<std::size_t>(m));
  double press = 0.0;
  for (Eigen::Index t = 0; t < m; ++t) {
    auto& obs = fit.obs_table[static_cast<std::size_t>(t)];
    const double h = full.leverage(t);
    obs.fit = full.fitted(t);
    obs.residual = y(t) - obs.fit;
    obs.leverage = h;
    obs.se_fit = fit.s * std::sqrt(h);
    obs.st_resid = fit.s > 0.0 ? obs.residual / (fit.s * std::sqrt(1.0 - h)) : 0.0;
    obs.flagged = std::fabs(obs.st_resid) > kLargeResidualThreshold;
    const double loo = obs.residual / (1.0 - h);
    press += loo * loo;
  }
  fit.press = press;
  fit.r2_pred = 1.0 - press / anova.ss_tot;

  // Two-predictor VIF: both predictors share 1 / (1 - r^2).
  const Eigen::VectorXd x1c = x.col(1).array() - x.col(1).mean();
  const Eigen::VectorXd x2c = x.col(2).array() - x.col(2).mean();
  const double r = x1c.dot(x2c) / (x1c.norm() * x2c.norm());
  fit.vif = 1.0 / (1.0 - r * r);
  return fit;
}

double predict(const ModelCoefficients& model, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("predict: n must be >= 2");
  return model.b0 + model.b1 * n_log2_n(n) + model.b2 * static_cast<double>(n);
}

double predict(const RegressionFit& fit, std::uint64_t n) {
  return predict(fit.coefficients(), n);
}

DiffModel diff_model(const ModelCoefficients& k, const ModelCoefficients& h) {
  return DiffModel{k.b0 - h.b0, k.b1 - h.b1, k.b2 - h.b2};
}

DiffModel diff_model(const RegressionFit& k, const RegressionFit& h) {
  const bool same_sizes =
      std::equal(k.design.begin(), k.design.end(), h.design.begin(), h.design.end(),
                 [](const DesignRow& a, const DesignRow& b) { return a.n == b.n; });
  if (!same_sizes) throw fit_error("diff_model: fits were made over different size lists");
  return diff_model(k.coefficients(), h.coefficients());
}

CrossoverEstimate crossover_empirical(std::span<const BenchRecord> records) {
  std::vector<std::pair<std::uint64_t, double>> k_times;
  std::vector<std::pair<std::uint64_t, double>> h_times;
  for (const auto& r : records) {
    if (!r.mean_seconds) continue;
    auto& dest = r.algorithm == Algorithm::ksort ? k_times : h_times;
    dest.emplace_back(r.n, *r.mean_seconds);
  }
  std::sort(k_times.begin(), k_times.end());
  std::sort(h_times.begin(), h_times.end());

  // Walk the common sizes in ascending order.
  std::vector<std::pair<std::uint64_t, int>> signs;
  auto hk = h_times.begin();
  for (const auto& [n, tk] : k_times) {
    while (hk != h_times.end() && hk->first < n) ++hk;
    if (hk != h_times.end() && hk->first == n) signs.emplace_back(n, sign_of(tk - hk->second));
  }

  CrossoverEstimate estimate;
  estimate.method = CrossoverMethod::empirical_bracket;
  for (std::size_t t = 1; t < signs.size(); ++t) {
    if (signs[t].second != signs[t - 1].second) {
      const auto lo = signs[t - 1].first;
      const auto hi = signs[t].first;
      ++estimate.sign_changes;
      estimate.bracket = std::make_pair(lo, hi);
      estimate.n_star = 0.5 * (static_cast<double>(lo) + static_cast<double>(hi));
    }
  }
  return estimate;
}

CrossoverEstimate crossover_model(const DiffModel& diff, std::uint64_t n_lo, std::uint64_t n_hi) {
  if (n_lo < 2 || n_hi <= n_lo) {
    throw bracket_error("crossover bracket must satisfy 2 <= lo < hi, got [" +
                        std::to_string(n_lo) + ", " + std::to_string(n_hi) + "]");
  }
  const ModelCoefficients f = diff.as_model();
  double lo = static_cast<double>(n_lo);
  double hi = static_cast<double>(n_hi);
  const int s_lo = sign_of(f(lo));
  const int s_hi = sign_of(f(hi));

  CrossoverEstimate estimate;
  estimate.method = CrossoverMethod::model_root;
  estimate.bracket = std::make_pair(n_lo, n_hi);
  if (s_lo == 0) {
    estimate.n_star = lo;
    return estimate;
  }
  if (s_hi == 0) {
    estimate.n_star = hi;
    return estimate;
  }
  if (s_lo == s_hi) {
    throw bracket_error("difference model has the same sign at n=" + std::to_string(n_lo) +
                        " and n=" + std::to_string(n_hi));
  }

  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    const int s_mid = sign_of(f(mid));
    if (s_mid == 0) {
      lo = hi = mid;
      break;
    }
    (s_mid == s_lo ? lo : hi) = mid;
  }
  estimate.bracket = std::make_pair(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi));
  estimate.n_star = 0.5 * (lo + hi);
  return estimate;
}

Histogram scott_histogram(std::span<const double> values) {
  Histogram hist;
  if (values.empty()) return hist;
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;
  const double m = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;

  hist.start = lo;
  hist.width = 3.49 * sd * std::cbrt(1.0 / m);
  std::size_t bins = 1;
  if (hist.width > 0.0 && hi > lo) {
    bins = static_cast<std::size_t>(std::ceil((hi - lo) / hist.width));
    bins = std::max<std::size_t>(bins, 1);
  } else {
    hist.width = hi > lo ? hi - lo : 1.0;
  }
  hist.counts.assign(bins, 0);
  for (double v : values) {
    auto bin = static_cast<std::size_t>(std::floor((v - lo) / hist.width));
    ++hist.counts[std::min(bin, bins - 1)];
  }
  return hist;
}

DiagnosticSeries diagnostics_series(const RegressionFit& fit) {
  DiagnosticSeries series;
  const std::size_t m = fit.obs_table.size();
  std::vector<double> residuals;
  residuals.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    const auto& obs = fit.obs_table[t];
    residuals.push_back(obs.residual);
    series.fit_vs_residual.emplace_back(obs.fit, obs.residual);
    series.order_vs_residual.emplace_back(t + 1, obs.residual);
  }

  std::vector<double> ordered = residuals;
  std::sort(ordered.begin(), ordered.end());
  for (std::size_t t = 0; t < m; ++t) {
    const double position = (static_cast<double>(t + 1) - 0.375) / (static_cast<double>(m) + 0.25);
    series.normal.push_back({position, special::normal_quantile(position), ordered[t]});
  }
  series.histogram = scott_histogram(residuals);
  return series;
}

bool PrintedValue::matches(double x) const {
  // Slack of a few ulps so exact half-unit boundaries are not lost to
  // decimal-to-binary rounding.
  return std::fabs(x - value) <= half_unit * (1.0 + 1e-9);
}

PrintedValue printed(std::string_view text) {
  PrintedValue out;
  out.text = std::string(text);
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto res = std::from_chars(begin, end, out.value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("printed: not a decimal number: '" + out.text + "'");
  }
  const auto dot = text.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  out.half_unit = 0.5 * std::pow(10.0, -decimals);
  return out;
}

namespace reference {

PrintedModel ksort_model() {
  return {printed("0.7516"), printed("0.00000048"), printed("-0.00001048")};
}

PrintedModel heapsort_model() {
  return {printed("0.12574"), printed("0.00000013"), printed("-0.00000256")};
}

PrintedModel difference_model() {
  return {printed("0.52586"), printed("0.00000035"), printed("-0.00000792")};
}

}  // namespace reference

std::vector<DiffDiscrepancy> compare_diff(const DiffModel& computed,
                                          const reference::PrintedModel& reference) {
  std::vector<DiffDiscrepancy> out;
  const std::pair<const char*, std::pair<double, const PrintedValue*>> items[] = {
      {"d0", {computed.d0, &reference.b0}},
      {"d1", {computed.d1, &reference.b1}},
      {"d2", {computed.d2, &reference.b2}},
  };
  for (const auto& [name, item] : items) {
    if (!item.second->matches(item.first)) {
      out.push_back(DiffDiscrepancy{name, item.first, *item.second});
    }
  }
  return out;
}

std::string format_fit_report(const RegressionFit& fit) {
  std::ostringstream out;
  const std::string response = fit.label.empty() ? "y" : "y(" + fit.label + ")";
  const auto signed_term = [](double v, const char* term) {
    std::string s = v < 0 ? " - " : " + ";
    return s + fixed_sig(std::fabs(v), 5) + term;
  };

  out << "The regression equation is\n"
      << response << " = " << fixed_sig(fit.b0(), 5) << signed_term(fit.b1(), " n log2(n)")
      << signed_term(fit.b2(), " n") << "\n\n";

  char line[256];
  std::snprintf(line, sizeof line, "%-12s %16s %16s %8s %7s %10s\n", "Predictor", "Coef",
                "SE Coef", "T", "P", "VIF");
  out << line;
  const char* predictors[3] = {"Constant", "n log2(n)", "n"};
  for (int c = 0; c < 3; ++c) {
    std::snprintf(line, sizeof line, "%-12s %16s %16s %8.2f %7.3f %10s\n", predictors[c],
                  fixed_sig(fit.coef(c), 5).c_str(), fixed_sig(fit.se(c), 5).c_str(), fit.t(c),
                  fit.p(c), c == 0 ? "" : fmt("%.3f", fit.vif).c_str());
    out << line;
  }
  out << '\n';
  out << "S = " << fmt("%.6g", fit.s) << "   R-Sq = " << fmt("%.1f", 100 * fit.r2)
      << "%   R-Sq(adj) = " << fmt("%.1f", 100 * fit.r2_adj) << "%\n";
  out << "PRESS = " << fmt("%.6g", fit.press) << "   R-Sq(pred) = "
      << fmt("%.2f", 100 * fit.r2_pred) << "%\n\n";

  const auto& a = fit.anova;
  out << "Analysis of Variance\n\n";
  std::snprintf(line, sizeof line, "%-16s %4s %12s %12s %10s %7s\n", "Source", "DF", "SS", "MS",
                "F", "P");
  out << line;
  std::snprintf(line, sizeof line, "%-16s %4d %12.6g %12.6g %10.2f %7.3f\n", "Regression",
                a.df_reg, a.ss_reg, a.ms_reg, a.f, a.p_f);
  out << line;
  std::snprintf(line, sizeof line, "%-16s %4d %12.6g %12.6g\n", "Residual Error", a.df_res,
                a.ss_res, a.ms_res);
  out << line;
  std::snprintf(line, sizeof line, "%-16s %4d %12.6g\n\n", "Total", a.df_tot, a.ss_tot);
  out << line;

  std::snprintf(line, sizeof line, "%-16s %4s %12s\n", "Source", "DF", "Seq SS");
  out << line;
  std::snprintf(line, sizeof line, "%-16s %4d %12.6g\n", "n log2(n)", 1, fit.seq_ss.ss_x1_first);
  out << line;
  std::snprintf(line, sizeof line, "%-16s %4d %12.6g\n\n", "n", 1, fit.seq_ss.ss_x2_added);
  out << line;

  std::snprintf(line, sizeof line, "%4s %14s %10s %10s %10s %10s %9s\n", "Obs", "n log2(n)",
                response.c_str(), "Fit", "SE Fit", "Residual", "St Resid");
  out << line;
  bool any_flagged = false;
  for (std::size_t t = 0; t < fit.obs_table.size(); ++t) {
    const auto& obs = fit.obs_table[t];
    const auto& row = fit.design[t];
    any_flagged = any_flagged || obs.flagged;
    std::snprintf(line, sizeof line, "%4zu %14.0f %10.4f %10.4f %10.4f %10.4f %8.2f%s\n", t + 1,
                  row.x1, row.y, obs.fit, obs.se_fit, obs.residual, obs.st_resid,
                  obs.flagged ? "R" : "");
    out << line;
  }
  if (any_flagged) out << "\nR denotes an observation with a large standardized residual.\n";
  return out.str();
}

}  // namespace ksortlab
