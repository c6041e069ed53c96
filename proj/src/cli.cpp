#include "ksortlab/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ksortlab/bench.hpp"
#include "ksortlab/errors.hpp"
#include "ksortlab/fit_io.hpp"
#include "ksortlab/sort_core.hpp"
#include "ksortlab/stats.hpp"
#include "ksortlab/svg_plot.hpp"
#include "ksortlab/workload.hpp"

namespace ksortlab::cli {

namespace {

constexpr std::uint64_t kLakh = 100000;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    const auto end = pos == std::string_view::npos ? text.size() : pos;
    parts.push_back(text.substr(start, end - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_count(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open '" + path + "' for writing");
  return out;
}

struct GenerateArgs {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::string kind = "uniform01";
  std::string out;
};

struct SortArgs {
  std::string in;
  std::string algo = "ksort";
  bool counts = false;
  std::string out;
};

struct BenchArgs {
  std::string sizes;
  std::size_t reps = 500;
  std::uint64_t seed = 0;
  std::string algos = "ksort,heapsort";
  std::string mode = "wall_time";
  std::string out;
  std::size_t warmup = 0;
  bool unpaired = false;
};

struct FitArgs {
  std::string in;
  std::string algo = "ksort";
  std::string report_out;
  std::string json_out;
};

struct PredictArgs {
  std::string fit_json;
  std::vector<std::string> n;
};

struct CrossoverArgs {
  std::string in;
  std::string fit_k;
  std::string fit_h;
  std::string lo;
  std::string hi;
};

struct ReportArgs {
  std::vector<std::string> fit_json;
  std::string out_dir;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  const WorkloadSpec spec{static_cast<std::size_t>(args.n), args.seed,
                          parse_workload_kind(args.kind)};
  std::ostringstream header;
  header << "ksortlab generate n=" << spec.n << " seed=" << spec.seed
         << " kind=" << to_string(spec.kind);
  err << "# " << header.str() << '\n';

  const KeyArray keys = generate(spec);
  if (args.out.empty()) {
    write_keys_text(out, keys, header.str());
  } else {
    save_keys(args.out, keys, header.str());
  }
  return 0;
}

int cmd_sort(const SortArgs& args, std::ostream& out, std::ostream& err) {
  const Algorithm algorithm = parse_algorithm(args.algo);
  err << "# ksortlab sort in=" << args.in << " algo=" << to_string(algorithm)
      << " counts=" << (args.counts ? "yes" : "no") << '\n';

  KeyArray keys = load_keys(args.in);
  OpCounts counts;
  sort_with(algorithm, keys, args.counts ? &counts : nullptr);

  const std::string header = std::string("ksortlab sort algo=") + to_string(algorithm) +
                             " n=" + std::to_string(keys.size());
  if (args.out.empty()) {
    write_keys_text(out, keys, header);
  } else {
    save_keys(args.out, keys, header);
  }
  if (args.counts) {
    // Keep the data stream clean when the sorted keys go to stdout.
    std::ostream& dest = args.out.empty() ? err : out;
    dest << "ops algorithm=" << to_string(algorithm) << " n=" << keys.size()
         << " comparisons=" << counts.comparisons << " moves=" << counts.moves
         << " max_pending_ranges=" << counts.max_pending_ranges << '\n';
  }
  return 0;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  for (auto n : parse_size_list(args.sizes)) config.sizes.push_back(static_cast<std::size_t>(n));
  config.reps = args.reps;
  config.base_seed = args.seed;
  config.algorithms.clear();
  for (auto name : split(args.algos, ',')) {
    if (!name.empty()) config.algorithms.push_back(parse_algorithm(name));
  }
  config.options.mode = parse_bench_mode(args.mode);
  config.options.warmup = args.warmup;
  config.options.pairing = args.unpaired ? Pairing::unpaired : Pairing::paired;
  if (config.reps < 1) throw std::invalid_argument("--reps must be >= 1");

  err << "# ksortlab bench sizes=" << args.sizes << " reps=" << config.reps
      << " seed=" << config.base_seed << " algos=" << args.algos
      << " mode=" << to_string(config.options.mode) << " warmup=" << config.options.warmup
      << " pairing=" << (args.unpaired ? "unpaired" : "paired") << '\n';

  const auto records = run_grid(config, [&](const BenchRecord& r) {
    err << "#   " << to_string(r.algorithm) << " n=" << r.n;
    if (r.mean_seconds) err << " mean_seconds=" << *r.mean_seconds;
    if (r.comparisons_mean) err << " comparisons_mean=" << format_count(*r.comparisons_mean);
    err << '\n';
  });

  if (args.out.empty()) {
    write_csv(out, records);
  } else {
    save_csv(args.out, records);
  }
  return 0;
}

int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err) {
  const Algorithm algorithm = parse_algorithm(args.algo);
  err << "# ksortlab fit in=" << args.in << " algo=" << to_string(algorithm) << '\n';

  const auto records = load_csv(args.in);
  const auto design = build_design(records, algorithm);
  const RegressionFit fit = ols_fit(design, to_string(algorithm));

  const std::string report = format_fit_report(fit);
  if (args.report_out.empty()) {
    out << report;
  } else {
    open_output(args.report_out) << report;
  }
  if (!args.json_out.empty()) save_fit_json(args.json_out, fit);
  return 0;
}

int cmd_predict(const PredictArgs& args, std::ostream& out, std::ostream& err) {
  err << "# ksortlab predict fit-json=" << args.fit_json << '\n';
  const RegressionFit fit = load_fit_json(args.fit_json);
  out << "n,predicted_seconds\n";
  for (const auto& text : args.n) {
    const auto n = parse_size(text);
    out << n << ',' << format_count(predict(fit, n)) << '\n';
  }
  return 0;
}

void print_diff(std::ostream& out, const DiffModel& diff) {
  auto term = [](double v) {
    return std::string(v < 0 ? " - " : " + ") + format_count(std::abs(v));
  };
  out << "difference model: y(K) - y(H) = " << format_count(diff.d0) << term(diff.d1)
      << " n log2(n)" << term(diff.d2) << " n\n";
}

void print_estimate(std::ostream& out, const CrossoverEstimate& est) {
  const char* method =
      est.method == CrossoverMethod::empirical_bracket ? "empirical_bracket" : "model_root";
  if (!est.found()) {
    out << "method=" << method << " no crossover in range\n";
    return;
  }
  out << "method=" << method << " n_star=" << format_count(*est.n_star);
  if (est.bracket) out << " bracket=(" << est.bracket->first << ", " << est.bracket->second << ")";
  out << '\n';
}

int cmd_crossover(const CrossoverArgs& args, std::ostream& out, std::ostream& err) {
  const bool model_mode = !args.fit_k.empty() || !args.fit_h.empty();
  if (model_mode == !args.in.empty()) {
    throw std::invalid_argument("give either --in CSV or both --fitK and --fitH");
  }
  err << "# ksortlab crossover";
  if (model_mode) {
    err << " fitK=" << args.fit_k << " fitH=" << args.fit_h;
  } else {
    err << " in=" << args.in;
  }
  err << " lo=" << args.lo << " hi=" << args.hi << '\n';

  std::optional<DiffModel> diff;
  if (model_mode) {
    if (args.fit_k.empty() || args.fit_h.empty()) {
      throw std::invalid_argument("model mode needs both --fitK and --fitH");
    }
    diff = diff_model(load_fit_json(args.fit_k), load_fit_json(args.fit_h));
  } else {
    const auto records = load_csv(args.in);
    print_estimate(out, crossover_empirical(records));
    try {
      diff = diff_model(ols_fit(build_design(records, Algorithm::ksort)),
                        ols_fit(build_design(records, Algorithm::heapsort)));
    } catch (const fit_error& e) {
      err << "# no difference model: " << e.what() << '\n';
    }
  }
  if (diff) print_diff(out, *diff);

  const bool have_bracket = !args.lo.empty() || !args.hi.empty();
  if (model_mode && !have_bracket) throw bracket_error("model mode needs --lo and --hi");
  if (have_bracket) {
    if (!diff) throw fit_error("no difference model available for a model crossover");
    if (args.lo.empty() || args.hi.empty()) throw bracket_error("give both --lo and --hi");
    print_estimate(out, crossover_model(*diff, parse_size(args.lo), parse_size(args.hi)));
  }
  return 0;
}

int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
  err << "# ksortlab report out-dir=" << args.out_dir;
  for (const auto& f : args.fit_json) err << " fit-json=" << f;
  err << '\n';

  std::filesystem::create_directories(args.out_dir);
  std::vector<RegressionFit> fits;
  for (const auto& path : args.fit_json) fits.push_back(load_fit_json(path));
  for (const auto& fit : fits) {
    for (const auto& path : svg::write_fit_plots(fit, args.out_dir)) out << path << '\n';
  }
  if (fits.size() > 1) out << svg::write_comparison_plot(fits, args.out_dir) << '\n';
  return 0;
}

}  // namespace

std::uint64_t parse_size(std::string_view text) {
  std::string_view number = text;
  std::uint64_t unit = 1;
  for (std::string_view suffix : {"lakhs", "lakh"}) {
    if (number.size() > suffix.size() && number.ends_with(suffix)) {
      number.remove_suffix(suffix.size());
      unit = kLakh;
      break;
    }
  }
  const char* end = number.data() + number.size();
  std::uint64_t whole = 0;
  auto res = std::from_chars(number.data(), end, whole);
  if (res.ec == std::errc() && res.ptr == end) return whole * unit;

  double value = 0.0;
  res = std::from_chars(number.data(), end, value);
  const double scaled = value * static_cast<double>(unit);
  if (unit == kLakh && res.ec == std::errc() && res.ptr == end && value >= 0.0 &&
      scaled == std::floor(scaled)) {
    return static_cast<std::uint64_t>(scaled);
  }
  throw std::invalid_argument("bad size '" + std::string(text) +
                              "' (expected an integer or lakh notation like 70lakh)");
}

std::vector<std::uint64_t> parse_size_list(std::string_view text) {
  std::vector<std::uint64_t> sizes;
  for (auto part : split(text, ',')) {
    if (!part.empty()) sizes.push_back(parse_size(part));
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes must list at least one size");
  return sizes;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ksortlab: K-sort / heap sort laboratory"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a seeded key array");
  generate_cmd->add_option("--n", gen.n, "Number of keys")->required();
  generate_cmd->add_option("--seed", gen.seed, "64-bit seed");
  generate_cmd->add_option("--kind", gen.kind,
                           "uniform01 | sorted_ascending | sorted_descending | constant");
  generate_cmd->add_option("--out", gen.out, "Output file (.bin for binary, else text)");

  SortArgs sort;
  auto* sort_cmd = app.add_subcommand("sort", "Sort a key file");
  sort_cmd->add_option("--in", sort.in, "Input key file")->required();
  sort_cmd->add_option("--algo", sort.algo, "ksort | heapsort");
  sort_cmd->add_flag("--counts", sort.counts, "Report operation counts");
  sort_cmd->add_option("--out", sort.out, "Output file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time or count sorts over a size grid");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes, e.g. 1lakh,5lakh")
      ->required();
  bench_cmd->add_option("--reps", bench.reps, "Replications per cell");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--algos", bench.algos, "Comma-separated algorithms");
  bench_cmd->add_option("--mode", bench.mode, "wall_time | op_counts");
  bench_cmd->add_option("--out", bench.out, "Output CSV (default stdout)");
  bench_cmd->add_option("--warmup", bench.warmup, "Untimed warmup sorts per cell");
  bench_cmd->add_flag("--unpaired", bench.unpaired, "Independent inputs per algorithm");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Regress mean time on n log2 n and n");
  fit_cmd->add_option("--in", fit.in, "Bench CSV")->required();
  fit_cmd->add_option("--algo", fit.algo, "ksort | heapsort");
  fit_cmd->add_option("--report-out", fit.report_out, "Text report (default stdout)");
  fit_cmd->add_option("--json-out", fit.json_out, "Fit JSON");

  PredictArgs pred;
  auto* predict_cmd = app.add_subcommand("predict", "Evaluate a fitted model");
  predict_cmd->add_option("--fit-json", pred.fit_json, "Fit JSON")->required();
  predict_cmd->add_option("--n", pred.n, "One or more sizes")->required();

  CrossoverArgs cross;
  auto* crossover_cmd = app.add_subcommand("crossover", "Locate the K-sort / heap sort crossover");
  crossover_cmd->add_option("--in", cross.in, "Bench CSV");
  crossover_cmd->add_option("--fitK", cross.fit_k, "K-sort fit JSON");
  crossover_cmd->add_option("--fitH", cross.fit_h, "Heap sort fit JSON");
  crossover_cmd->add_option("--lo", cross.lo, "Lower bracket for the model root");
  crossover_cmd->add_option("--hi", cross.hi, "Upper bracket for the model root");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Write SVG diagnostics for fits");
  report_cmd->add_option("--fit-json", report.fit_json, "Fit JSON (repeatable)")->required();
  report_cmd->add_option("--out-dir", report.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate_cmd) return cmd_generate(gen, out, err);
    if (*sort_cmd) return cmd_sort(sort, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*fit_cmd) return cmd_fit(fit, out, err);
    if (*predict_cmd) return cmd_predict(pred, out, err);
    if (*crossover_cmd) return cmd_crossover(cross, out, err);
    if (*report_cmd) return cmd_report(report, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(const std::vector<std::string_view>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> owned{"ksortlab"};
  for (auto a : args) owned.emplace_back(a);
  std::vector<const char*> argv;
  for (const auto& s : owned) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ksortlab::cli
