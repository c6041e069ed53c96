#include "ksortlab/bench.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ksortlab/errors.hpp"
#include "ksortlab/workload.hpp"

namespace ksortlab {

namespace {

struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double sample_std() const {
    return count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0;
  }
};

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

template <typename T>
std::string format_optional(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_number(const std::string& text, const char* column, std::size_t line_no) {
  T value{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw schema_error("csv line " + std::to_string(line_no) + ": bad " + column + " '" + text +
                       "'");
  }
  return value;
}

template <typename T>
std::optional<T> parse_optional(const std::string& text, const char* column, std::size_t line_no) {
  if (text.empty()) return std::nullopt;
  return parse_number<T>(text, column, line_no);
}

std::string rstrip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

const char* to_string(BenchMode mode) {
  return mode == BenchMode::wall_time ? "wall_time" : "op_counts";
}

BenchMode parse_bench_mode(std::string_view name) {
  if (name == "wall_time") return BenchMode::wall_time;
  if (name == "op_counts") return BenchMode::op_counts;
  throw schema_error("unknown bench mode '" + std::string(name) + "'");
}

double n_log2_n(std::uint64_t n) {
  if (n <= 1) return 0.0;
  const double x = static_cast<double>(n);
  return x * std::log2(x);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  const auto len = std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf.data(), len);
}

KeyArray replication_input(Algorithm algorithm, std::size_t n, std::uint64_t seed,
                           std::uint64_t rep, Pairing pairing) {
  std::uint64_t cell_seed = seed;
  if (pairing == Pairing::unpaired) {
    std::uint64_t salt = static_cast<std::uint64_t>(algorithm) + 1;
    cell_seed ^= splitmix64(salt);
  }
  return generate(WorkloadSpec{n, derive_seed(cell_seed, rep), WorkloadKind::uniform01});
}

BenchRecord run_cell(Algorithm algorithm, std::size_t n, std::size_t reps, std::uint64_t seed,
                     const CellOptions& options) {
  if (reps < 1) throw std::invalid_argument("run_cell: reps must be >= 1");

  using clock = std::chrono::steady_clock;

  for (std::size_t w = 0; w < options.warmup; ++w) {
    KeyArray warm = replication_input(algorithm, n, ~seed, w, options.pairing);
    sort_with(algorithm, warm);
  }

  RunningStats seconds;
  RunningStats comparisons;
  RunningStats moves;

  for (std::size_t r = 0; r < reps; ++r) {
    const KeyArray original = replication_input(algorithm, n, seed, r, options.pairing);
    KeyArray work = duplicate(original);

    if (options.mode == BenchMode::wall_time) {
      const auto start = clock::now();
      sort_with(algorithm, work);
      const auto stop = clock::now();
      seconds.add(std::chrono::duration<double>(stop - start).count());
    } else {
      OpCounts counts;
      sort_with(algorithm, work, &counts);
      comparisons.add(static_cast<double>(counts.comparisons));
      moves.add(static_cast<double>(counts.moves));
    }

    if (!is_sorted(work)) {
      throw integrity_error(std::string(to_string(algorithm)) + " produced unsorted output at n=" +
                            std::to_string(n) + ", replication " + std::to_string(r));
    }
  }

  BenchRecord record;
  record.algorithm = algorithm;
  record.n = n;
  record.nlog2n = n_log2_n(n);
  record.reps = reps;
  record.seed = seed;
  if (options.mode == BenchMode::wall_time) {
    record.mean_seconds = seconds.mean;
    record.std_seconds = seconds.sample_std();
  } else {
    record.comparisons_mean = comparisons.mean;
    record.moves_mean = moves.mean;
  }
  record.timestamp = utc_timestamp();
  return record;
}

std::vector<BenchRecord> run_grid(const BenchConfig& config, const BenchProgress& progress) {
  if (config.reps < 1) throw std::invalid_argument("run_grid: reps must be >= 1");
  if (config.sizes.empty()) throw std::invalid_argument("run_grid: sizes must be nonempty");

  std::vector<BenchRecord> records;
  records.reserve(config.sizes.size() * config.algorithms.size());
  for (const std::size_t n : config.sizes) {
    for (const Algorithm algorithm : config.algorithms) {
      records.push_back(run_cell(algorithm, n, config.reps, config.base_seed, config.options));
      if (progress) progress(records.back());
    }
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << format_double(r.nlog2n) << ','
        << r.reps << ',' << format_optional(r.seed) << ',' << format_optional(r.mean_seconds)
        << ',' << format_optional(r.std_seconds) << ',' << format_optional(r.comparisons_mean)
        << ',' << format_optional(r.moves_mean) << ',' << r.timestamp << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw schema_error("csv: empty input");
  line = rstrip_cr(line);
  if (line != kBenchCsvHeader) {
    throw schema_error("csv: unexpected header '" + line + "' (expected '" + kBenchCsvHeader +
                       "')");
  }

  std::vector<BenchRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = rstrip_cr(line);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 10) {
      throw schema_error("csv line " + std::to_string(line_no) + ": expected 10 fields, got " +
                         std::to_string(f.size()));
    }
    BenchRecord r;
    try {
      r.algorithm = parse_algorithm(f[0]);
    } catch (const schema_error& e) {
      throw schema_error("csv line " + std::to_string(line_no) + ": " + e.what());
    }
    r.n = parse_number<std::uint64_t>(f[1], "n", line_no);
    r.nlog2n = parse_number<double>(f[2], "nlog2n", line_no);
    r.reps = parse_number<std::uint64_t>(f[3], "reps", line_no);
    r.seed = parse_optional<std::uint64_t>(f[4], "seed", line_no);
    r.mean_seconds = parse_optional<double>(f[5], "mean_seconds", line_no);
    r.std_seconds = parse_optional<double>(f[6], "std_seconds", line_no);
    r.comparisons_mean = parse_optional<double>(f[7], "comparisons_mean", line_no);
    r.moves_mean = parse_optional<double>(f[8], "moves_mean", line_no);
    r.timestamp = f[9];
    if (r.mean_seconds && *r.mean_seconds < 0.0) {
      throw schema_error("csv line " + std::to_string(line_no) + ": negative mean_seconds");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BenchRecord> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open '" + path + "'");
  return read_csv(in);
}

void save_csv(const std::string& path, const std::vector<BenchRecord>& records) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open '" + path + "' for writing");
  write_csv(out, records);
  if (!out) throw schema_error("write failed for '" + path + "'");
}

}  // namespace ksortlab
