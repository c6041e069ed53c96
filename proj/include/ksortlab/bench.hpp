#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ksortlab/sort_core.hpp"

namespace ksortlab {

enum class BenchMode { wall_time, op_counts };

// paired: both algorithms sort identical inputs for replication r.
// unpaired: each algorithm draws its own stream.
enum class Pairing { paired, unpaired };

const char* to_string(BenchMode mode);
BenchMode parse_bench_mode(std::string_view name);

struct CellOptions {
  BenchMode mode = BenchMode::wall_time;
  Pairing pairing = Pairing::paired;
  std::size_t warmup = 0;
};

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t reps = 500;
  std::uint64_t base_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::ksort, Algorithm::heapsort};
  CellOptions options;
};

struct BenchRecord {
  Algorithm algorithm = Algorithm::ksort;
  std::uint64_t n = 0;
  double nlog2n = 0.0;
  std::uint64_t reps = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> mean_seconds;
  std::optional<double> std_seconds;
  std::optional<double> comparisons_mean;
  std::optional<double> moves_mean;
  std::string timestamp;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// n * log2(n), defined as 0 for n <= 1.
double n_log2_n(std::uint64_t n);

// Input for replication `rep` of a cell, exactly as run_cell generates it.
KeyArray replication_input(Algorithm algorithm, std::size_t n, std::uint64_t seed,
                           std::uint64_t rep, Pairing pairing);

// Times (or counts) `reps` sorts of fresh U[0,1) inputs. Throws
// integrity_error if any replication comes back unsorted.
BenchRecord run_cell(Algorithm algorithm, std::size_t n, std::size_t reps, std::uint64_t seed,
                     const CellOptions& options = {});

using BenchProgress = std::function<void(const BenchRecord&)>;

// sizes x algorithms, strictly sequential.
std::vector<BenchRecord> run_grid(const BenchConfig& config, const BenchProgress& progress = {});

inline constexpr const char* kBenchCsvHeader =
    "algorithm,n,nlog2n,reps,seed,mean_seconds,std_seconds,comparisons_mean,moves_mean,timestamp";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);

std::vector<BenchRecord> load_csv(const std::string& path);
void save_csv(const std::string& path, const std::vector<BenchRecord>& records);

std::string utc_timestamp();

}  // namespace ksortlab
