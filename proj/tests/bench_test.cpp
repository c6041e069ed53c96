#include "ksortlab/bench.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ksortlab/errors.hpp"

namespace ksortlab {
namespace {

const std::string kReferenceTimings = std::string(KSORTLAB_DATA_DIR) + "/reference_timings.csv";

TEST(NLog2N, MatchesReferenceColumn) {
  const std::pair<std::uint64_t, double> rows[] = {
      {100000, 1660964.05},   {500000, 9465784.28},   {1000000, 19931568.6},
      {2500000, 53133741.7},  {5000000, 111267483},   {6000000, 135099186},
      {7000000, 159172464},   {7100000, 161591652},   {7500000, 171288444},
      {10000000, 232534967}};
  for (const auto& [n, printed] : rows) EXPECT_NEAR(n_log2_n(n), printed, 0.5) << n;
  EXPECT_EQ(n_log2_n(0), 0.0);
  EXPECT_EQ(n_log2_n(1), 0.0);
  EXPECT_EQ(n_log2_n(2), 2.0);
}

TEST(RunCell, DegenerateSize) {
  const auto r = run_cell(Algorithm::ksort, 0, 3, 1);
  ASSERT_TRUE(r.mean_seconds.has_value());
  EXPECT_GE(*r.mean_seconds, 0.0);
  EXPECT_EQ(r.n, 0u);
  EXPECT_EQ(r.reps, 3u);
  EXPECT_EQ(r.nlog2n, 0.0);
  EXPECT_FALSE(r.comparisons_mean.has_value());
  EXPECT_EQ(r.timestamp.size(), 20u);
}

TEST(RunCell, RejectsZeroReps) {
  EXPECT_THROW(run_cell(Algorithm::ksort, 10, 0, 1), std::invalid_argument);
}

TEST(RunCell, OpCountsNearClassicalExpectations) {
  const std::size_t n = 1u << 14;
  const double nlogn = n_log2_n(n);
  const CellOptions counting{BenchMode::op_counts, Pairing::paired, 0};

  const auto k = run_cell(Algorithm::ksort, n, 50, 2024, counting);
  ASSERT_TRUE(k.comparisons_mean.has_value());
  EXPECT_NEAR(*k.comparisons_mean / (1.39 * nlogn), 1.0, 0.20);

  // Quicksort with m - 1 comparisons per partition and a random first-element
  // pivot averages 2(n+1)H_n - 4n comparisons.
  double harmonic = 0.0;
  for (std::size_t t = 1; t <= n; ++t) harmonic += 1.0 / static_cast<double>(t);
  const double exact_mean = 2.0 * (n + 1) * harmonic - 4.0 * n;
  EXPECT_NEAR(*k.comparisons_mean / exact_mean, 1.0, 0.02);

  const auto h = run_cell(Algorithm::heapsort, n, 50, 2024, counting);
  ASSERT_TRUE(h.comparisons_mean.has_value());
  // Two comparisons per sift-down level: about 2 n log2 n.
  EXPECT_NEAR(*h.comparisons_mean / (2.0 * nlogn), 1.0, 0.20);
  EXPECT_FALSE(h.mean_seconds.has_value());
}

TEST(ReplicationInput, PairedSharesInputsUnpairedDoesNot) {
  const auto a = replication_input(Algorithm::ksort, 100, 9, 3, Pairing::paired);
  EXPECT_EQ(a, replication_input(Algorithm::heapsort, 100, 9, 3, Pairing::paired));
  EXPECT_NE(a, replication_input(Algorithm::heapsort, 100, 9, 3, Pairing::unpaired));
  EXPECT_NE(a, replication_input(Algorithm::ksort, 100, 9, 4, Pairing::paired));
}

TEST(RunGrid, ShapeAndDeterminism) {
  BenchConfig config;
  config.sizes = {100};
  config.reps = 2;
  EXPECT_EQ(run_grid(config).size(), 2u);

  config.algorithms.clear();
  EXPECT_TRUE(run_grid(config).empty());

  config.sizes = {100, 1000, 5000};
  config.algorithms = {Algorithm::ksort, Algorithm::heapsort};
  config.options.mode = BenchMode::op_counts;
  config.base_seed = 31;
  const auto first = run_grid(config);
  const auto second = run_grid(config);
  ASSERT_EQ(first.size(), 6u);
  for (std::size_t t = 0; t < first.size(); ++t) {
    EXPECT_EQ(first[t].comparisons_mean, second[t].comparisons_mean);
    EXPECT_EQ(first[t].moves_mean, second[t].moves_mean);
  }

  config.sizes.clear();
  EXPECT_THROW(run_grid(config), std::invalid_argument);
}

TEST(RunGrid, MeanTimeGrowsWithN) {
  BenchConfig config;
  config.sizes = {2000, 20000, 200000};
  config.reps = 5;
  config.base_seed = 1;
  const auto records = run_grid(config);
  for (const auto algo : {Algorithm::ksort, Algorithm::heapsort}) {
    std::vector<double> times;
    for (const auto& r : records) {
      if (r.algorithm == algo) times.push_back(*r.mean_seconds);
    }
    int inversions = 0;
    for (std::size_t t = 1; t < times.size(); ++t) inversions += times[t] < times[t - 1];
    EXPECT_LE(inversions, 1);
  }
}

TEST(Csv, ReferenceFixtureParses) {
  const auto records = load_csv(kReferenceTimings);
  ASSERT_EQ(records.size(), 20u);
  std::size_t k = 0;
  for (const auto& r : records) {
    k += r.algorithm == Algorithm::ksort;
    EXPECT_EQ(r.reps, 500u);
    EXPECT_FALSE(r.seed.has_value());
    EXPECT_TRUE(r.mean_seconds.has_value());
  }
  EXPECT_EQ(k, 10u);
  EXPECT_EQ(records[6].n, 7000000u);
  EXPECT_EQ(*records[6].mean_seconds, 3.2892);
  EXPECT_EQ(*records[17].mean_seconds, 3.3782);
}

TEST(Csv, RoundTripRandomRecords) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BenchRecord> records;
    for (int t = 0; t < trial % 7; ++t) {
      BenchRecord r;
      r.algorithm = rng() % 2 ? Algorithm::ksort : Algorithm::heapsort;
      r.n = rng() % 10000000;
      r.nlog2n = n_log2_n(r.n);
      r.reps = 1 + rng() % 500;
      if (rng() % 2) r.seed = rng();
      if (rng() % 2) {
        r.mean_seconds = u(rng);
        r.std_seconds = u(rng) / 7.0;
      } else {
        r.comparisons_mean = u(rng) * 1e6;
        r.moves_mean = u(rng) * 1e6;
      }
      r.timestamp = rng() % 2 ? utc_timestamp() : "";
      records.push_back(r);
    }
    std::stringstream ss;
    write_csv(ss, records);
    EXPECT_EQ(read_csv(ss), records);
  }
}

TEST(Csv, SchemaErrors) {
  std::stringstream bad_header("algo,n\nksort,1\n");
  EXPECT_THROW(read_csv(bad_header), schema_error);
  std::stringstream short_row(std::string(kBenchCsvHeader) + "\nksort,10,1\n");
  EXPECT_THROW(read_csv(short_row), schema_error);
  std::stringstream bad_algo(std::string(kBenchCsvHeader) + "\nbubble,10,33.2,1,,0.1,,,,\n");
  EXPECT_THROW(read_csv(bad_algo), schema_error);
  std::stringstream bad_number(std::string(kBenchCsvHeader) + "\nksort,ten,33.2,1,,0.1,,,,\n");
  EXPECT_THROW(read_csv(bad_number), schema_error);
  std::stringstream empty;
  EXPECT_THROW(read_csv(empty), schema_error);
}

}  // namespace
}  // namespace ksortlab
