#include "ksortlab/sort_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ksortlab/errors.hpp"

namespace ksortlab {
namespace {

const KeyArray kTraceInput{55, 66, 60, 78, 22, 50, 75, 5, 8, 94};
const KeyArray kTraceSorted{5, 8, 22, 50, 55, 60, 66, 75, 78, 94};

// Straight recursive transcription of the partition steps, kept apart from
// the library so the comparison tally has an independent source.
struct ReferenceTrace {
  std::vector<std::size_t> segment_lengths;
  std::uint64_t comparisons = 0;

  void sort(std::vector<double>& a, std::size_t left, std::size_t right) {
    if (right <= left) return;
    segment_lengths.push_back(right - left + 1);
    const double key = a[left];
    std::size_t i = left, j = right + 1, k = left + 1, p = k;
    bool flag = false;
    double temp = 0;
    while (j - i >= 2) {
      ++comparisons;
      if (key <= a[p]) {
        if (p != j && j != right + 1) a[j] = a[p];
        else if (j == right + 1) {
          temp = a[p];
          flag = true;
        }
        --j;
        p = j;
      } else {
        a[i] = a[p];
        ++i;
        ++k;
        p = k;
      }
    }
    a[i] = key;
    if (flag) a[i + 1] = temp;
    if (i > left + 1) sort(a, left, i - 1);
    if (right > i + 1) sort(a, i + 1, right);
  }
};

std::vector<double> random_array(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> a(n);
  for (auto& v : a) v = dist(rng);
  return a;
}

TEST(KsortPartition, TraceFirstRow) {
  KeyArray a = kTraceInput;
  const auto outcome = ksort_partition(a, 0, 9);
  EXPECT_EQ(a, (KeyArray{8, 5, 50, 22, 55, 66, 75, 78, 60, 94}));
  EXPECT_EQ(outcome.pivot_index, 4u);
  EXPECT_TRUE(outcome.flag_used);
  ASSERT_TRUE(outcome.stashed.has_value());
  EXPECT_EQ(*outcome.stashed, 66);
}

TEST(KsortPartition, TraceKey8) {
  KeyArray a{8, 5, 50, 22};
  const auto outcome = ksort_partition(a, 0, 3);
  EXPECT_EQ(a, (KeyArray{5, 8, 50, 22}));
  EXPECT_EQ(outcome.pivot_index, 1u);
  EXPECT_TRUE(outcome.flag_used);
  EXPECT_EQ(outcome.stashed, 50);
}

TEST(KsortPartition, TraceKey50NoStash) {
  KeyArray a{50, 22};
  const auto outcome = ksort_partition(a, 0, 1);
  EXPECT_EQ(a, (KeyArray{22, 50}));
  EXPECT_EQ(outcome.pivot_index, 1u);
  EXPECT_FALSE(outcome.flag_used);
  EXPECT_FALSE(outcome.stashed.has_value());
}

TEST(KsortPartition, KeyIsMinimum) {
  KeyArray a{1, 2};
  const auto outcome = ksort_partition(a, 0, 1);
  EXPECT_EQ(a, (KeyArray{1, 2}));
  EXPECT_EQ(outcome.pivot_index, 0u);
  EXPECT_TRUE(outcome.flag_used);
}

TEST(KsortPartition, SubrangeLeavesOutsideUntouched) {
  KeyArray a{9, 9, 3, 1, 2, 9, 9};
  ksort_partition(a, 2, 4);
  EXPECT_EQ(a[0], 9);
  EXPECT_EQ(a[1], 9);
  EXPECT_EQ(a[5], 9);
  EXPECT_EQ(a[6], 9);
  EXPECT_EQ((KeyArray{a[2], a[3], a[4]}), (KeyArray{1, 2, 3}));
}

TEST(KsortPartition, RejectsBadRanges) {
  KeyArray a{3, 1, 2};
  EXPECT_THROW(ksort_partition(a, 1, 1), range_error);
  EXPECT_THROW(ksort_partition(a, 2, 1), range_error);
  EXPECT_THROW(ksort_partition(a, 0, 3), range_error);
  KeyArray empty;
  EXPECT_THROW(ksort_partition(empty, 0, 0), range_error);
}

TEST(KsortPartition, RejectsNonFinite) {
  KeyArray a{3, std::numeric_limits<double>::quiet_NaN(), 2};
  EXPECT_THROW(ksort_partition(a, 0, 2), data_error);
  KeyArray b{3, 1, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(ksort_partition(b, 0, 2), data_error);
}

TEST(KsortPartition, ThreeZonePropertyOnRandomArrays) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> len(2, 64);
  std::uniform_int_distribution<int> small(0, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = len(rng);
    // Every third trial uses a tiny alphabet so equal keys are common.
    std::vector<double> a = random_array(rng, m);
    if (trial % 3 == 0) {
      for (auto& v : a) v = small(rng);
    }
    const std::vector<double> before = a;
    const double key = a[0];
    OpCounts counts;
    const auto outcome = ksort_partition(a, 0, m - 1, &counts);
    const std::size_t pivot = outcome.pivot_index;

    ASSERT_LT(pivot, m);
    EXPECT_EQ(a[pivot], key);
    for (std::size_t t = 0; t < pivot; ++t) EXPECT_LT(a[t], key) << "trial " << trial;
    for (std::size_t t = pivot + 1; t < m; ++t) EXPECT_GE(a[t], key) << "trial " << trial;

    auto sorted_before = before;
    auto sorted_after = a;
    std::sort(sorted_before.begin(), sorted_before.end());
    std::sort(sorted_after.begin(), sorted_after.end());
    EXPECT_EQ(sorted_before, sorted_after) << "trial " << trial;

    // One comparison per loop iteration, j - i shrinking from m to 1.
    EXPECT_EQ(counts.comparisons, m - 1);
    if (outcome.flag_used) {
      ASSERT_TRUE(outcome.stashed.has_value());
      EXPECT_GE(*outcome.stashed, key);
      EXPECT_EQ(a[pivot + 1], *outcome.stashed);
    }
  }
}

TEST(KSort, TraceExample) {
  KeyArray a = kTraceInput;
  k_sort(a);
  EXPECT_EQ(a, kTraceSorted);
}

TEST(KSort, EmptyAndSingleton) {
  KeyArray empty;
  k_sort(empty);
  EXPECT_TRUE(empty.empty());
  KeyArray one{7};
  k_sort(one);
  EXPECT_EQ(one, KeyArray{7});
}

TEST(KSort, PartitionOrderMatchesTrace) {
  KeyArray a = kTraceInput;
  std::vector<KeyArray> states;
  std::vector<double> keys;
  std::vector<std::size_t> lengths;
  k_sort(a, [&](const PartitionEvent& e) {
    states.emplace_back(e.array.begin(), e.array.end());
    keys.push_back(e.key);
    lengths.push_back(e.right - e.left + 1);
  });
  ASSERT_GE(states.size(), 3u);
  EXPECT_EQ(keys[0], 55);
  EXPECT_EQ(keys[1], 8);
  EXPECT_EQ(keys[2], 50);
  EXPECT_EQ(states[1], (KeyArray{5, 8, 50, 22, 55, 66, 75, 78, 60, 94}));
  EXPECT_EQ(states[2], (KeyArray{5, 8, 22, 50, 55, 66, 75, 78, 60, 94}));
  EXPECT_EQ(lengths, (std::vector<std::size_t>{10, 4, 2, 5, 3, 2}));
}

TEST(KSort, ComparisonCountMatchesReferenceTrace) {
  ReferenceTrace reference;
  std::vector<double> ref = kTraceInput;
  reference.sort(ref, 0, ref.size() - 1);
  ASSERT_EQ(ref, kTraceSorted);
  EXPECT_EQ(reference.segment_lengths, (std::vector<std::size_t>{10, 4, 2, 5, 3, 2}));
  EXPECT_EQ(reference.comparisons, 20u);

  KeyArray a = kTraceInput;
  OpCounts counts;
  k_sort(a, &counts);
  EXPECT_EQ(counts.comparisons, reference.comparisons);
}

TEST(KSort, ComparisonCountMatchesReferenceOnRandomInputs) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_array(rng, 1 + trial * 7);
    ReferenceTrace reference;
    auto ref = a;
    reference.sort(ref, 0, ref.size() - 1);
    OpCounts counts;
    k_sort(a, &counts);
    EXPECT_EQ(a, ref);
    EXPECT_EQ(counts.comparisons, reference.comparisons);
  }
}

TEST(KSort, AllPermutationsOfSeven) {
  KeyArray base{1, 2, 3, 4, 5, 6, 7};
  int count = 0;
  do {
    KeyArray k = base;
    KeyArray h = base;
    k_sort(k);
    heap_sort(h);
    ASSERT_EQ(k, (KeyArray{1, 2, 3, 4, 5, 6, 7}));
    ASSERT_EQ(h, k);
    ++count;
  } while (std::next_permutation(base.begin(), base.end()));
  EXPECT_EQ(count, 5040);
}

TEST(KSort, AllBinaryArraysUpToSeven) {
  for (std::size_t len = 0; len <= 7; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      KeyArray a(len);
      for (std::size_t b = 0; b < len; ++b) a[b] = (mask >> b) & 1u;
      KeyArray expected = a;
      std::sort(expected.begin(), expected.end());
      KeyArray k = a;
      KeyArray h = a;
      k_sort(k);
      heap_sort(h);
      ASSERT_EQ(k, expected) << "len " << len << " mask " << mask;
      ASSERT_EQ(h, expected) << "len " << len << " mask " << mask;
    }
  }
}

TEST(KSort, PendingRangesStayLogarithmic) {
  std::mt19937_64 rng(5);
  auto bound = [](std::size_t n) {
    return static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
  };
  for (std::size_t n : {2u, 3u, 17u, 1000u, 4096u, 100000u}) {
    std::vector<KeyArray> inputs;
    inputs.push_back(random_array(rng, n));
    KeyArray ascending(n);
    std::iota(ascending.begin(), ascending.end(), 0.0);
    inputs.push_back(ascending);
    inputs.emplace_back(ascending.rbegin(), ascending.rend());
    inputs.emplace_back(n, 0.25);
    for (auto& a : inputs) {
      // Sorted-order inputs are quadratic for a first-element pivot; keep
      // them to moderate n.
      if (n > 5000 && &a != &inputs.front()) continue;
      OpCounts counts;
      k_sort(a, &counts);
      EXPECT_TRUE(is_sorted(a));
      EXPECT_LE(counts.max_pending_ranges, bound(n)) << "n=" << n;
    }
  }
}

TEST(KSort, RejectsNonFinite) {
  KeyArray a{1, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(k_sort(a), data_error);
  KeyArray b{-std::numeric_limits<double>::infinity(), 1};
  EXPECT_THROW(heap_sort(b), data_error);
}

TEST(KSort, LargeSortedInputDoesNotOverflowStack) {
  KeyArray a(20000);
  std::iota(a.begin(), a.end(), 0.0);
  OpCounts counts;
  k_sort(a, &counts);
  EXPECT_TRUE(is_sorted(a));
  EXPECT_EQ(counts.comparisons, 20000ull * 19999ull / 2);
  EXPECT_EQ(counts.max_pending_ranges, 1u);
}

TEST(HeapSort, TraceExampleAndReverse) {
  KeyArray a = kTraceInput;
  heap_sort(a);
  EXPECT_EQ(a, kTraceSorted);
  KeyArray r{3, 2, 1};
  heap_sort(r);
  EXPECT_EQ(r, (KeyArray{1, 2, 3}));
}

TEST(HeapSort, MatchesOracleOnRandomArrays) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> len(0, 4096);
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = random_array(rng, len(rng));
    auto expected = a;
    std::sort(expected.begin(), expected.end());
    auto h = a;
    auto k = a;
    heap_sort(h);
    k_sort(k);
    ASSERT_EQ(h, expected) << "trial " << trial;
    ASSERT_EQ(k, expected) << "trial " << trial;
  }
}

TEST(HeapSort, CountsAreDeterministic) {
  std::mt19937_64 rng(3);
  const auto a = random_array(rng, 1000);
  OpCounts first, second;
  auto x = a, y = a;
  heap_sort(x, &first);
  heap_sort(y, &second);
  EXPECT_EQ(first, second);
  EXPECT_GT(first.comparisons, 0u);
  EXPECT_EQ(first.max_pending_ranges, 0u);
}

TEST(IsSorted, Basics) {
  EXPECT_TRUE(is_sorted(KeyArray{}));
  EXPECT_TRUE(is_sorted(kTraceSorted));
  EXPECT_FALSE(is_sorted(KeyArray{8, 5}));
  EXPECT_TRUE(is_sorted(KeyArray{1, 1, 1}));
}

TEST(Algorithm, NamesRoundTrip) {
  for (auto algo : {Algorithm::ksort, Algorithm::heapsort}) {
    EXPECT_EQ(parse_algorithm(to_string(algo)), algo);
  }
}

}  // namespace
}  // namespace ksortlab
