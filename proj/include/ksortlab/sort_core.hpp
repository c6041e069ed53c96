#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ksortlab {

// The thing being sorted. Every element must be finite; ingestion points
// call require_finite().
using KeyArray = std::vector<double>;

// Exact operation tallies. A "move" is one element write: a[j]=a[p],
// a[i]=a[p], a[i]=key, a[i+1]=temp and the temp=a[p] stash for K-sort; each
// of the two array writes of a swap plus the sift-down writes for heap sort.
struct OpCounts {
  std::uint64_t comparisons = 0;
  std::uint64_t moves = 0;
  std::uint64_t max_pending_ranges = 0;

  OpCounts& operator+=(const OpCounts& other);
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct PartitionOutcome {
  std::size_t pivot_index = 0;
  bool flag_used = false;
  // The element parked in temp during the partition, restored at pivot+1.
  std::optional<double> stashed;
};

// Snapshot handed to a k_sort observer after each partition step.
struct PartitionEvent {
  std::size_t left = 0;
  std::size_t right = 0;
  double key = 0.0;
  PartitionOutcome outcome;
  std::span<const double> array;
};

using PartitionObserver = std::function<void(const PartitionEvent&)>;

// Throws data_error naming the first non-finite position.
void require_finite(std::span<const double> a);

// One K-sort partition of a[left..right] around key = a[left], moving
// elements into vacated slots instead of swapping. Keys < key end up in
// [left, pivot), keys >= key in (pivot, right].
PartitionOutcome ksort_partition(std::span<double> a, std::size_t left, std::size_t right,
                                 OpCounts* counts = nullptr);

// Sorts ascending in place. Subranges live on an explicit worklist and the
// smaller side is always processed first, so pending ranges stay O(log n).
void k_sort(std::span<double> a, OpCounts* counts = nullptr);

// k_sort that reports every partition to `observer` in execution order.
void k_sort(std::span<double> a, const PartitionObserver& observer, OpCounts* counts = nullptr);

// In-place max-heap sort (bottom-up heapify, then repeated extract-max).
void heap_sort(std::span<double> a, OpCounts* counts = nullptr);

bool is_sorted(std::span<const double> a);

enum class Algorithm { ksort, heapsort };

const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

void sort_with(Algorithm algorithm, std::span<double> a, OpCounts* counts = nullptr);

}  // namespace ksortlab
