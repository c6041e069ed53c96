#include "ksortlab/sort_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ksortlab/errors.hpp"

namespace ksortlab {

namespace {

// Counting policies keep the uninstrumented path free of tally overhead.
struct NoCount {
  void compare() {}
  void move(std::uint64_t = 1) {}
  void pending(std::size_t) {}
};

struct Count {
  OpCounts* c;
  void compare() { ++c->comparisons; }
  void move(std::uint64_t m = 1) { c->moves += m; }
  void pending(std::size_t size) {
    c->max_pending_ranges = std::max<std::uint64_t>(c->max_pending_ranges, size);
  }
};

template <typename Counter>
PartitionOutcome partition_impl(double* a, std::size_t left, std::size_t right, Counter counter) {
  const double key = a[left];
  std::size_t i = left;
  std::size_t j = right + 1;
  std::size_t k = left + 1;
  std::size_t p = k;
  bool flag = false;
  double temp = 0.0;

  // Loop invariant: k == i + 1, slot i is vacant, p is k or j.
  while (j - i >= 2) {
    counter.compare();
    if (key <= a[p]) {
      if (j == right + 1) {
        temp = a[p];
        flag = true;
        counter.move();
      } else if (p != j) {
        a[j] = a[p];
        counter.move();
      }
      --j;
      p = j;
    } else {
      a[i] = a[p];
      counter.move();
      ++i;
      ++k;
      p = k;
    }
  }

  a[i] = key;
  counter.move();
  if (flag) {
    a[i + 1] = temp;
    counter.move();
  }

  PartitionOutcome outcome;
  outcome.pivot_index = i;
  outcome.flag_used = flag;
  if (flag) outcome.stashed = temp;
  return outcome;
}

template <typename Counter>
void k_sort_impl(std::span<double> a, Counter counter, const PartitionObserver* observer) {
  if (a.size() < 2) return;

  std::vector<std::pair<std::size_t, std::size_t>> pending;
  pending.emplace_back(0, a.size() - 1);
  counter.pending(pending.size());

  while (!pending.empty()) {
    const auto [left, right] = pending.back();
    pending.pop_back();

    const double key = a[left];
    const PartitionOutcome outcome = partition_impl(a.data(), left, right, counter);
    if (observer != nullptr) {
      (*observer)(PartitionEvent{left, right, key, outcome, a});
    }

    const std::size_t pivot = outcome.pivot_index;
    const bool has_left = pivot >= left + 2;
    const bool has_right = right > pivot + 1;
    const std::pair<std::size_t, std::size_t> lower{left, pivot - 1};
    const std::pair<std::size_t, std::size_t> upper{pivot + 1, right};

    if (has_left && has_right) {
      // Larger side first onto the stack so the smaller one is popped next.
      if (pivot - left <= right - pivot) {
        pending.push_back(upper);
        pending.push_back(lower);
      } else {
        pending.push_back(lower);
        pending.push_back(upper);
      }
    } else if (has_left) {
      pending.push_back(lower);
    } else if (has_right) {
      pending.push_back(upper);
    }
    counter.pending(pending.size());
  }
}

template <typename Counter>
void sift_down(double* a, std::size_t root, std::size_t end, Counter counter) {
  for (std::size_t child = 2 * root + 1; child < end; child = 2 * root + 1) {
    if (child + 1 < end) {
      counter.compare();
      if (a[child] < a[child + 1]) ++child;
    }
    counter.compare();
    if (!(a[root] < a[child])) return;
    std::swap(a[root], a[child]);
    counter.move(2);
    root = child;
  }
}

template <typename Counter>
void heap_sort_impl(std::span<double> a, Counter counter) {
  const std::size_t n = a.size();
  if (n < 2) return;
  double* data = a.data();
  for (std::size_t start = n / 2; start-- > 0;) {
    sift_down(data, start, n, counter);
  }
  for (std::size_t end = n - 1; end > 0; --end) {
    std::swap(data[0], data[end]);
    counter.move(2);
    sift_down(data, 0, end, counter);
  }
}

}  // namespace

OpCounts& OpCounts::operator+=(const OpCounts& other) {
  comparisons += other.comparisons;
  moves += other.moves;
  max_pending_ranges = std::max(max_pending_ranges, other.max_pending_ranges);
  return *this;
}

void require_finite(std::span<const double> a) {
  const auto bad = std::find_if(a.begin(), a.end(), [](double v) { return !std::isfinite(v); });
  if (bad != a.end()) {
    throw data_error("non-finite key at index " + std::to_string(bad - a.begin()));
  }
}

PartitionOutcome ksort_partition(std::span<double> a, std::size_t left, std::size_t right,
                                 OpCounts* counts) {
  if (left >= right || right >= a.size()) {
    throw range_error("invalid partition range [" + std::to_string(left) + ", " +
                      std::to_string(right) + "] for array of length " +
                      std::to_string(a.size()));
  }
  require_finite(a.subspan(left, right - left + 1));
  if (counts != nullptr) return partition_impl(a.data(), left, right, Count{counts});
  return partition_impl(a.data(), left, right, NoCount{});
}

void k_sort(std::span<double> a, OpCounts* counts) {
  require_finite(a);
  if (counts != nullptr) {
    k_sort_impl(a, Count{counts}, nullptr);
  } else {
    k_sort_impl(a, NoCount{}, nullptr);
  }
}

void k_sort(std::span<double> a, const PartitionObserver& observer, OpCounts* counts) {
  require_finite(a);
  if (counts != nullptr) {
    k_sort_impl(a, Count{counts}, &observer);
  } else {
    k_sort_impl(a, NoCount{}, &observer);
  }
}

void heap_sort(std::span<double> a, OpCounts* counts) {
  require_finite(a);
  if (counts != nullptr) {
    heap_sort_impl(a, Count{counts});
  } else {
    heap_sort_impl(a, NoCount{});
  }
}

bool is_sorted(std::span<const double> a) { return std::is_sorted(a.begin(), a.end()); }

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ksort:
      return "ksort";
    case Algorithm::heapsort:
      return "heapsort";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "ksort") return Algorithm::ksort;
  if (name == "heapsort") return Algorithm::heapsort;
  throw schema_error("unknown algorithm '" + std::string(name) + "' (expected ksort or heapsort)");
}

void sort_with(Algorithm algorithm, std::span<double> a, OpCounts* counts) {
  switch (algorithm) {
    case Algorithm::ksort:
      k_sort(a, counts);
      return;
    case Algorithm::heapsort:
      heap_sort(a, counts);
      return;
  }
}

}  // namespace ksortlab
