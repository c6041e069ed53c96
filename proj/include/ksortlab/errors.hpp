#pragma once

#include <stdexcept>
#include <string>

namespace ksortlab {

// Bad index range passed to a partition or slice.
class range_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Input keys outside the supported domain (NaN, infinities).
class data_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A benchmarked sort produced unsorted output.
class integrity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CSV / JSON / key file.
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Regression design is too small or (near) singular.
class fit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracket does not straddle a sign change.
class bracket_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ksortlab
