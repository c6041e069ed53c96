#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ksortlab/sort_core.hpp"

namespace ksortlab {

// xoshiro256** seeded through splitmix64. Streams are bit-exact across
// platforms: same seed, same sequence.
class Prng {
 public:
  explicit Prng(std::uint64_t seed);

  std::uint64_t next();
  // 53 random bits scaled by 2^-53, so the result lies in [0, 1).
  double uniform01();

 private:
  std::uint64_t state_[4];
};

// One splitmix64 output step; also used to derive per-replication seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for replication `index` of a cell seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

enum class WorkloadKind { uniform01, sorted_ascending, sorted_descending, constant };

const char* to_string(WorkloadKind kind);
WorkloadKind parse_workload_kind(std::string_view name);

struct WorkloadSpec {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  WorkloadKind kind = WorkloadKind::uniform01;
};

KeyArray generate(const WorkloadSpec& spec);

// Independent, value-equal copy (the paired-input design).
KeyArray duplicate(const KeyArray& a);

// Text format: optional '#' comment lines, then one value per line, printed
// with 17 significant digits.
void write_keys_text(std::ostream& out, const KeyArray& a, std::string_view header = {});
KeyArray read_keys_text(std::istream& in);

// Binary format: uint64 length then that many IEEE-754 doubles, all
// little-endian.
void write_keys_binary(std::ostream& out, const KeyArray& a);
KeyArray read_keys_binary(std::istream& in);

// Extension-based dispatch: ".bin" is binary, anything else is text.
void save_keys(const std::string& path, const KeyArray& a, std::string_view header = {});
KeyArray load_keys(const std::string& path);

}  // namespace ksortlab
