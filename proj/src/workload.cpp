#include "ksortlab/workload.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "ksortlab/errors.hpp"

namespace ksortlab {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void put_u64_le(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

bool get_u64_le(std::istream& in, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return true;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t state = base ^ splitmix64(index);
  return splitmix64(state);
}

Prng::Prng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t Prng::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Prng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

const char* to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::uniform01:
      return "uniform01";
    case WorkloadKind::sorted_ascending:
      return "sorted_ascending";
    case WorkloadKind::sorted_descending:
      return "sorted_descending";
    case WorkloadKind::constant:
      return "constant";
  }
  return "?";
}

WorkloadKind parse_workload_kind(std::string_view name) {
  for (auto kind : {WorkloadKind::uniform01, WorkloadKind::sorted_ascending,
                    WorkloadKind::sorted_descending, WorkloadKind::constant}) {
    if (name == to_string(kind)) return kind;
  }
  throw schema_error("unknown workload kind '" + std::string(name) + "'");
}

KeyArray generate(const WorkloadSpec& spec) {
  KeyArray a(spec.n);
  const double scale = spec.n > 0 ? 1.0 / static_cast<double>(spec.n) : 0.0;
  switch (spec.kind) {
    case WorkloadKind::uniform01: {
      Prng rng(spec.seed);
      for (auto& v : a) v = rng.uniform01();
      break;
    }
    case WorkloadKind::sorted_ascending:
      for (std::size_t t = 0; t < spec.n; ++t) a[t] = static_cast<double>(t) * scale;
      break;
    case WorkloadKind::sorted_descending:
      for (std::size_t t = 0; t < spec.n; ++t) a[t] = static_cast<double>(spec.n - 1 - t) * scale;
      break;
    case WorkloadKind::constant:
      std::fill(a.begin(), a.end(), 0.5);
      break;
  }
  return a;
}

KeyArray duplicate(const KeyArray& a) { return KeyArray(a.begin(), a.end()); }

void write_keys_text(std::ostream& out, const KeyArray& a, std::string_view header) {
  if (!header.empty()) out << "# " << header << '\n';
  std::array<char, 32> buf{};
  for (double v : a) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    out.write(buf.data(), res.ptr - buf.data());
    out.put('\n');
  }
}

KeyArray read_keys_text(std::istream& in) {
  KeyArray a;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double v = 0.0;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
      throw schema_error("line " + std::to_string(line_no) + ": not a number: '" + line + "'");
    }
    a.push_back(v);
  }
  require_finite(a);
  return a;
}

void write_keys_binary(std::ostream& out, const KeyArray& a) {
  put_u64_le(out, a.size());
  for (double v : a) put_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

KeyArray read_keys_binary(std::istream& in) {
  std::uint64_t n = 0;
  if (!get_u64_le(in, n)) throw schema_error("binary key file: missing length prefix");
  KeyArray a;
  a.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 24)));
  for (std::uint64_t t = 0; t < n; ++t) {
    std::uint64_t bits = 0;
    if (!get_u64_le(in, bits)) {
      throw schema_error("binary key file: truncated after " + std::to_string(t) + " of " +
                         std::to_string(n) + " values");
    }
    a.push_back(std::bit_cast<double>(bits));
  }
  require_finite(a);
  return a;
}

void save_keys(const std::string& path, const KeyArray& a, std::string_view header) {
  const bool binary = ends_with(path, ".bin");
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw schema_error("cannot open '" + path + "' for writing");
  if (binary) {
    write_keys_binary(out, a);
  } else {
    write_keys_text(out, a, header);
  }
  if (!out) throw schema_error("write failed for '" + path + "'");
}

KeyArray load_keys(const std::string& path) {
  const bool binary = ends_with(path, ".bin");
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw schema_error("cannot open '" + path + "'");
  return binary ? read_keys_binary(in) : read_keys_text(in);
}

}  // namespace ksortlab
