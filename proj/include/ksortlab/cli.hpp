#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace ksortlab::cli {

// Runs one `ksortlab` invocation. Data goes to `out` (or the files named by
// flags); configuration echo and errors go to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string_view>& args, std::ostream& out, std::ostream& err);

// Plain integers or lakh notation: "7000000", "70lakh", "70lakhs", "2.5lakh".
std::uint64_t parse_size(std::string_view text);

// Comma-separated list of parse_size values.
std::vector<std::uint64_t> parse_size_list(std::string_view text);

}  // namespace ksortlab::cli
