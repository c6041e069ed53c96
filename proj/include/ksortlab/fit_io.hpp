#pragma once

#include <string>

#include "ksortlab/stats.hpp"

namespace ksortlab {

inline constexpr const char* kFitSchema = "ksortlab.fit/1";

// Machine-readable fit record; layout documented in docs/fit_json.md.
std::string fit_to_json(const RegressionFit& fit, int indent = 2);
RegressionFit fit_from_json(const std::string& text);

void save_fit_json(const std::string& path, const RegressionFit& fit);
RegressionFit load_fit_json(const std::string& path);

}  // namespace ksortlab
