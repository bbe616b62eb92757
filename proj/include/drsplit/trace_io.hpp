#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drsplit/dr.hpp"

namespace drsplit {

// Writes one row per retained iterate with header
// n,governing_0..,shadowA_0..,shadowB_0..,residual,gapdiff_norm
// using shortest round-trip decimal formatting. Throws IoError on failure.
void write_trace_csv(const DrTrace& trace, const std::string& path);

// Header fields and numeric rows, for replaying and auditing written traces.
std::pair<std::vector<std::string>, std::vector<std::vector<double>>>
read_trace_csv(const std::string& path);

}  // namespace drsplit
