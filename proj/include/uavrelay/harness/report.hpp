#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uavrelay/harness/experiment.hpp"

namespace uavrelay::harness {

inline constexpr int kResultFormatVersion = 1;

/// Shortest text that parses back to the same double ("%.17g"); NaN is empty.
std::string format_number(double v);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

/// Header plus one line per row; the wall-time column is last.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_results_json(std::ostream& out, const ScenarioConfig& cfg,
                        const std::vector<ResultRow>& rows);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

/// Column names of the results CSV, in order.
const std::vector<std::string>& result_columns();

}  // namespace uavrelay::harness
