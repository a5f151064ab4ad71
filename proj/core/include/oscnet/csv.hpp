#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscnet/scenario.hpp"

namespace oscnet::csv {

inline constexpr std::string_view kTimeSeriesHeader =
    "t,position_index,log_negativity,entropy,fidelity,purity_defect,energy";

// Shortest representation that parses back to the same double; always '.'
// as decimal separator, independent of the global locale.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);

double parse_double(std::string_view text);
std::optional<double> parse_optional(std::string_view text);

// Splits one CSV line on commas. Fields produced by this library never
// need quoting; quoted fields are still accepted.
std::vector<std::string> split_fields(std::string_view line);

// Inverse of time_series_csv; '#' comment lines are skipped.
std::vector<TimeSeriesRecord> parse_time_series(std::string_view text);

}  // namespace oscnet::csv
