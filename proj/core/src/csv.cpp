#include "oscnet/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace oscnet::csv {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buffer, result.ptr);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw std::invalid_argument("parse_double: not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::optional<double> parse_optional(std::string_view text) {
  if (text.empty()) {
    return std::nullopt;
  }
  return parse_double(text);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::vector<TimeSeriesRecord> parse_time_series(std::string_view text) {
  std::vector<TimeSeriesRecord> records;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (!header_seen) {
      if (line != kTimeSeriesHeader) {
        throw std::invalid_argument("parse_time_series: unexpected header '" + std::string(line) +
                                    "'");
      }
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 7) {
      throw std::invalid_argument("parse_time_series: expected 7 fields, got " +
                                  std::to_string(f.size()));
    }
    int position = 0;
    const auto pos_result = std::from_chars(f[1].data(), f[1].data() + f[1].size(), position);
    if (pos_result.ec != std::errc() || pos_result.ptr != f[1].data() + f[1].size()) {
      throw std::invalid_argument("parse_time_series: bad position index '" + f[1] + "'");
    }
    records.push_back({parse_double(f[0]), position, parse_optional(f[2]), parse_optional(f[3]),
                       parse_optional(f[4]), parse_optional(f[5]), parse_optional(f[6])});
  }
  if (!header_seen) {
    throw std::invalid_argument("parse_time_series: missing header");
  }
  return records;
}

}  // namespace oscnet::csv
