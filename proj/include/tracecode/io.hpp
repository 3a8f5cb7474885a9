#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracecode/strings.hpp"
#include "tracecode/trace.hpp"

namespace tracecode {

// Text format: header line "q=<int>", then one string per line with
// symbols as base-q digits 0-9a-z.
void write_strings(std::ostream& os, std::uint32_t q,
                   const std::vector<QaryString>& strings);
std::pair<std::uint32_t, std::vector<QaryString>> read_strings(
    std::istream& is);

void write_strings_file(const std::string& path, std::uint32_t q,
                        const std::vector<QaryString>& strings);
std::pair<std::uint32_t, std::vector<QaryString>> read_strings_file(
    const std::string& path);

// Trace format: {"q":..,"lmin":..,"lover":..,"segments":[..],
// "placements":[[strand,loc],..]} with placements optional.
nlohmann::json trace_to_json(const Trace& t, std::uint32_t q, TraceParams p);
struct TraceFile {
  std::uint32_t q = 2;
  std::size_t lmin = 1;
  std::size_t lover = 0;
  Trace trace;
};
TraceFile trace_from_json(const nlohmann::json& j);
void write_trace_file(const std::string& path, const Trace& t, std::uint32_t q,
                      TraceParams p);
TraceFile read_trace_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace tracecode
