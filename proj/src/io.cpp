#include "tracecode/io.hpp"

#include <fstream>
#include <sstream>

namespace tracecode {

void write_strings(std::ostream& os, std::uint32_t q,
                   const std::vector<QaryString>& strings) {
  os << "q=" << q << "\n";
  for (const QaryString& s : strings) os << s.to_string() << "\n";
}

std::pair<std::uint32_t, std::vector<QaryString>> read_strings(
    std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("q=", 0) != 0)
    throw parameter_error("strings file must start with a q=<int> header");
  const std::uint32_t q =
      static_cast<std::uint32_t>(std::stoul(line.substr(2)));
  std::vector<QaryString> out;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    out.push_back(QaryString::parse(q, line));
  }
  return {q, out};
}

void write_strings_file(const std::string& path, std::uint32_t q,
                        const std::vector<QaryString>& strings) {
  std::ofstream os(path);
  if (!os) throw parameter_error("cannot open " + path + " for writing");
  write_strings(os, q, strings);
}

std::pair<std::uint32_t, std::vector<QaryString>> read_strings_file(
    const std::string& path) {
  std::ifstream is(path);
  if (!is) throw parameter_error("cannot open " + path);
  return read_strings(is);
}

nlohmann::json trace_to_json(const Trace& t, std::uint32_t q, TraceParams p) {
  nlohmann::json j;
  j["q"] = q;
  j["lmin"] = p.lmin;
  j["lover"] = p.lover;
  std::vector<std::string> segments;
  bool all_placed = true;
  for (const TraceSegment& s : t.segments) {
    segments.push_back(s.content.to_string());
    if (!s.placement) all_placed = false;
  }
  j["segments"] = segments;
  if (all_placed && !t.segments.empty()) {
    std::vector<std::pair<std::size_t, std::size_t>> placements;
    for (const TraceSegment& s : t.segments)
      placements.emplace_back(s.placement->strand, s.placement->location);
    j["placements"] = placements;
  }
  return j;
}

TraceFile trace_from_json(const nlohmann::json& j) {
  TraceFile out;
  out.q = j.at("q").get<std::uint32_t>();
  out.lmin = j.at("lmin").get<std::size_t>();
  out.lover = j.at("lover").get<std::size_t>();
  for (const auto& s : j.at("segments"))
    out.trace.segments.push_back(
        {QaryString::parse(out.q, s.get<std::string>()), std::nullopt});
  if (j.contains("placements")) {
    const auto& pl = j.at("placements");
    if (pl.size() != out.trace.segments.size())
      throw parameter_error("placements do not align with segments");
    for (std::size_t i = 0; i < out.trace.segments.size(); ++i)
      out.trace.segments[i].placement =
          Placement{pl[i][0].get<std::size_t>(), pl[i][1].get<std::size_t>()};
  }
  return out;
}

void write_trace_file(const std::string& path, const Trace& t, std::uint32_t q,
                      TraceParams p) {
  write_text_file(path, trace_to_json(t, q, p).dump(2) + "\n");
}

TraceFile read_trace_file(const std::string& path) {
  return trace_from_json(nlohmann::json::parse(read_text_file(path)));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw parameter_error("cannot open " + path + " for writing");
  os << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw parameter_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace tracecode
