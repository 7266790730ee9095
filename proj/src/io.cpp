#include "dualkosz/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

namespace dualkosz {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

std::optional<std::size_t> parse_id(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_real(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

struct RawEdge {
  std::size_t tail;
  std::size_t head;
  double resistance;
};

}  // namespace

EdgeList parse_edge_list(std::istream& in, const std::string& source) {
  std::vector<RawEdge> raw;
  bool saw_zero = false;
  std::size_t max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw ParseError(source, line_no, "expected \"u v r\", got " + std::to_string(fields.size()) + " fields");
    }
    const auto u = parse_id(fields[0]);
    const auto v = parse_id(fields[1]);
    if (!u || !v) throw ParseError(source, line_no, "vertex ids must be non-negative integers");
    const auto r = parse_real(fields[2]);
    if (!r) throw ParseError(source, line_no, "resistance is not a finite number");
    saw_zero = saw_zero || *u == 0 || *v == 0;
    max_id = std::max({max_id, *u, *v});
    raw.push_back({*u, *v, *r});
  }
  if (raw.empty()) throw ParseError(source, 0, "no edges");

  EdgeList out;
  out.one_based = !saw_zero;
  const std::size_t shift = out.one_based ? 1 : 0;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back({e.tail - shift, e.head - shift, e.resistance});
  out.graph = WeightedGraph(max_id + 1 - shift, std::move(edges));
  return out;
}

SupplyVector parse_supply(std::istream& in, std::size_t num_vertices, bool one_based, const std::string& source) {
  SupplyVector b(num_vertices);
  std::vector<char> seen(num_vertices, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw ParseError(source, line_no, "expected \"v b\", got " + std::to_string(fields.size()) + " fields");
    }
    const auto id = parse_id(fields[0]);
    if (!id) throw ParseError(source, line_no, "vertex id must be a non-negative integer");
    if (one_based && *id == 0) {
      throw ParseError(source, line_no, "vertex id 0 in a supply file for a 1-based graph");
    }
    const std::size_t v = *id - (one_based ? 1 : 0);
    if (v >= num_vertices) throw ParseError(source, line_no, "vertex id beyond the graph");
    if (seen[v]) throw ParseError(source, line_no, "vertex listed twice");
    const auto value = parse_real(fields[1]);
    if (!value) throw ParseError(source, line_no, "supply is not a finite number");
    seen[v] = 1;
    b[v] = *value;
  }
  return b;
}

}  // namespace dualkosz
