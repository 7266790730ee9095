#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>

#include "dualkosz/graph.hpp"

namespace dualkosz {

/// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct EdgeList {
  WeightedGraph graph;
  /// True when no vertex id 0 appeared, so ids were shifted down by one.
  bool one_based = false;
};

/// Lines "u v r"; '#' starts a comment; blank lines are skipped. Ids are
/// 1-based unless some id is 0. The vertex count is the largest id seen.
/// Structural problems (self-loops, r <= 0) are reported as dualkosz::Error.
EdgeList parse_edge_list(std::istream& in, const std::string& source = "<edges>");

/// Lines "v b" in the graph's id base; unlisted vertices get 0. Listing a
/// vertex twice is an error.
SupplyVector parse_supply(std::istream& in, std::size_t num_vertices, bool one_based,
                          const std::string& source = "<supply>");

}  // namespace dualkosz
