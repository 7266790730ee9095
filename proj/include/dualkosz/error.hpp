#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualkosz {

enum class ErrorKind {
  Disconnected,
  NonpositiveResistance,
  SelfLoop,
  VertexOutOfRange,
  SupplyImbalance,
  DimensionMismatch,
  TooLargeForExhaustive,
  NotATreeEdge,
  NotASpanningTree,
  RootCutQuery,
  InfeasibleFlow,
  GraphIsTree,
  SizeGuard,
  SingularSystem,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Raised for every precondition failure in the library. The kind is stable
/// and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dualkosz
