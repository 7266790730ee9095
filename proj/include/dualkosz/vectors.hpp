#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dualkosz {

/// A dense real vector tagged with what it is indexed by and what it means.
/// Supplies and potentials are indexed by vertex, flows by edge id; the tag
/// keeps them from being mixed up at call sites.
template <class Tag>
class TaggedVector {
 public:
  TaggedVector() = default;
  explicit TaggedVector(std::size_t size, double fill = 0.0) : data_(size, fill) {}
  explicit TaggedVector(std::vector<double> values) : data_(std::move(values)) {}
  TaggedVector(std::initializer_list<double> values) : data_(values) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<const double> view() const noexcept { return data_; }
  std::span<double> view() noexcept { return data_; }
  const std::vector<double>& values() const& noexcept { return data_; }
  std::vector<double> values() && noexcept { return std::move(data_); }

  friend bool operator==(const TaggedVector&, const TaggedVector&) = default;

 private:
  std::vector<double> data_;
};

struct SupplyTag {};
struct PotentialTag {};
struct FlowTag {};

/// b: net supply per vertex, in flow units.
using SupplyVector = TaggedVector<SupplyTag>;
/// p: potential per vertex, in volts. Defined up to an additive constant.
using PotentialVector = TaggedVector<PotentialTag>;
/// f: flow per edge, signed relative to the edge's fixed orientation.
using FlowVector = TaggedVector<FlowTag>;

}  // namespace dualkosz
