#pragma once

#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dforall/expr.h"
#include "dforall/interval.h"

namespace dforall {

/// Ordered list of variable names with O(1) lookup. Shared by all boxes over
/// the same variables.
class VariableSet {
 public:
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  /// -1 when absent.
  int IndexOf(std::string_view name) const;
  bool operator==(const VariableSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

/// Signals that a box component cannot be split further.
class UnbranchableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product of intervals indexed by a VariableSet. The box is empty when any
/// component is empty.
class Box {
 public:
  Box() : vars_(std::make_shared<const VariableSet>(std::vector<std::string>{})) {}
  Box(std::shared_ptr<const VariableSet> vars, std::vector<Interval> values);
  Box(const std::vector<std::string>& names, std::vector<Interval> values);

  std::size_t size() const { return values_.size(); }
  const std::shared_ptr<const VariableSet>& vars() const { return vars_; }
  const std::string& name(std::size_t i) const { return vars_->name(i); }

  const Interval& operator[](std::size_t i) const { return values_[i]; }
  Interval& operator[](std::size_t i) { return values_[i]; }
  /// Throws std::out_of_range for an unknown name.
  const Interval& operator[](std::string_view name) const;
  Interval& operator[](std::string_view name);
  const std::vector<Interval>& values() const { return values_; }

  bool is_empty() const;
  void set_empty();
  double MaxWidth() const;
  std::vector<double> Midpoint() const;
  Environment MidpointEnv() const;
  bool Contains(std::span<const double> point) const;
  bool is_subset_of(const Box& other) const;
  bool operator==(const Box& other) const;

  /// Splits component i at its midpoint. Throws UnbranchableError when the
  /// component has zero width or its midpoint coincides with an endpoint.
  std::pair<Box, Box> Bisect(std::size_t i) const;
  bool IsBisectable(std::size_t i) const;

 private:
  std::shared_ptr<const VariableSet> vars_;
  std::vector<Interval> values_;
};

std::ostream& operator<<(std::ostream& os, const Box& box);

/// Componentwise hull; empty boxes are ignored, the hull of only empty boxes
/// is empty. Throws std::invalid_argument on a variable-set mismatch or an
/// empty list.
Box Hull(const std::vector<Box>& boxes);
/// Componentwise intersection. Throws std::invalid_argument on mismatch.
Box Intersect(const Box& a, const Box& b);

}  // namespace dforall
