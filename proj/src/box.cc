#include "dforall/box.h"

#include <algorithm>
#include <sstream>

namespace dforall {

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
    }
  }
}

int VariableSet::IndexOf(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

Box::Box(std::shared_ptr<const VariableSet> vars, std::vector<Interval> values)
    : vars_(std::move(vars)), values_(std::move(values)) {
  if (vars_->size() != values_.size()) {
    throw std::invalid_argument("Box: variable/interval count mismatch");
  }
}

Box::Box(const std::vector<std::string>& names, std::vector<Interval> values)
    : Box(std::make_shared<const VariableSet>(names), std::move(values)) {}

const Interval& Box::operator[](std::string_view name) const {
  const int i = vars_->IndexOf(name);
  if (i < 0) throw std::out_of_range("Box: unknown variable '" + std::string(name) + "'");
  return values_[i];
}

Interval& Box::operator[](std::string_view name) {
  const int i = vars_->IndexOf(name);
  if (i < 0) throw std::out_of_range("Box: unknown variable '" + std::string(name) + "'");
  return values_[i];
}

bool Box::is_empty() const {
  return std::any_of(values_.begin(), values_.end(),
                     [](const Interval& x) { return x.is_empty(); });
}

void Box::set_empty() {
  for (Interval& x : values_) x = Interval::Empty();
}

double Box::MaxWidth() const {
  double w = 0;
  for (const Interval& x : values_) w = std::max(w, x.width());
  return w;
}

std::vector<double> Box::Midpoint() const {
  std::vector<double> mid;
  mid.reserve(values_.size());
  for (const Interval& x : values_) mid.push_back(x.mid());
  return mid;
}

Environment Box::MidpointEnv() const {
  Environment env;
  for (std::size_t i = 0; i < values_.size(); ++i) env[name(i)] = values_[i].mid();
  return env;
}

bool Box::Contains(std::span<const double> point) const {
  if (point.size() != values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i].contains(point[i])) return false;
  }
  return true;
}

bool Box::is_subset_of(const Box& other) const {
  if (!(*vars_ == *other.vars_)) return false;
  if (is_empty()) return true;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i].is_subset_of(other.values_[i])) return false;
  }
  return true;
}

bool Box::operator==(const Box& other) const {
  if (!(*vars_ == *other.vars_)) return false;
  if (is_empty() || other.is_empty()) return is_empty() == other.is_empty();
  return values_ == other.values_;
}

bool Box::IsBisectable(std::size_t i) const {
  const Interval& x = values_.at(i);
  if (x.is_empty() || !(x.lo() < x.hi())) return false;
  const double m = x.mid();
  return x.lo() < m && m < x.hi();
}

std::pair<Box, Box> Box::Bisect(std::size_t i) const {
  if (!IsBisectable(i)) {
    throw UnbranchableError("cannot bisect '" + name(i) + "' in " +
                            [&] {
                              std::ostringstream os;
                              os << values_.at(i);
                              return os.str();
                            }());
  }
  const Interval& x = values_[i];
  const double m = x.mid();
  Box left = *this;
  Box right = *this;
  left.values_[i] = Interval(x.lo(), m);
  right.values_[i] = Interval(m, x.hi());
  return {std::move(left), std::move(right)};
}

std::ostream& operator<<(std::ostream& os, const Box& box) {
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (i > 0) os << "\n";
    os << box.name(i) << " : " << box[i];
  }
  return os;
}

Box Hull(const std::vector<Box>& boxes) {
  if (boxes.empty()) throw std::invalid_argument("Hull: no boxes");
  Box result = boxes.front();
  result.set_empty();
  for (const Box& b : boxes) {
    if (!(*b.vars() == *result.vars())) throw std::invalid_argument("Hull: variable mismatch");
    if (b.is_empty()) continue;
    for (std::size_t i = 0; i < b.size(); ++i) result[i] = Hull(result[i], b[i]);
  }
  return result;
}

Box Intersect(const Box& a, const Box& b) {
  if (!(*a.vars() == *b.vars())) throw std::invalid_argument("Intersect: variable mismatch");
  Box result = a;
  for (std::size_t i = 0; i < a.size(); ++i) result[i] = Intersect(a[i], b[i]);
  if (result.is_empty()) result.set_empty();
  return result;
}

}  // namespace dforall
