#pragma once

#include <span>
#include <vector>

#include "dforall/box.h"
#include "dforall/expr.h"
#include "dforall/interval.h"

namespace dforall {

/// An expression flattened into topological order against a fixed variable
/// ordering. Shared subtrees occupy one slot. The last node is the root.
class Tape {
 public:
  struct Node {
    ExprKind kind;
    int arg0{-1};
    int arg1{-1};
    int var{-1};          // kVariable: index into the box
    Interval constant;    // kConstant: enclosure of the rational value
    double point_value{0};  // kConstant: nearest double
    int exponent{0};      // kPow
  };

  /// Throws std::invalid_argument if a free variable of e is not in vars.
  Tape(const Expr& e, const VariableSet& vars);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  /// Box indices this expression reads.
  const std::vector<int>& variables() const { return variables_; }

  Interval Evaluate(const Box& box) const;
  /// Writes every node's enclosure into values (resized as needed) and
  /// returns the root's.
  Interval Forward(const Box& box, std::vector<Interval>* values) const;
  /// Round-to-nearest evaluation; NaN when some function is applied outside
  /// its domain.
  double EvaluatePoint(std::span<const double> point) const;

 private:
  int Add(const Expr& e, const VariableSet& vars, std::vector<std::pair<const ExprNode*, int>>* seen);

  std::vector<Node> nodes_;
  std::vector<int> variables_;
};

/// Interval image of e over box (natural interval extension).
Interval EvaluateInterval(const Expr& e, const Box& box);

/// Enclosure of one node's value given its argument enclosures.
Interval ApplyForward(const Tape::Node& node, const Interval& a, const Interval& b);

}  // namespace dforall
