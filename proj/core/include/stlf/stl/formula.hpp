#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace stlf::stl {

// ---------------------------------------------------------------------------
// Scalar expressions over signals
// ---------------------------------------------------------------------------

class ScalarExpr;

namespace expr {
/// Reference to a signal by name. Names such as `cube_pos_z` resolve to an
/// axis of `cube_pos` when the trace has no channel of that exact name.
struct SignalRef {
  std::string name;
};
struct Constant {
  double value = 0.0;
};
struct Add;
struct Sub;
struct Scale;
struct Norm;
}  // namespace expr

/// Immutable expression tree. Copies share structure.
class ScalarExpr {
 public:
  using Node = std::variant<expr::SignalRef, expr::Constant, expr::Add, expr::Sub, expr::Scale, expr::Norm>;

  static ScalarExpr signal(std::string name);
  static ScalarExpr constant(double value);
  static ScalarExpr add(ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr sub(ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr scale(double factor, ScalarExpr operand);
  static ScalarExpr norm(ScalarExpr operand);

  const Node& node() const noexcept;

  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);

 private:
  explicit ScalarExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace expr {
struct Add {
  ScalarExpr lhs, rhs;
};
struct Sub {
  ScalarExpr lhs, rhs;
};
struct Scale {
  double factor = 1.0;
  ScalarExpr operand;
};
struct Norm {
  ScalarExpr operand;
};
}  // namespace expr

inline const ScalarExpr::Node& ScalarExpr::node() const noexcept { return *node_; }

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class Relation { LessEqual, GreaterEqual, Less, Greater };

/// Inclusive window [lo, hi] in (decimated) trace steps.
struct TimeBound {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool operator==(const TimeBound&) const = default;
};

class Formula;

namespace node {
struct Predicate;
struct Not;
struct And;
struct Or;
struct Globally;
struct Eventually;
struct Until;
}  // namespace node

/// Immutable STL abstract syntax tree.
class Formula {
 public:
  using Node = std::variant<node::Predicate, node::Not, node::And, node::Or, node::Globally, node::Eventually,
                            node::Until>;

  static Formula predicate(ScalarExpr expr, Relation relation, double threshold);
  static Formula negation(Formula child);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  /// Temporal constructors throw BoundError when lo > hi.
  static Formula globally(TimeBound bound, Formula child);
  static Formula eventually(TimeBound bound, Formula child);
  static Formula until(TimeBound bound, Formula lhs, Formula rhs);

  const Node& node() const noexcept;

  bool is_temporal() const noexcept;
  /// Bound of the root operator; only meaningful when is_temporal().
  TimeBound root_bound() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {
struct Predicate {
  ScalarExpr expr;
  Relation relation = Relation::LessEqual;
  double threshold = 0.0;
};
struct Not {
  Formula child;
};
struct And {
  Formula lhs, rhs;
};
struct Or {
  Formula lhs, rhs;
};
struct Globally {
  TimeBound bound;
  Formula child;
};
struct Eventually {
  TimeBound bound;
  Formula child;
};
struct Until {
  TimeBound bound;
  Formula lhs, rhs;
};
}  // namespace node

inline const Formula::Node& Formula::node() const noexcept { return *node_; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// Required lookahead in steps: 0 for predicates, max over boolean children,
/// upper bound plus child horizon for temporal operators.
std::size_t horizon(const Formula& phi);

/// Removes every temporal operator; Until keeps both operands under And.
Formula innermost_predicates(const Formula& phi);

/// Names referenced by the formula, in first-use order.
std::vector<std::string> referenced_signals(const Formula& phi);

}  // namespace stlf::stl
