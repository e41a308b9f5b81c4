#include "stlf/stl/formula.hpp"

#include <algorithm>
#include <vector>

#include "stlf/errors.hpp"

namespace stlf::stl {

ScalarExpr ScalarExpr::signal(std::string name) {
  return ScalarExpr(std::make_shared<const Node>(expr::SignalRef{std::move(name)}));
}
ScalarExpr ScalarExpr::constant(double value) {
  return ScalarExpr(std::make_shared<const Node>(expr::Constant{value}));
}
ScalarExpr ScalarExpr::add(ScalarExpr lhs, ScalarExpr rhs) {
  return ScalarExpr(std::make_shared<const Node>(expr::Add{std::move(lhs), std::move(rhs)}));
}
ScalarExpr ScalarExpr::sub(ScalarExpr lhs, ScalarExpr rhs) {
  return ScalarExpr(std::make_shared<const Node>(expr::Sub{std::move(lhs), std::move(rhs)}));
}
ScalarExpr ScalarExpr::scale(double factor, ScalarExpr operand) {
  return ScalarExpr(std::make_shared<const Node>(expr::Scale{factor, std::move(operand)}));
}
ScalarExpr ScalarExpr::norm(ScalarExpr operand) {
  return ScalarExpr(std::make_shared<const Node>(expr::Norm{std::move(operand)}));
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      Overloaded{
          [&](const expr::SignalRef& x) { return x.name == std::get<expr::SignalRef>(b.node()).name; },
          [&](const expr::Constant& x) { return x.value == std::get<expr::Constant>(b.node()).value; },
          [&](const expr::Add& x) {
            const auto& y = std::get<expr::Add>(b.node());
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const expr::Sub& x) {
            const auto& y = std::get<expr::Sub>(b.node());
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const expr::Scale& x) {
            const auto& y = std::get<expr::Scale>(b.node());
            return x.factor == y.factor && x.operand == y.operand;
          },
          [&](const expr::Norm& x) { return x.operand == std::get<expr::Norm>(b.node()).operand; },
      },
      a.node());
}

namespace {
void check_bound(TimeBound b) {
  if (b.lo > b.hi) {
    throw BoundError("temporal bound [" + std::to_string(b.lo) + "," + std::to_string(b.hi) +
                     "] has lower > upper");
  }
}
}  // namespace

Formula Formula::predicate(ScalarExpr expr, Relation relation, double threshold) {
  return Formula(std::make_shared<const Node>(node::Predicate{std::move(expr), relation, threshold}));
}
Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(node::Not{std::move(child)}));
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::And{std::move(lhs), std::move(rhs)}));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::Or{std::move(lhs), std::move(rhs)}));
}
Formula Formula::globally(TimeBound bound, Formula child) {
  check_bound(bound);
  return Formula(std::make_shared<const Node>(node::Globally{bound, std::move(child)}));
}
Formula Formula::eventually(TimeBound bound, Formula child) {
  check_bound(bound);
  return Formula(std::make_shared<const Node>(node::Eventually{bound, std::move(child)}));
}
Formula Formula::until(TimeBound bound, Formula lhs, Formula rhs) {
  check_bound(bound);
  return Formula(std::make_shared<const Node>(node::Until{bound, std::move(lhs), std::move(rhs)}));
}

bool Formula::is_temporal() const noexcept {
  return std::holds_alternative<node::Globally>(node()) || std::holds_alternative<node::Eventually>(node()) ||
         std::holds_alternative<node::Until>(node());
}

TimeBound Formula::root_bound() const {
  if (const auto* g = std::get_if<node::Globally>(&node())) return g->bound;
  if (const auto* f = std::get_if<node::Eventually>(&node())) return f->bound;
  if (const auto* u = std::get_if<node::Until>(&node())) return u->bound;
  throw ArgumentError("formula root is not a temporal operator");
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      Overloaded{
          [&](const node::Predicate& x) {
            const auto& y = std::get<node::Predicate>(b.node());
            return x.relation == y.relation && x.threshold == y.threshold && x.expr == y.expr;
          },
          [&](const node::Not& x) { return x.child == std::get<node::Not>(b.node()).child; },
          [&](const node::And& x) {
            const auto& y = std::get<node::And>(b.node());
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const node::Or& x) {
            const auto& y = std::get<node::Or>(b.node());
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const node::Globally& x) {
            const auto& y = std::get<node::Globally>(b.node());
            return x.bound == y.bound && x.child == y.child;
          },
          [&](const node::Eventually& x) {
            const auto& y = std::get<node::Eventually>(b.node());
            return x.bound == y.bound && x.child == y.child;
          },
          [&](const node::Until& x) {
            const auto& y = std::get<node::Until>(b.node());
            return x.bound == y.bound && x.lhs == y.lhs && x.rhs == y.rhs;
          },
      },
      a.node());
}

std::size_t horizon(const Formula& phi) {
  return std::visit(Overloaded{
                        [](const node::Predicate&) -> std::size_t { return 0; },
                        [](const node::Not& n) { return horizon(n.child); },
                        [](const node::And& n) { return std::max(horizon(n.lhs), horizon(n.rhs)); },
                        [](const node::Or& n) { return std::max(horizon(n.lhs), horizon(n.rhs)); },
                        [](const node::Globally& n) { return n.bound.hi + horizon(n.child); },
                        [](const node::Eventually& n) { return n.bound.hi + horizon(n.child); },
                        [](const node::Until& n) {
                          return n.bound.hi + std::max(horizon(n.lhs), horizon(n.rhs));
                        },
                    },
                    phi.node());
}

Formula innermost_predicates(const Formula& phi) {
  return std::visit(Overloaded{
                        [&](const node::Predicate&) { return phi; },
                        [](const node::Not& n) { return Formula::negation(innermost_predicates(n.child)); },
                        [](const node::And& n) {
                          return Formula::conjunction(innermost_predicates(n.lhs), innermost_predicates(n.rhs));
                        },
                        [](const node::Or& n) {
                          return Formula::disjunction(innermost_predicates(n.lhs), innermost_predicates(n.rhs));
                        },
                        [](const node::Globally& n) { return innermost_predicates(n.child); },
                        [](const node::Eventually& n) { return innermost_predicates(n.child); },
                        [](const node::Until& n) {
                          return Formula::conjunction(innermost_predicates(n.lhs), innermost_predicates(n.rhs));
                        },
                    },
                    phi.node());
}

namespace {
void collect(const ScalarExpr& e, std::vector<std::string>& out) {
  std::visit(Overloaded{
                 [&](const expr::SignalRef& s) {
                   if (std::find(out.begin(), out.end(), s.name) == out.end()) out.push_back(s.name);
                 },
                 [](const expr::Constant&) {},
                 [&](const expr::Add& a) {
                   collect(a.lhs, out);
                   collect(a.rhs, out);
                 },
                 [&](const expr::Sub& a) {
                   collect(a.lhs, out);
                   collect(a.rhs, out);
                 },
                 [&](const expr::Scale& a) { collect(a.operand, out); },
                 [&](const expr::Norm& a) { collect(a.operand, out); },
             },
             e.node());
}

void collect(const Formula& f, std::vector<std::string>& out) {
  std::visit(Overloaded{
                 [&](const node::Predicate& p) { collect(p.expr, out); },
                 [&](const node::Not& n) { collect(n.child, out); },
                 [&](const node::And& n) {
                   collect(n.lhs, out);
                   collect(n.rhs, out);
                 },
                 [&](const node::Or& n) {
                   collect(n.lhs, out);
                   collect(n.rhs, out);
                 },
                 [&](const node::Globally& n) { collect(n.child, out); },
                 [&](const node::Eventually& n) { collect(n.child, out); },
                 [&](const node::Until& n) {
                   collect(n.lhs, out);
                   collect(n.rhs, out);
                 },
             },
             f.node());
}
}  // namespace

std::vector<std::string> referenced_signals(const Formula& phi) {
  std::vector<std::string> out;
  collect(phi, out);
  return out;
}

}  // namespace stlf::stl
