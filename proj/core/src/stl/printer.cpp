#include <charconv>
#include <cmath>

#include "stlf/stl/parser.hpp"

namespace stlf::stl {

namespace {

std::string number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string bound(TimeBound b) { return "[" + std::to_string(b.lo) + "," + std::to_string(b.hi) + "]"; }

const char* relation(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
  }
  return "?";
}

std::string top_expr(const ScalarExpr& e);

// Negative constants and scale factors print inside parentheses so that
// `a - -1` never appears and the parser folds them back to the same node.
std::string expr_text(const ScalarExpr& e) {
  return std::visit(Overloaded{
                        [](const expr::SignalRef& s) { return s.name; },
                        [](const expr::Constant& c) {
                          return c.value < 0 || std::signbit(c.value) ? "(" + number(c.value) + ")" : number(c.value);
                        },
                        [](const expr::Add& a) { return "(" + expr_text(a.lhs) + " + " + expr_text(a.rhs) + ")"; },
                        [](const expr::Sub& a) { return "(" + expr_text(a.lhs) + " - " + expr_text(a.rhs) + ")"; },
                        [](const expr::Scale& s) {
                          const std::string f = std::signbit(s.factor) ? "(" + number(s.factor) + ")" : number(s.factor);
                          return "(" + f + " * " + expr_text(s.operand) + ")";
                        },
                        [](const expr::Norm& n) { return "norm(" + top_expr(n.operand) + ")"; },
                    },
                    e.node());
}

std::string top_expr(const ScalarExpr& e) {
  // Drop the outer parentheses of a top-level Add/Sub, which are redundant in
  // a predicate or inside norm().
  if (std::holds_alternative<expr::Add>(e.node()) || std::holds_alternative<expr::Sub>(e.node())) {
    const std::string s = expr_text(e);
    return s.substr(1, s.size() - 2);
  }
  return expr_text(e);
}

std::string formula_text(const Formula& f) {
  return std::visit(
      Overloaded{
          [](const node::Predicate& p) {
            return top_expr(p.expr) + " " + relation(p.relation) + " " + number(p.threshold);
          },
          [](const node::Not& n) { return "not (" + formula_text(n.child) + ")"; },
          [](const node::And& n) { return "(" + formula_text(n.lhs) + " and " + formula_text(n.rhs) + ")"; },
          [](const node::Or& n) { return "(" + formula_text(n.lhs) + " or " + formula_text(n.rhs) + ")"; },
          [](const node::Globally& n) { return "G" + bound(n.bound) + "(" + formula_text(n.child) + ")"; },
          [](const node::Eventually& n) { return "F" + bound(n.bound) + "(" + formula_text(n.child) + ")"; },
          [](const node::Until& n) {
            return "((" + formula_text(n.lhs) + ") U" + bound(n.bound) + " (" + formula_text(n.rhs) + "))";
          },
      },
      f.node());
}

}  // namespace

std::string print(const Formula& phi) { return formula_text(phi); }

std::string print(const ScalarExpr& e) { return top_expr(e); }

}  // namespace stlf::stl
