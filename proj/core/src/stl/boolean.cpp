#include <unordered_map>

#include "eval_common.hpp"
#include "stlf/stl/robustness.hpp"

namespace stlf::stl {

namespace {

// Direct recursive evaluation of the classical semantics. Predicate values are
// cached per node; everything else is recomputed per (node, t).
class BooleanEvaluator {
 public:
  BooleanEvaluator(const Trace& w, bool truncate) : w_(w), truncate_(truncate) {}

  bool eval(const Formula& phi, std::size_t t) {
    return std::visit(
        Overloaded{
            [&](const node::Predicate& p) {
              const double e = lhs(p)[t];
              switch (p.relation) {
                case Relation::LessEqual: return e <= p.threshold;
                case Relation::GreaterEqual: return e >= p.threshold;
                case Relation::Less: return e < p.threshold;
                case Relation::Greater: return e > p.threshold;
              }
              return false;
            },
            [&](const node::Not& n) { return !eval(n.child, t); },
            [&](const node::And& n) { return eval(n.lhs, t) && eval(n.rhs, t); },
            [&](const node::Or& n) { return eval(n.lhs, t) || eval(n.rhs, t); },
            [&](const node::Globally& n) {
              const std::size_t end = window_end(n.child, t, n.bound);
              for (std::size_t tp = t + n.bound.lo; tp <= end; ++tp) {
                if (!eval(n.child, tp)) return false;
              }
              return true;
            },
            [&](const node::Eventually& n) {
              const std::size_t end = window_end(n.child, t, n.bound);
              for (std::size_t tp = t + n.bound.lo; tp <= end; ++tp) {
                if (eval(n.child, tp)) return true;
              }
              return false;
            },
            [&](const node::Until& n) {
              const std::size_t dom = std::min(domain(n.lhs), domain(n.rhs));
              const std::size_t end = std::min(t + n.bound.hi, dom - 1);
              for (std::size_t tp = t + n.bound.lo; tp <= end; ++tp) {
                if (!eval(n.rhs, tp)) continue;
                bool held = true;
                for (std::size_t tpp = t; tpp <= tp && held; ++tpp) held = eval(n.lhs, tpp);
                if (held) return true;
              }
              return false;
            },
        },
        phi.node());
  }

 private:
  std::size_t domain(const Formula& f) const { return detail::defined_length(f, w_.length(), truncate_); }

  std::size_t window_end(const Formula& child, std::size_t t, TimeBound b) const {
    return std::min(t + b.hi, domain(child) - 1);
  }

  const std::vector<double>& lhs(const node::Predicate& p) {
    auto it = cache_.find(&p);
    if (it == cache_.end()) it = cache_.emplace(&p, detail::predicate_lhs(p, w_)).first;
    return it->second;
  }

  const Trace& w_;
  bool truncate_;
  std::unordered_map<const node::Predicate*, std::vector<double>> cache_;
};

}  // namespace

bool satisfies(const Formula& phi, const Trace& w, std::size_t t0, EvalOptions opts) {
  detail::check_time(phi, w, t0, opts.truncate);
  BooleanEvaluator ev(w, opts.truncate);
  return ev.eval(phi, t0);
}

}  // namespace stlf::stl
