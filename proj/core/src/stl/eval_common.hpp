#pragma once

// Pieces shared by the quantitative and boolean evaluators: signal
// resolution, expression typing and evaluation, and the definition domain of
// each subformula. Neither evaluator calls the other.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlf/errors.hpp"
#include "stlf/stl/formula.hpp"
#include "stlf/trace.hpp"

namespace stlf::stl::detail {

using DimLookup = std::function<std::optional<std::size_t>(std::string_view)>;

struct Resolved {
  std::string base;
  std::size_t dim = 1;
  std::optional<std::size_t> axis;  // set when the name selects one component
};

inline std::optional<std::size_t> axis_suffix(std::string_view tail) {
  if (tail.size() == 1 && tail[0] >= 'x' && tail[0] <= 'z') return static_cast<std::size_t>(tail[0] - 'x');
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  if (tail.size() > 9) return std::nullopt;
  return static_cast<std::size_t>(std::stoul(std::string(tail)));
}

inline Resolved resolve(std::string_view name, const DimLookup& dim_of) {
  if (auto d = dim_of(name)) return Resolved{std::string(name), *d, std::nullopt};
  const auto us = name.rfind('_');
  if (us != std::string_view::npos && us > 0) {
    const auto base = name.substr(0, us);
    if (auto axis = axis_suffix(name.substr(us + 1))) {
      if (auto d = dim_of(base)) {
        if (*axis >= *d) {
          throw SchemaError("signal '" + std::string(name) + "' selects axis " + std::to_string(*axis) + " of '" +
                            std::string(base) + "', which has dimension " + std::to_string(*d));
        }
        return Resolved{std::string(base), 1, axis};
      }
    }
  }
  throw SchemaError("unknown signal '" + std::string(name) + "'");
}

inline std::size_t expr_dim(const ScalarExpr& e, const DimLookup& dim_of) {
  return std::visit(Overloaded{
                        [&](const expr::SignalRef& s) { return resolve(s.name, dim_of).dim; },
                        [](const expr::Constant&) -> std::size_t { return 1; },
                        [&](const expr::Add& a) {
                          const auto l = expr_dim(a.lhs, dim_of);
                          const auto r = expr_dim(a.rhs, dim_of);
                          if (l != r) {
                            throw SchemaError("dimension mismatch in '+': " + std::to_string(l) + " vs " +
                                              std::to_string(r));
                          }
                          return l;
                        },
                        [&](const expr::Sub& a) {
                          const auto l = expr_dim(a.lhs, dim_of);
                          const auto r = expr_dim(a.rhs, dim_of);
                          if (l != r) {
                            throw SchemaError("dimension mismatch in '-': " + std::to_string(l) + " vs " +
                                              std::to_string(r));
                          }
                          return l;
                        },
                        [&](const expr::Scale& s) { return expr_dim(s.operand, dim_of); },
                        [&](const expr::Norm& n) -> std::size_t {
                          expr_dim(n.operand, dim_of);
                          return 1;
                        },
                    },
                    e.node());
}

inline DimLookup trace_lookup(const Trace& w) {
  return [&w](std::string_view name) -> std::optional<std::size_t> {
    if (const auto* s = w.find(name)) return s->dim;
    return std::nullopt;
  };
}

/// Values of an expression at every sample, row-major (N x dim).
struct Column {
  std::size_t dim = 1;
  std::vector<double> data;
};

inline Column evaluate(const ScalarExpr& e, const Trace& w) {
  const std::size_t n = w.length();
  return std::visit(
      Overloaded{
          [&](const expr::SignalRef& s) {
            const Resolved r = resolve(s.name, trace_lookup(w));
            const Signal& sig = w.at(r.base);
            if (!r.axis) return Column{sig.dim, sig.data};
            Column c{1, std::vector<double>(n)};
            for (std::size_t t = 0; t < n; ++t) c.data[t] = sig.data[t * sig.dim + *r.axis];
            return c;
          },
          [&](const expr::Constant& k) { return Column{1, std::vector<double>(n, k.value)}; },
          [&](const expr::Add& a) {
            Column l = evaluate(a.lhs, w);
            const Column r = evaluate(a.rhs, w);
            if (l.dim != r.dim) throw SchemaError("dimension mismatch in '+'");
            for (std::size_t i = 0; i < l.data.size(); ++i) l.data[i] += r.data[i];
            return l;
          },
          [&](const expr::Sub& a) {
            Column l = evaluate(a.lhs, w);
            const Column r = evaluate(a.rhs, w);
            if (l.dim != r.dim) throw SchemaError("dimension mismatch in '-'");
            for (std::size_t i = 0; i < l.data.size(); ++i) l.data[i] -= r.data[i];
            return l;
          },
          [&](const expr::Scale& s) {
            Column c = evaluate(s.operand, w);
            for (double& v : c.data) v *= s.factor;
            return c;
          },
          [&](const expr::Norm& nm) {
            const Column c = evaluate(nm.operand, w);
            Column out{1, std::vector<double>(n)};
            for (std::size_t t = 0; t < n; ++t) {
              if (c.dim == 1) {
                out.data[t] = std::abs(c.data[t]);
                continue;
              }
              double acc = 0.0;
              for (std::size_t k = 0; k < c.dim; ++k) acc += c.data[t * c.dim + k] * c.data[t * c.dim + k];
              out.data[t] = std::sqrt(acc);
            }
            return out;
          },
      },
      e.node());
}

/// Scalar values of a predicate's left-hand side.
inline std::vector<double> predicate_lhs(const node::Predicate& p, const Trace& w) {
  Column c = evaluate(p.expr, w);
  if (c.dim != 1) {
    throw SchemaError("comparison needs a scalar expression, got dimension " + std::to_string(c.dim) +
                      "; wrap vectors in norm(...)");
  }
  return std::move(c.data);
}

/// Number of leading time steps at which the formula has a value.
///
/// Strict mode: N - horizon (or 0). Truncation mode: windows clamp to the
/// child's domain, so a temporal node loses only its lower bound.
inline std::size_t defined_length(const Formula& phi, std::size_t n, bool truncate) {
  auto shrink = [truncate](std::size_t len, TimeBound b) -> std::size_t {
    const std::size_t cut = truncate ? b.lo : b.hi;
    return len > cut ? len - cut : 0;
  };
  return std::visit(Overloaded{
                        [&](const node::Predicate&) { return n; },
                        [&](const node::Not& x) { return defined_length(x.child, n, truncate); },
                        [&](const node::And& x) {
                          return std::min(defined_length(x.lhs, n, truncate), defined_length(x.rhs, n, truncate));
                        },
                        [&](const node::Or& x) {
                          return std::min(defined_length(x.lhs, n, truncate), defined_length(x.rhs, n, truncate));
                        },
                        [&](const node::Globally& x) { return shrink(defined_length(x.child, n, truncate), x.bound); },
                        [&](const node::Eventually& x) {
                          return shrink(defined_length(x.child, n, truncate), x.bound);
                        },
                        [&](const node::Until& x) {
                          return shrink(std::min(defined_length(x.lhs, n, truncate), defined_length(x.rhs, n, truncate)),
                                        x.bound);
                        },
                    },
                    phi.node());
}

inline void check_time(const Formula& phi, const Trace& w, std::size_t t0, bool truncate) {
  const std::size_t len = defined_length(phi, w.length(), truncate);
  if (t0 < len) return;
  if (truncate) {
    throw HorizonError("evaluation window at t0=" + std::to_string(t0) + " is empty on a trace of " +
                       std::to_string(w.length()) + " samples");
  }
  throw HorizonError("formula horizon " + std::to_string(horizon(phi)) + " from t0=" + std::to_string(t0) +
                     " exceeds trace of " + std::to_string(w.length()) + " samples");
}

}  // namespace stlf::stl::detail
