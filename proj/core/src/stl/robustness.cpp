#include "stlf/stl/robustness.hpp"

#include <deque>
#include <limits>

#include "eval_common.hpp"

namespace stlf::stl {

namespace {

// out[t] = min (or max) of in[t+a .. min(t+b, in.size()-1)] for t < out_len.
// Monotone deque (Lemire); each index enters and leaves once.
template <class Better>
std::vector<double> sliding(const std::vector<double>& in, TimeBound b, std::size_t out_len, Better better) {
  std::vector<double> out(out_len);
  std::deque<std::size_t> q;
  std::size_t next = 0;  // next input index to push
  for (std::size_t t = 0; t < out_len; ++t) {
    const std::size_t lo = t + b.lo;
    const std::size_t hi = std::min(t + b.hi, in.size() - 1);
    for (; next <= hi; ++next) {
      while (!q.empty() && !better(in[q.back()], in[next])) q.pop_back();
      q.push_back(next);
    }
    while (q.front() < lo) q.pop_front();
    out[t] = in[q.front()];
  }
  return out;
}

std::vector<double> signal(const Formula& phi, const Trace& w, bool truncate) {
  const std::size_t len = detail::defined_length(phi, w.length(), truncate);
  return std::visit(
      Overloaded{
          [&](const node::Predicate& p) {
            std::vector<double> v = detail::predicate_lhs(p, w);
            const bool upper = p.relation == Relation::LessEqual || p.relation == Relation::Less;
            for (double& x : v) x = upper ? p.threshold - x : x - p.threshold;
            return v;
          },
          [&](const node::Not& n) {
            std::vector<double> v = signal(n.child, w, truncate);
            for (double& x : v) x = -x;
            return v;
          },
          [&](const node::And& n) {
            const auto l = signal(n.lhs, w, truncate);
            const auto r = signal(n.rhs, w, truncate);
            std::vector<double> v(len);
            for (std::size_t t = 0; t < len; ++t) v[t] = std::min(l[t], r[t]);
            return v;
          },
          [&](const node::Or& n) {
            const auto l = signal(n.lhs, w, truncate);
            const auto r = signal(n.rhs, w, truncate);
            std::vector<double> v(len);
            for (std::size_t t = 0; t < len; ++t) v[t] = std::max(l[t], r[t]);
            return v;
          },
          [&](const node::Globally& n) {
            const auto c = signal(n.child, w, truncate);
            if (len == 0) return std::vector<double>{};
            return sliding(c, n.bound, len, [](double kept, double incoming) { return kept < incoming; });
          },
          [&](const node::Eventually& n) {
            const auto c = signal(n.child, w, truncate);
            if (len == 0) return std::vector<double>{};
            return sliding(c, n.bound, len, [](double kept, double incoming) { return kept > incoming; });
          },
          [&](const node::Until& n) {
            const auto l = signal(n.lhs, w, truncate);
            const auto r = signal(n.rhs, w, truncate);
            const std::size_t last = std::min(l.size(), r.size());  // exclusive
            std::vector<double> v(len);
            for (std::size_t t = 0; t < len; ++t) {
              double run_min = l[t];
              double best = -std::numeric_limits<double>::infinity();
              const std::size_t hi = std::min(t + n.bound.hi, last - 1);
              for (std::size_t tp = t; tp <= hi; ++tp) {
                run_min = std::min(run_min, l[tp]);
                if (tp >= t + n.bound.lo) best = std::max(best, std::min(r[tp], run_min));
              }
              v[t] = best;
            }
            return v;
          },
      },
      phi.node());
}

}  // namespace

std::vector<double> robustness_signal(const Formula& phi, const Trace& w, EvalOptions opts) {
  return signal(phi, w, opts.truncate);
}

double robustness(const Formula& phi, const Trace& w, std::size_t t0, EvalOptions opts) {
  detail::check_time(phi, w, t0, opts.truncate);
  return signal(phi, w, opts.truncate)[t0];
}

void check_schema(const Formula& phi, const SignalSchema& schema) {
  const detail::DimLookup dim_of = [&schema](std::string_view name) -> std::optional<std::size_t> {
    for (const auto& d : schema) {
      if (d.name == name) return d.dim;
    }
    return std::nullopt;
  };
  auto walk = [&](auto&& self, const Formula& f) -> void {
    std::visit(Overloaded{
                   [&](const node::Predicate& p) {
                     const std::size_t d = detail::expr_dim(p.expr, dim_of);
                     if (d != 1) {
                       throw SchemaError("comparison needs a scalar expression, got dimension " + std::to_string(d));
                     }
                   },
                   [&](const node::Not& n) { self(self, n.child); },
                   [&](const node::And& n) {
                     self(self, n.lhs);
                     self(self, n.rhs);
                   },
                   [&](const node::Or& n) {
                     self(self, n.lhs);
                     self(self, n.rhs);
                   },
                   [&](const node::Globally& n) { self(self, n.child); },
                   [&](const node::Eventually& n) { self(self, n.child); },
                   [&](const node::Until& n) {
                     self(self, n.lhs);
                     self(self, n.rhs);
                   },
               },
               f.node());
  };
  walk(walk, phi);
}

}  // namespace stlf::stl
