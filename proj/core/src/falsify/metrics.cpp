#include "stlf/falsify/metrics.hpp"

#include <algorithm>

#include "stlf/errors.hpp"
#include "stlf/rng.hpp"
#include "stlf/stl/robustness.hpp"

namespace stlf::falsify {

namespace {

// Inclusive [lo, hi] window of the root operator, clamped to the trace.
std::pair<std::size_t, std::size_t> root_window(const stl::Formula& phi, std::size_t length) {
  if (!phi.is_temporal()) return {0, length - 1};
  const stl::TimeBound b = phi.root_bound();
  if (b.lo >= length) throw HorizonError("formula window starts after the end of the trace");
  return {b.lo, std::min(b.hi, length - 1)};
}

}  // namespace

double danger_fraction(const stl::Formula& danger, const Trace& decimated) {
  const auto [lo, hi] = root_window(danger, decimated.length());
  const std::vector<double> rho = stl::robustness_signal(stl::innermost_predicates(danger), decimated);
  std::size_t bad = 0;
  for (std::size_t t = lo; t <= hi; ++t) bad += rho[t] < 0.0 ? 1 : 0;
  return static_cast<double>(bad) / static_cast<double>(hi - lo + 1);
}

std::optional<std::size_t> completion_step(const stl::Formula& success, const Trace& decimated) {
  const std::vector<double> rho = stl::robustness_signal(stl::innermost_predicates(success), decimated);
  if (!success.is_temporal()) return rho[0] > 0.0 ? std::optional<std::size_t>(0) : std::nullopt;
  const auto [lo, hi] = root_window(success, decimated.length());
  if (std::holds_alternative<stl::node::Globally>(success.node())) {
    if (!(rho[hi] > 0.0)) return std::nullopt;
    std::size_t t = hi;
    while (t > 0 && rho[t - 1] > 0.0) --t;
    return t;
  }
  for (std::size_t t = lo; t <= hi; ++t) {
    if (rho[t] > 0.0) return t;
  }
  return std::nullopt;
}

Metrics evaluate(envs::Environment& env, const stl::Formula& success, const stl::Formula& danger, std::size_t trials,
                 std::uint64_t seed) {
  if (trials == 0) throw ArgumentError("evaluation needs at least one trial");
  const TaskSpec& task = env.task();
  stl::check_schema(success, task.signal_schema);
  stl::check_schema(danger, task.signal_schema);

  Rng rng(seed);
  std::size_t ok = 0;
  double danger_sum = 0.0;
  double tct_sum = 0.0;
  std::size_t tct_count = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    InputVector x;
    for (const auto& d : task.input_box.dims()) x.values.push_back(rng.uniform(d.lo, d.hi));
    const Trace full = env.simulate(x, derive_seed(seed, i));
    task.check_trace(full);
    const Trace w = decimate(full, task.stl_stride);
    danger_sum += danger_fraction(danger, w);
    if (stl::robustness(success, w) > 0.0) {
      ++ok;
      if (const auto t = completion_step(success, w)) {
        tct_sum += static_cast<double>(*t * task.stl_stride);
        ++tct_count;
      }
    }
  }
  Metrics m;
  m.trials = trials;
  m.sr = 100.0 * static_cast<double>(ok) / static_cast<double>(trials);
  m.dbr = 100.0 * danger_sum / static_cast<double>(trials);
  if (tct_count > 0) m.tct = tct_sum / static_cast<double>(tct_count);
  return m;
}

}  // namespace stlf::falsify
