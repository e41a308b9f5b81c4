#include "stlf/falsify/falsify.hpp"

#include <chrono>
#include <limits>

#include "stlf/errors.hpp"
#include "stlf/rng.hpp"
#include "stlf/stl/robustness.hpp"

namespace stlf::falsify {

std::uint64_t episode_seed(std::uint64_t trial_seed, std::size_t k) noexcept { return derive_seed(trial_seed, k); }

double monitor(const envs::Environment& env, const stl::Formula& phi, const Trace& full_rate) {
  const TaskSpec& task = env.task();
  task.check_trace(full_rate);
  return stl::robustness(phi, decimate(full_rate, task.stl_stride));
}

FalsificationResult falsify(envs::Environment& env, const stl::Formula& phi, const optim::OptimizerSpec& optimizer,
                            std::size_t budget, std::uint64_t seed) {
  if (budget == 0) throw ArgumentError("falsification budget must be at least 1");
  const TaskSpec& task = env.task();
  stl::check_schema(phi, task.signal_schema);
  const std::size_t steps = task.episode_steps / task.stl_stride;
  if (stl::horizon(phi) > steps) {
    throw HorizonError("formula horizon " + std::to_string(stl::horizon(phi)) + " exceeds the " +
                       std::to_string(steps) + " STL steps of a " + task.name + " episode");
  }

  const auto start = std::chrono::steady_clock::now();
  std::size_t k = 0;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_seed = 0;
  optim::Objective obj([&](const InputVector& x) {
    const std::uint64_t s = episode_seed(seed, k++);
    const double r = monitor(env, phi, env.simulate(x, s));
    if (r < best) {
      best = r;
      best_seed = s;
    }
    return r;
  });
  const optim::OptResult opt = optim::run_optimizer(optimizer, obj, task.input_box, budget, 0.0, seed);

  FalsificationResult out;
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.best_input = opt.best_input;
  out.min_robustness = opt.best_value;
  out.simulations = obj.evaluations();
  out.seed = seed;
  out.optimizer = optimizer.name();
  out.terminated_by = std::string(optim::to_string(opt.terminated_by));
  out.success = opt.best_value < 0.0;
  if (out.success) {
    out.falsifying_input = opt.best_input;
    out.falsifying_seed = best_seed;
  }
  return out;
}

}  // namespace stlf::falsify
