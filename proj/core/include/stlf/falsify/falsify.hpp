#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "stlf/envs/environment.hpp"
#include "stlf/optim/optimizer.hpp"
#include "stlf/stl/formula.hpp"

namespace stlf::falsify {

/// Outcome of one falsification trial.
///
/// success <=> min_robustness < 0 <=> falsifying_input is set. An errored
/// trial (recorded by run_campaign) is never a success.
struct FalsificationResult {
  bool success = false;
  std::optional<InputVector> falsifying_input;
  /// Episode seed of the simulation that produced falsifying_input.
  std::optional<std::uint64_t> falsifying_seed;
  InputVector best_input;
  double min_robustness = 0.0;
  std::size_t simulations = 0;
  double wall_time = 0.0;  // seconds, monotonic clock
  std::uint64_t seed = 0;
  std::string optimizer;
  std::string terminated_by;
  std::optional<std::string> error;
};

/// Seed of the k-th simulation (0-based) of a trial: derive_seed(trial_seed, k).
std::uint64_t episode_seed(std::uint64_t trial_seed, std::size_t k) noexcept;

/// Robustness of `phi` at t0 = 0 on the trace decimated by the task's stride.
double monitor(const envs::Environment& env, const stl::Formula& phi, const Trace& full_rate);

/// Minimizes robustness(phi, decimate(simulate(env, x, episode_seed(seed, k))))
/// over the task's input box and stops on the first strictly negative value.
///
/// Throws ArgumentError when budget is 0, SchemaError when phi does not fit the
/// task's signals, HorizonError when phi needs more steps than an episode
/// provides; environment and monitor errors propagate.
FalsificationResult falsify(envs::Environment& env, const stl::Formula& phi, const optim::OptimizerSpec& optimizer,
                            std::size_t budget, std::uint64_t seed);

}  // namespace stlf::falsify
