#pragma once

#include <memory>
#include <span>

#include "plant.hpp"
#include "stlf/envs/params.hpp"
#include "stlf/task.hpp"
#include "stlf/trace.hpp"

namespace stlf::envs::detail {

struct StepInfo {
  std::size_t step = 0;
  double dt = 0.0;
  bool grasp_enabled = true;
  double flip = 1.0;  // 1 nominal, -1 under gain_flip
  Gains gains{};
  const ControllerParams* params = nullptr;
};

/// Task logic on top of the shared end-effector plant: scripted policy,
/// object dynamics, and the emitted signals.
class Scenario {
 public:
  virtual ~Scenario() = default;

  /// Initial state for one episode.
  virtual void reset(const InputVector& input, Plant& ee) = 0;

  /// Action components beyond the three end-effector axes.
  virtual std::size_t extra_actions() const { return 0; }

  /// Nominal normalized action, 3 + extra_actions() components.
  virtual void control(const Plant& ee, const StepInfo& info, std::span<double> u) = 0;

  /// Contact constraints on the end effector and object dynamics after the
  /// plant has integrated the applied action `u`.
  virtual void advance(Plant& ee, std::span<const double> u, const StepInfo& info) = 0;

  /// Appends one sample of every schema signal, in schema order.
  virtual void emit(const Plant& ee, TraceBuilder& out) const = 0;
};

std::unique_ptr<Scenario> make_scenario(TaskId id);

}  // namespace stlf::envs::detail
