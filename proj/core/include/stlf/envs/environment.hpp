#pragma once

#include <cstdint>
#include <memory>

#include "stlf/task.hpp"
#include "stlf/trace.hpp"

namespace stlf::envs {

/// A Model: maps an initial configuration to a full-rate episode trace.
///
/// simulate() must be a pure function of (input, seed). Instances are not
/// thread-safe; use clone() to give each worker its own.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const TaskSpec& task() const noexcept = 0;

  /// Throws DomainError when `input` lies outside task().input_box.
  virtual Trace simulate(const InputVector& input, std::uint64_t seed) = 0;

  virtual std::unique_ptr<Environment> clone() const = 0;
};

using EnvironmentHandle = std::unique_ptr<Environment>;

/// Wraps `env` so that its TaskSpec reports `stride` as the STL stride.
/// Throws ArgumentError when stride is 0 or a formula of the task no longer
/// fits the decimated episode.
EnvironmentHandle with_stl_stride(EnvironmentHandle env, std::size_t stride);

}  // namespace stlf::envs
