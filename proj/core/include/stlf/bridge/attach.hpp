#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

#include "stlf/bridge/protocol.hpp"
#include "stlf/envs/environment.hpp"

namespace stlf::bridge {

struct AttachOptions {
  /// Per-request limit for hello and simulate round trips.
  std::chrono::milliseconds timeout{30000};
  /// When set, the handshake must declare exactly this input dimension,
  /// these bounds (within 1e-12), signals and episode length; the returned
  /// environment then reports this TaskSpec (name, formulas and stride).
  std::optional<TaskSpec> expected;
  /// STL stride of the bridged TaskSpec when `expected` is absent.
  std::size_t stl_stride = 1;
};

/// Connects to a bridge server and performs the handshake.
///
/// The returned Environment forwards each simulate() as one request and
/// checks every reply against the declared schema. clone() opens a fresh
/// connection (a new process for stdio endpoints). Throws BridgeError when the
/// server is unreachable, times out or breaks the protocol, and SchemaError
/// naming the offending signal when the handshake contradicts `expected`.
envs::EnvironmentHandle attach(const std::string& endpoint, const AttachOptions& options = {});

}  // namespace stlf::bridge
