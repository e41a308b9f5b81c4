#pragma once

#include "stlf/envs/environment.hpp"

namespace stlf::envs {

/// Planar double integrator used to cross-check external environments.
///
/// Input (p0x, p0y) in [-1, 1]^2, zero initial velocity, a = -4 p - 2 v,
/// semi-implicit Euler (v += a dt; p += v dt) with dt = 0.05 for 60 steps.
/// Signals: pos (2), vel (2). The seed is ignored.
/// Traces are decimated by 2 before monitoring. Task name "REF"; success
/// spec G[0,30](norm(pos) <= 1.3), danger spec F[0,30](norm(pos) <= 0.1).
EnvironmentHandle make_reference_env();

/// One step of the reference update, exposed for cross-implementation tests.
void reference_step(double p[2], double v[2], double dt) noexcept;

}  // namespace stlf::envs
