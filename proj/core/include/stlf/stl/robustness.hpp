#pragma once

#include <cstddef>
#include <vector>

#include "stlf/stl/formula.hpp"
#include "stlf/trace.hpp"

namespace stlf::stl {

struct EvalOptions {
  /// Clamp windows that run past the end of the trace instead of raising
  /// HorizonError. A window that is empty after clamping is still an error.
  bool truncate = false;
};

/// Quantitative robustness rho(phi, w, t0).
///
/// Throws HorizonError when t0 + horizon(phi) > N - 1 (strict mode) and
/// SchemaError for unknown signals or ill-typed expressions.
double robustness(const Formula& phi, const Trace& w, std::size_t t0 = 0, EvalOptions opts = {});

/// rho(phi, w, t) for every t at which it is defined, starting at t = 0.
/// In strict mode the result has max(0, N - horizon(phi)) entries.
std::vector<double> robustness_signal(const Formula& phi, const Trace& w, EvalOptions opts = {});

/// Classical boolean semantics. Independent of robustness(); comparisons are
/// evaluated exactly, so `e < c` is false at e == c.
bool satisfies(const Formula& phi, const Trace& w, std::size_t t0 = 0, EvalOptions opts = {});

/// Checks that every signal the formula references resolves in `schema` and
/// that every expression is well typed. Throws SchemaError otherwise.
void check_schema(const Formula& phi, const SignalSchema& schema);

}  // namespace stlf::stl
