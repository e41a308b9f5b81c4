#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "stlf/envs/environment.hpp"
#include "stlf/stl/formula.hpp"

namespace stlf::falsify {

/// Controller evaluation over random inputs.
struct Metrics {
  double sr = 0.0;            // % of trials with success robustness > 0
  double dbr = 0.0;           // mean % of dangerous steps per trial
  std::optional<double> tct;  // mean completion time of successful trials, control steps
  std::size_t trials = 0;
};

/// Fraction in [0, 1] of decimated steps inside the outermost window of
/// `danger` (the whole trace for a non-temporal root) at which the innermost
/// predicates have negative robustness.
double danger_fraction(const stl::Formula& danger, const Trace& decimated);

/// Completion step in decimated steps, or nullopt when the innermost
/// predicates of `success` never complete inside its outermost window.
///
/// Eventually root: first t in [a, b] where they hold. Globally root: first
/// t in [0, b] from which they hold through b. Other roots: 0 if they hold at 0.
std::optional<std::size_t> completion_step(const stl::Formula& success, const Trace& decimated);

/// Draws `trials` inputs uniformly from the box with Rng(seed); trial i runs
/// with episode seed derive_seed(seed, i). Inputs depend only on `seed`, so
/// two environments evaluated with one seed see identical inputs.
Metrics evaluate(envs::Environment& env, const stl::Formula& success, const stl::Formula& danger, std::size_t trials,
                 std::uint64_t seed);

}  // namespace stlf::falsify
