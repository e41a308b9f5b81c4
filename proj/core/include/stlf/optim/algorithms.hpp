#pragma once

#include <cstddef>
#include <cstdint>

#include "stlf/optim/objective.hpp"

namespace stlf::optim {

// All three minimizers share one contract: they stop as soon as an
// evaluation returns a value strictly below `target`, never exceed `budget`
// evaluations, and only evaluate points inside `box`.

/// I.i.d. uniform sampling. Requires budget >= 1.
OptResult random_search(Objective& obj, const Box& box, std::size_t budget, double target, std::uint64_t seed);

/// Bounded Nelder-Mead: coefficients 1 / 2 / 0.5 / 0.5, seeded start point,
/// initial edges of 5% of each box width, candidates clipped to the box.
/// Converged when the simplex diameter drops below 1e-8.
/// Requires budget >= dim + 2.
OptResult nelder_mead(Objective& obj, const Box& box, std::size_t budget, double target, std::uint64_t seed);

/// Generalized simulated annealing parameters.
struct AnnealParams {
  double initial_temp = 5230.0;
  double visit = 2.62;          // q_v, in (1, 3]
  double accept = -5.0;         // q_a, < 1
  double restart_temp_ratio = 2e-5;
  std::size_t max_iterations = 1000;
  bool local_search = false;    // bounded Nelder-Mead polish of improved minima

  /// Throws ArgumentError on out-of-range values.
  void validate() const;
  bool operator==(const AnnealParams&) const = default;
};

/// Dual annealing: heavy-tailed visiting distribution, generalized
/// Metropolis acceptance, reannealing restarts, optional local polish.
OptResult dual_annealing(Objective& obj, const Box& box, std::size_t budget, double target, std::uint64_t seed,
                         const AnnealParams& params = {});

}  // namespace stlf::optim
