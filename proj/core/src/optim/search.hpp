#pragma once

#include <algorithm>
#include <limits>

#include "stlf/errors.hpp"
#include "stlf/optim/objective.hpp"

namespace stlf::optim::detail {

/// Thrown inside an optimizer loop to unwind to the driver.
struct Stop {
  Termination reason;
};

/// Budget, target, and incumbent bookkeeping shared by every optimizer.
class Search {
 public:
  Search(Objective& obj, const Box& box, std::size_t budget, double target)
      : obj_(obj), box_(box), budget_(budget), target_(target) {}

  /// Evaluates x (clamped to the box). Throws Stop when the budget is already
  /// spent or when the value falls below the target.
  double eval(std::vector<double> x) {
    if (used_ >= budget_) throw Stop{Termination::Budget};
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box_[i].lo, box_[i].hi);
    ++used_;
    InputVector in(std::move(x));
    const double v = obj_(in);
    if (!has_best_ || v < best_value_) {
      best_value_ = v;
      best_ = std::move(in);
      has_best_ = true;
    }
    if (v < target_) throw Stop{Termination::Target};
    return v;
  }

  std::size_t used() const noexcept { return used_; }
  std::size_t remaining() const noexcept { return budget_ - used_; }

  OptResult finish(Termination why) const {
    OptResult r;
    r.best_input = best_;
    r.best_value = has_best_ ? best_value_ : std::numeric_limits<double>::infinity();
    r.evaluations = used_;
    r.terminated_by = why;
    return r;
  }

 private:
  Objective& obj_;
  const Box& box_;
  std::size_t budget_;
  double target_;
  std::size_t used_ = 0;
  InputVector best_;
  double best_value_ = 0.0;
  bool has_best_ = false;
};

/// Bounded Nelder-Mead run on an existing search; returns the best vertex and
/// value found. Stops on convergence or after `max_evals` evaluations of its
/// own. Stop propagates to the caller.
struct LocalResult {
  std::vector<double> x;
  double f;
  bool converged;
};
LocalResult simplex_descent(Search& search, const Box& box, std::vector<double> x0, double f0, std::size_t max_evals);

}  // namespace stlf::optim::detail
