#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "stlf/trace.hpp"

namespace stlf::optim {

/// Black-box objective with an exact evaluation counter.
///
/// Each call increments the counter by one, including calls that throw.
/// Non-finite results are rejected with ValueError.
class Objective {
 public:
  using Fn = std::function<double(const InputVector&)>;

  explicit Objective(Fn fn);

  double operator()(const InputVector& x);
  std::size_t evaluations() const noexcept { return count_; }

 private:
  Fn fn_;
  std::size_t count_ = 0;
};

enum class Termination { Budget, Target, Convergence };

std::string_view to_string(Termination t) noexcept;

struct OptResult {
  InputVector best_input;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  Termination terminated_by = Termination::Budget;
};

}  // namespace stlf::optim
