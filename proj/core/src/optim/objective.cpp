#include "stlf/optim/objective.hpp"

#include <cmath>

#include "stlf/errors.hpp"

namespace stlf::optim {

Objective::Objective(Fn fn) : fn_(std::move(fn)) {
  if (!fn_) throw ArgumentError("objective function is empty");
}

double Objective::operator()(const InputVector& x) {
  ++count_;
  const double v = fn_(x);
  if (!std::isfinite(v)) throw ValueError("objective returned a non-finite value");
  return v;
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Budget: return "budget";
    case Termination::Target: return "target";
    case Termination::Convergence: return "convergence";
  }
  return "unknown";
}

}  // namespace stlf::optim
