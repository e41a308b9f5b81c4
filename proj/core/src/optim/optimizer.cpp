#include "stlf/optim/optimizer.hpp"

#include "stlf/errors.hpp"

namespace stlf::optim {

OptimizerSpec OptimizerSpec::from_name(std::string_view name) {
  OptimizerSpec spec;
  if (name == "random") {
    spec.method = Method::Random;
  } else if (name == "nelder-mead" || name == "nelder_mead") {
    spec.method = Method::NelderMead;
  } else if (name == "dual-annealing" || name == "dual_annealing") {
    spec.method = Method::DualAnnealing;
  } else {
    throw ArgumentError("unknown optimizer '" + std::string(name) + "' (expected random, nelder-mead, dual-annealing)");
  }
  return spec;
}

std::string OptimizerSpec::name() const {
  switch (method) {
    case Method::Random: return "random";
    case Method::NelderMead: return "nelder-mead";
    case Method::DualAnnealing: return "dual-annealing";
  }
  return "unknown";
}

std::vector<std::string> optimizer_names() { return {"random", "nelder-mead", "dual-annealing"}; }

OptResult run_optimizer(const OptimizerSpec& spec, Objective& obj, const Box& box, std::size_t budget, double target,
                        std::uint64_t seed) {
  switch (spec.method) {
    case Method::Random: return random_search(obj, box, budget, target, seed);
    case Method::NelderMead: return nelder_mead(obj, box, budget, target, seed);
    case Method::DualAnnealing: return dual_annealing(obj, box, budget, target, seed, spec.anneal);
  }
  throw ArgumentError("unknown optimizer method");
}

}  // namespace stlf::optim
