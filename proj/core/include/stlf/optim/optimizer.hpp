#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stlf/optim/algorithms.hpp"

namespace stlf::optim {

enum class Method { Random, NelderMead, DualAnnealing };

/// Optimizer selection by name plus its parameters.
struct OptimizerSpec {
  Method method = Method::DualAnnealing;
  AnnealParams anneal;

  /// Accepted names: "random", "nelder-mead" (or "nelder_mead"),
  /// "dual-annealing" (or "dual_annealing").
  static OptimizerSpec from_name(std::string_view name);
  std::string name() const;

  bool operator==(const OptimizerSpec&) const = default;
};

std::vector<std::string> optimizer_names();

OptResult run_optimizer(const OptimizerSpec& spec, Objective& obj, const Box& box, std::size_t budget, double target,
                        std::uint64_t seed);

}  // namespace stlf::optim
