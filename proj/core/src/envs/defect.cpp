#include <cmath>

#include "stlf/envs/params.hpp"
#include "stlf/errors.hpp"
#include "stlf/rng.hpp"

namespace stlf::envs {

namespace {
void check_range(std::vector<std::string>& problems, const char* name, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    problems.push_back(std::string(name) + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
}
}  // namespace

void ControllerParams::validate() const {
  std::vector<std::string> problems;
  check_range(problems, "k_pos", k_pos, 0.5, 50.0);
  check_range(problems, "k_vel", k_vel, 1.0, 100.0);
  check_range(problems, "v_max", v_max, 0.05, 3.0);
  check_range(problems, "grasp_distance", grasp_distance, 0.001, 0.1);
  check_range(problems, "balance_omega", balance_omega, 1.0, 20.0);
  if (!problems.empty()) {
    std::string msg = "controller parameters out of range:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw ArgumentError(msg);
  }
}

ControllerParams default_controller(TaskId id) {
  ControllerParams p;
  if (id == TaskId::BC) {
    p.k_pos = 10.0;
    p.grasp_distance = 0.05;
  }
  return p;
}

std::string_view to_string(DefectMode m) noexcept {
  switch (m) {
    case DefectMode::DeadZone: return "dead_zone";
    case DefectMode::GainFlip: return "gain_flip";
    case DefectMode::DelayedGrasp: return "delayed_grasp";
  }
  return "unknown";
}

std::optional<DefectMode> parse_defect_mode(std::string_view text) noexcept {
  for (DefectMode m : {DefectMode::DeadZone, DefectMode::GainFlip, DefectMode::DelayedGrasp}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

DefectMode default_defect_mode(TaskId id) noexcept {
  switch (id) {
    case TaskId::CS:
    case TaskId::PH:
    case TaskId::BP: return DefectMode::GainFlip;
    case TaskId::BC: return DefectMode::DelayedGrasp;
    default: return DefectMode::DeadZone;
  }
}

void DefectSpec::validate(const Box& box) const {
  if (region.dim() != box.dim()) throw ArgumentError("defect region dimension differs from the input box");
  if (!box.contains(region)) throw ArgumentError("defect region is not inside the input box");
  if (!(volume_fraction > 0.0 && volume_fraction <= 1.0)) {
    throw ArgumentError("defect volume fraction must lie in (0, 1]");
  }
  const double actual = region.volume() / box.volume();
  if (std::abs(actual - volume_fraction) > 1e-9 * std::max(1.0, volume_fraction)) {
    throw ArgumentError("defect volume fraction " + std::to_string(volume_fraction) +
                        " does not match the region's volume ratio " + std::to_string(actual));
  }
}

DefectSpec make_defect(const Box& box, DefectMode mode, double volume_fraction, std::uint64_t construction_seed) {
  if (!(volume_fraction > 0.0 && volume_fraction <= 1.0)) {
    throw ArgumentError("defect volume fraction must lie in (0, 1]");
  }
  if (!(box.volume() > 0.0)) throw ArgumentError("cannot place a defect in a box of zero volume");
  const double side = std::pow(volume_fraction, 1.0 / static_cast<double>(box.dim()));
  Rng rng(construction_seed);
  std::vector<Interval> dims;
  for (const auto& d : box.dims()) {
    const double width = d.width() * side;
    const double lo = d.lo + rng.uniform() * (d.width() - width);
    dims.push_back({d.name, lo, std::min(lo + width, d.hi)});
  }
  DefectSpec spec{Box(std::move(dims)), mode, 0.0};
  spec.volume_fraction = spec.region.volume() / box.volume();
  return spec;
}

void NoiseSpec::validate() const {
  if (!(variance >= 0.0) || !std::isfinite(variance)) throw ArgumentError("noise variance must be finite and >= 0");
}

}  // namespace stlf::envs
