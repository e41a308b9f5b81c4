#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlf/falsify/falsify.hpp"

namespace stlf::falsify {

/// One environment/specification pair of a campaign.
struct CampaignTarget {
  std::string label;  // task name, also keys the trial seed stream
  const envs::Environment* env = nullptr;
  stl::Formula spec;
};

struct CampaignOptions {
  std::size_t trials = 30;
  std::size_t budget = 300;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 0;  // 0: hardware concurrency
};

/// Aggregates of one (target, optimizer) pair.
struct CampaignCell {
  std::string task;
  std::string optimizer;
  std::vector<FalsificationResult> trials;  // ordered by trial index
  std::size_t successes = 0;
  std::size_t errors = 0;
  std::optional<double> avg_time;  // over successful trials only
  std::optional<double> avg_sims;  // over successful trials only
};

struct CampaignReport {
  std::uint64_t master_seed = 0;
  std::size_t trials = 0;
  std::size_t budget = 0;
  std::vector<CampaignCell> cells;  // targets outer, optimizers inner
};

/// Trial seed: derive_seed(master, hash_label(label) ^ trial). Every
/// optimizer of a target sees the same trial seeds.
std::uint64_t trial_seed(std::uint64_t master, std::string_view label, std::size_t trial) noexcept;

/// Runs `options.trials` falsify calls per (target, optimizer) on up to
/// `options.jobs` threads, each trial on its own clone of the environment.
/// A trial that throws is recorded with its error message and the campaign
/// continues. Throws ArgumentError on empty lists or zero trials/budget.
CampaignReport run_campaign(const std::vector<CampaignTarget>& targets,
                            const std::vector<optim::OptimizerSpec>& optimizers, const CampaignOptions& options);

}  // namespace stlf::falsify
