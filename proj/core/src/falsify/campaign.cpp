#include "stlf/falsify/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "stlf/errors.hpp"
#include "stlf/rng.hpp"

namespace stlf::falsify {

std::uint64_t trial_seed(std::uint64_t master, std::string_view label, std::size_t trial) noexcept {
  return derive_seed(master, hash_label(label) ^ static_cast<std::uint64_t>(trial));
}

CampaignReport run_campaign(const std::vector<CampaignTarget>& targets,
                            const std::vector<optim::OptimizerSpec>& optimizers, const CampaignOptions& options) {
  if (targets.empty()) throw ArgumentError("campaign needs at least one environment");
  if (optimizers.empty()) throw ArgumentError("campaign needs at least one optimizer");
  if (options.trials == 0) throw ArgumentError("campaign needs at least one trial");
  if (options.budget == 0) throw ArgumentError("campaign budget must be at least 1");
  for (const auto& t : targets) {
    if (t.env == nullptr) throw ArgumentError("campaign target '" + t.label + "' has no environment");
  }

  CampaignReport report;
  report.master_seed = options.master_seed;
  report.trials = options.trials;
  report.budget = options.budget;
  for (const auto& t : targets) {
    for (const auto& o : optimizers) {
      CampaignCell cell;
      cell.task = t.label;
      cell.optimizer = o.name();
      cell.trials.resize(options.trials);
      report.cells.push_back(std::move(cell));
    }
  }

  const std::size_t total = report.cells.size() * options.trials;
  std::size_t jobs = options.jobs != 0 ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, total);

  std::atomic<std::size_t> next{0};
  std::mutex setup_mutex;  // clone() of a bridged environment may not be reentrant
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t cell_index = job / options.trials;
      const std::size_t trial = job % options.trials;
      const CampaignTarget& target = targets[cell_index / optimizers.size()];
      const optim::OptimizerSpec& opt = optimizers[cell_index % optimizers.size()];
      const std::uint64_t seed = trial_seed(options.master_seed, target.label, trial);
      FalsificationResult& slot = report.cells[cell_index].trials[trial];
      try {
        envs::EnvironmentHandle env;
        {
          std::lock_guard lock(setup_mutex);
          env = target.env->clone();
        }
        slot = falsify(*env, target.spec, opt, options.budget, seed);
      } catch (const std::exception& e) {
        slot = FalsificationResult{};
        slot.seed = seed;
        slot.optimizer = opt.name();
        slot.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& cell : report.cells) {
    double time = 0.0;
    double sims = 0.0;
    for (const auto& r : cell.trials) {
      if (r.error) ++cell.errors;
      if (!r.success) continue;
      ++cell.successes;
      time += r.wall_time;
      sims += static_cast<double>(r.simulations);
    }
    if (cell.successes > 0) {
      cell.avg_time = time / static_cast<double>(cell.successes);
      cell.avg_sims = sims / static_cast<double>(cell.successes);
    }
  }
  return report;
}

}  // namespace stlf::falsify
