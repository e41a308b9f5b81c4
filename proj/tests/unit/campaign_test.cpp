#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "stlf/envs/surrogate.hpp"
#include "stlf/errors.hpp"
#include "stlf/falsify/campaign.hpp"
#include "stlf/falsify/report.hpp"
#include "stlf/rng.hpp"

using namespace stlf;
using namespace stlf::falsify;

namespace {

std::vector<optim::OptimizerSpec> all_optimizers() {
  std::vector<optim::OptimizerSpec> out;
  for (const auto& name : optim::optimizer_names()) out.push_back(optim::OptimizerSpec::from_name(name));
  return out;
}

envs::EnvironmentHandle with_defect(TaskId id, std::uint64_t seed) {
  const auto d = envs::make_defect(envs::task_spec(id).input_box, envs::default_defect_mode(id), 0.02, seed);
  return envs::make_env(id, envs::default_controller(id), d);
}

// Fails on inputs in the upper half of the first axis.
class FlakyEnv final : public envs::Environment {
 public:
  FlakyEnv() : inner_(envs::make_env(TaskId::PR)) {}
  const TaskSpec& task() const noexcept override { return inner_->task(); }
  Trace simulate(const InputVector& x, std::uint64_t seed) override {
    if (x[0] > 0.5) throw BridgeError("connection lost");
    return inner_->simulate(x, seed);
  }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<FlakyEnv>(); }

 private:
  envs::EnvironmentHandle inner_;
};

}  // namespace

TEST(Campaign, TrialSeedsFollowTheSplittingRule) {
  EXPECT_EQ(trial_seed(9, "PR", 4), derive_seed(9, hash_label("PR") ^ 4u));
  EXPECT_NE(trial_seed(9, "PR", 4), trial_seed(9, "CS", 4));
}

TEST(Campaign, ReportShapeAndBudgetConservation) {
  auto pr = with_defect(TaskId::PR, 1);
  auto bb = with_defect(TaskId::BB, 2);
  const std::vector<CampaignTarget> targets{{"PR", pr.get(), *pr->task().success_spec},
                                            {"BB", bb.get(), *bb->task().success_spec}};
  const CampaignReport rep = run_campaign(targets, all_optimizers(), {5, 40, 3, 2});
  ASSERT_EQ(rep.cells.size(), 6u);
  EXPECT_EQ(rep.cells[0].task, "PR");
  EXPECT_EQ(rep.cells[0].optimizer, "random");
  EXPECT_EQ(rep.cells[5].task, "BB");
  EXPECT_EQ(rep.cells[5].optimizer, "dual-annealing");
  for (const auto& cell : rep.cells) {
    ASSERT_EQ(cell.trials.size(), 5u);
    std::size_t sims = 0, successes = 0;
    for (std::size_t i = 0; i < cell.trials.size(); ++i) {
      EXPECT_EQ(cell.trials[i].seed, trial_seed(3, cell.task, i));
      sims += cell.trials[i].simulations;
      successes += cell.trials[i].success;
    }
    EXPECT_LE(sims, 5u * 40u);
    EXPECT_EQ(cell.successes, successes);
    EXPECT_LE(cell.successes, 5u);
    EXPECT_EQ(cell.avg_time.has_value(), cell.successes > 0);
    EXPECT_EQ(cell.avg_sims.has_value(), cell.successes > 0);
  }
}

TEST(Campaign, IsDeterministicAcrossRunsAndThreadCounts) {
  auto cs = with_defect(TaskId::CS, 4);
  auto env_noisy = envs::make_env(TaskId::BP, envs::default_controller(TaskId::BP), {}, envs::NoiseSpec{0.25});
  const std::vector<CampaignTarget> targets{{"CS", cs.get(), *cs->task().success_spec},
                                            {"BP", env_noisy.get(), *env_noisy->task().success_spec}};
  const auto a = campaign_json(run_campaign(targets, all_optimizers(), {4, 50, 12, 1}), false);
  const auto b = campaign_json(run_campaign(targets, all_optimizers(), {4, 50, 12, 4}), false);
  const auto c = campaign_json(run_campaign(targets, all_optimizers(), {4, 50, 13, 4}), false);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Campaign, DegenerateCampaignHasOneTrialPerCell) {
  auto env = envs::make_env(TaskId::DO);
  const CampaignReport rep =
      run_campaign({{"DO", env.get(), *env->task().success_spec}}, all_optimizers(), {1, 1, 0, 0});
  for (const auto& cell : rep.cells) EXPECT_EQ(cell.trials.size(), 1u);
}

TEST(Campaign, FailingTrialsAreRecordedAndTheCampaignContinues) {
  FlakyEnv env;
  const CampaignReport rep = run_campaign({{"PR", &env, *env.task().success_spec}},
                                          {optim::OptimizerSpec::from_name("random")}, {6, 20, 0, 2});
  const auto& cell = rep.cells.at(0);
  ASSERT_EQ(cell.trials.size(), 6u);
  EXPECT_EQ(cell.errors, 6u);
  for (const auto& t : cell.trials) {
    ASSERT_TRUE(t.error.has_value());
    EXPECT_NE(t.error->find("connection lost"), std::string::npos);
    EXPECT_FALSE(t.success);
  }
  EXPECT_EQ(cell.successes, 0u);
}

TEST(Campaign, RejectsEmptyInputs) {
  auto env = envs::make_env(TaskId::PR);
  EXPECT_THROW(run_campaign({}, all_optimizers(), {}), ArgumentError);
  EXPECT_THROW(run_campaign({{"PR", env.get(), *env->task().success_spec}}, {}, {}), ArgumentError);
  EXPECT_THROW(run_campaign({{"PR", env.get(), *env->task().success_spec}}, all_optimizers(), {0, 10, 0, 0}),
               ArgumentError);
}

TEST(Campaign, LargerDefectsAreNeverHarderForRandomSearch) {
  const Box& box = envs::task_spec(TaskId::PR).input_box;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto small = envs::make_defect(box, envs::DefectMode::DeadZone, 0.01, seed);
    std::vector<Interval> grown;
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const double pad = 0.25 * small.region[i].width();
      grown.push_back({box[i].name, std::max(box[i].lo, small.region[i].lo - pad),
                       std::min(box[i].hi, small.region[i].hi + pad)});
    }
    envs::DefectSpec large{Box(grown), envs::DefectMode::DeadZone, 0.0};
    large.volume_fraction = large.region.volume() / box.volume();
    ASSERT_TRUE(large.region.contains(small.region));
    auto env_small = envs::make_env(TaskId::PR, envs::default_controller(TaskId::PR), small);
    auto env_large = envs::make_env(TaskId::PR, envs::default_controller(TaskId::PR), large);
    const auto random = std::vector{optim::OptimizerSpec::from_name("random")};
    const CampaignOptions opts{20, 100, seed, 0};
    const auto a = run_campaign({{"PR", env_small.get(), *env_small->task().success_spec}}, random, opts);
    const auto b = run_campaign({{"PR", env_large.get(), *env_large->task().success_spec}}, random, opts);
    EXPECT_GE(b.cells[0].successes, a.cells[0].successes) << "seed " << seed;
  }
}

TEST(Report, CsvHasTheTableColumnsAndDashesForEmptyCells) {
  auto env = envs::make_env(TaskId::PR);
  const CampaignReport rep =
      run_campaign({{"PR", env.get(), *env->task().success_spec}}, all_optimizers(), {2, 10, 0, 0});
  const std::string csv = campaign_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "task,optimizer,suc_fals,avg_time,avg_sims");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_TRUE(line.ends_with(",0,-,-")) << line;
  }
  EXPECT_EQ(rows, 3);
  EXPECT_NE(summary_table(rep).find("random"), std::string::npos);
}

TEST(Report, JsonCarriesTheSchemaVersionAndPerTrialDetail) {
  auto env = with_defect(TaskId::PR, 0);
  const CampaignReport rep = run_campaign({{"PR", env.get(), *env->task().success_spec}},
                                          {optim::OptimizerSpec::from_name("dual-annealing")}, {3, 300, 0, 0});
  const auto j = nlohmann::json::parse(campaign_json(rep));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["cells"][0]["trials"].size(), 3u);
  EXPECT_TRUE(j["cells"][0]["trials"][0].contains("wall_time"));
  const auto quiet = nlohmann::json::parse(campaign_json(rep, false));
  EXPECT_FALSE(quiet["cells"][0]["trials"][0].contains("wall_time"));
  EXPECT_FALSE(quiet["cells"][0].contains("avg_time"));

  const auto r = nlohmann::json::parse(result_json(rep.cells[0].trials[0]));
  for (const char* key : {"success", "falsifying_input", "min_robustness", "simulations", "wall_time", "seed",
                          "optimizer"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
}

TEST(Report, MetricsJsonOmitsTctWhenAbsent) {
  const auto j = nlohmann::json::parse(metrics_json(Metrics{0.0, 12.5, std::nullopt, 10}));
  EXPECT_EQ(j["sr"], 0.0);
  EXPECT_EQ(j["dbr"], 12.5);
  EXPECT_TRUE(!j.contains("tct") || j["tct"].is_null());
  EXPECT_EQ(j["trials"], 10);
}
