#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <cstdio>
#include <filesystem>

#include "json.hpp"
#include "stlf/atomic_file.hpp"
#include "stlf/bridge/attach.hpp"
#include "stlf/config.hpp"
#include "stlf/envs/surrogate.hpp"
#include "stlf/errors.hpp"
#include "stlf/falsify/campaign.hpp"
#include "stlf/falsify/metrics.hpp"
#include "stlf/falsify/report.hpp"
#include "stlf/stl/parser.hpp"
#include "stlf/stl/robustness.hpp"
#include "stlf/trace_csv.hpp"

namespace stlf::cli {

namespace {

using Json = nlohmann::ordered_json;

void report_error(const std::exception& e) { std::fprintf(stderr, "stlf: %s\n", e.what()); }

EngineConfig resolve(const Overrides& o) {
  EngineConfig cfg = o.config ? load_config(*o.config) : EngineConfig{};
  std::vector<std::string> problems;
  if (o.task) {
    if (auto id = parse_task_id(*o.task)) {
      cfg.tasks = {*id};
    } else {
      problems.push_back("--task: unknown task '" + *o.task + "' (valid: " + task_id_list() + ")");
    }
  }
  if (o.optimizer) {
    try {
      cfg.optimizers = {optim::OptimizerSpec::from_name(*o.optimizer)};
    } catch (const ArgumentError& e) {
      problems.push_back(std::string("--optimizer: ") + e.what());
    }
  }
  for (auto& opt : cfg.optimizers) opt.anneal = cfg.anneal;
  if (o.budget) cfg.budget = *o.budget;
  if (o.trials) cfg.trials = *o.trials;
  if (o.seed) cfg.seed = *o.seed;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.output) cfg.output = *o.output;
  if (o.csv_output) cfg.csv_output = *o.csv_output;
  if (o.endpoint) cfg.endpoint = *o.endpoint;
  if (o.spec_file) cfg.spec_file = *o.spec_file;
  if (o.stl_stride) cfg.stl_stride = *o.stl_stride;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    problems.insert(problems.end(), e.problems().begin(), e.problems().end());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

Json parse_ordered(const std::string& text) { return Json::parse(text); }

// Report skeleton shared by every command.
Json envelope(const char* command, const EngineConfig& cfg) {
  Json j;
  j["schema_version"] = falsify::kReportSchemaVersion;
  j["command"] = command;
  j["config"] = parse_ordered(cfg.to_json());
  return j;
}

void write_json(const std::string& path, const Json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
  spdlog::info("wrote {}", path);
}

envs::EnvironmentHandle remote_env(const EngineConfig& cfg) {
  bridge::AttachOptions options;
  options.stl_stride = cfg.stl_stride.value_or(1);
  spdlog::info("attaching to {}", *cfg.endpoint);
  return bridge::attach(*cfg.endpoint, options);
}

int run_trial(const EngineConfig& cfg, envs::Environment& env, const stl::Formula& phi) {
  const optim::OptimizerSpec& opt = cfg.optimizers.front();
  spdlog::info("falsifying {} with {} (budget {}, seed {})", env.task().name, opt.name(), cfg.budget, cfg.seed);
  const falsify::FalsificationResult r = falsify::falsify(env, phi, opt, cfg.budget, cfg.seed);

  Json out = envelope("falsify", cfg);
  out["task"] = env.task().name;
  out["spec"] = stl::print(phi);
  Json result = parse_ordered(falsify::result_json(r));
  result.erase("schema_version");
  out["result"] = std::move(result);
  write_json(cfg.output, out);

  std::printf("%s %s: %s, min robustness %.12g after %zu simulations\n", env.task().name.c_str(), opt.name().c_str(),
              r.success ? "falsified" : "not falsified", r.min_robustness, r.simulations);
  return r.success ? kExitOk : kExitNegative;
}

std::string csv_path(const EngineConfig& cfg) {
  if (cfg.csv_output) return *cfg.csv_output;
  return std::filesystem::path(cfg.output).replace_extension(".csv").string();
}

}  // namespace

int cmd_monitor(const MonitorArgs& args) {
  try {
    const stl::Formula phi = stl::parse_file(args.spec);
    const Trace w = read_trace_file(args.trace);
    const double r = stl::robustness(phi, w, args.t0, stl::EvalOptions{args.truncate});
    const char* verdict = r > 0.0 ? "SAT" : (r < 0.0 ? "UNSAT" : "INCONCLUSIVE");
    std::printf("%.12g %s\n", r, verdict);
    return r > 0.0 ? kExitOk : (r < 0.0 ? kExitNegative : kExitInconclusive);
  } catch (const std::exception& e) {
    report_error(e);
    return kExitMonitorError;
  }
}

int cmd_falsify(const Overrides& o) {
  try {
    const EngineConfig cfg = resolve(o);
    if (cfg.endpoint) {
      if (!cfg.spec_file) throw ConfigError({"spec_file: required when falsifying through a bridge"});
      auto env = remote_env(cfg);
      return run_trial(cfg, *env, stl::parse_file(*cfg.spec_file));
    }
    if (cfg.tasks.size() != 1) throw ConfigError({"task: falsify runs exactly one task"});
    const TaskId id = cfg.tasks.front();
    auto env = build_env(cfg, id);
    return run_trial(cfg, *env, spec_for(cfg, id));
  } catch (const std::exception& e) {
    report_error(e);
    return kExitFailure;
  }
}

int cmd_campaign(const Overrides& o) {
  try {
    const EngineConfig cfg = resolve(o);
    std::vector<envs::EnvironmentHandle> owned;
    std::vector<falsify::CampaignTarget> targets;
    if (cfg.endpoint) {
      if (!cfg.spec_file) throw ConfigError({"spec_file: required for a bridged campaign"});
      owned.push_back(remote_env(cfg));
      targets.push_back({owned.back()->task().name, owned.back().get(), stl::parse_file(*cfg.spec_file)});
    } else {
      for (TaskId id : cfg.tasks) {
        owned.push_back(build_env(cfg, id));
        targets.push_back({std::string(to_string(id)), owned.back().get(), spec_for(cfg, id)});
      }
    }
    spdlog::info("campaign: {} environment(s) x {} optimizer(s) x {} trials, budget {}", targets.size(),
                 cfg.optimizers.size(), cfg.trials, cfg.budget);
    const falsify::CampaignReport report =
        falsify::run_campaign(targets, cfg.optimizers, {cfg.trials, cfg.budget, cfg.seed, cfg.jobs});

    Json out = envelope("campaign", cfg);
    Json body = parse_ordered(falsify::campaign_json(report));
    body.erase("schema_version");
    for (auto& [k, v] : body.items()) out[k] = v;
    write_json(cfg.output, out);
    write_file_atomic(csv_path(cfg), falsify::campaign_csv(report));
    std::fputs(falsify::summary_table(report).c_str(), stdout);
    return kExitOk;
  } catch (const std::exception& e) {
    report_error(e);
    return kExitFailure;
  }
}

int cmd_evaluate(const Overrides& o) {
  try {
    const EngineConfig cfg = resolve(o);
    Json out = envelope("evaluate", cfg);
    Json tasks = Json::array();
    std::printf("%-6s %-12s %8s %8s %10s\n", "Task", "Condition", "SR(%)", "DBR(%)", "TCT");
    for (TaskId id : cfg.tasks) {
      const stl::Formula success = envs::builtin_spec(id, envs::SpecKind::Success);
      const stl::Formula danger = envs::builtin_spec(id, envs::SpecKind::Danger);
      Json entry;
      entry["task"] = std::string(to_string(id));
      for (const bool noisy : {false, true}) {
        EngineConfig run = cfg;
        run.noise_variance = noisy ? std::optional<double>(cfg.eval_noise_variance) : std::nullopt;
        auto env = build_env(run, id);
        const falsify::Metrics m = falsify::evaluate(*env, success, danger, cfg.eval_trials, cfg.seed);
        entry[noisy ? "with_noise" : "without_noise"] = parse_ordered(falsify::metrics_json(m));
        char tct[32] = "-";
        if (m.tct) std::snprintf(tct, sizeof tct, "%.2f", *m.tct);
        std::printf("%-6s %-12s %8.1f %8.2f %10s\n", std::string(to_string(id)).c_str(),
                    noisy ? "with noise" : "no noise", m.sr, m.dbr, tct);
      }
      tasks.push_back(std::move(entry));
    }
    out["tasks"] = std::move(tasks);
    write_json(cfg.output, out);
    return kExitOk;
  } catch (const std::exception& e) {
    report_error(e);
    return kExitFailure;
  }
}

int cmd_bridge(const Overrides& o) {
  try {
    const EngineConfig cfg = resolve(o);
    if (!cfg.endpoint) throw ConfigError({"endpoint: required"});
    auto env = remote_env(cfg);
    const TaskSpec& task = env->task();
    std::printf("attached %s: %zu input(s), %zu steps, signals:", task.name.c_str(), task.input_box.dim(),
                task.episode_steps);
    for (const auto& s : task.signal_schema) std::printf(" %s(%zu)", s.name.c_str(), s.dim);
    std::printf("\n");
    if (!cfg.spec_file) return kExitOk;
    return run_trial(cfg, *env, stl::parse_file(*cfg.spec_file));
  } catch (const std::exception& e) {
    report_error(e);
    return kExitFailure;
  }
}

}  // namespace stlf::cli
