#include "stlf/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "stlf/atomic_file.hpp"
#include "stlf/envs/surrogate.hpp"
#include "stlf/errors.hpp"
#include "stlf/rng.hpp"
#include "stlf/stl/parser.hpp"
#include "stlf/stl/robustness.hpp"
#include "toml.hpp"

namespace stlf {

namespace {

using Json = nlohmann::json;

// Converts a TOML value to JSON; nullopt for dates and times.
std::optional<Json> to_json_value(const toml::node& n) {
  if (auto v = n.as_string()) return Json(v->get());
  if (auto v = n.as_integer()) return Json(v->get());
  if (auto v = n.as_floating_point()) return Json(v->get());
  if (auto v = n.as_boolean()) return Json(v->get());
  if (auto a = n.as_array()) {
    Json out = Json::array();
    for (const auto& item : *a) {
      auto j = to_json_value(item);
      if (!j) return std::nullopt;
      out.push_back(std::move(*j));
    }
    return out;
  }
  if (auto t = n.as_table()) {
    Json out = Json::object();
    for (const auto& [k, item] : *t) {
      auto j = to_json_value(item);
      if (!j) return std::nullopt;
      out[std::string(k.str())] = std::move(*j);
    }
    return out;
  }
  return std::nullopt;
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  void bad(const std::string& key, const std::string& what) { problems_.push_back(key + ": " + what); }

  std::optional<std::string> string(const std::string& key, const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    bad(key, "expected a string");
    return std::nullopt;
  }

  std::optional<double> number(const std::string& key, const Json& v) {
    if (v.is_number()) return v.get<double>();
    bad(key, "expected a number");
    return std::nullopt;
  }

  std::optional<std::uint64_t> count(const std::string& key, const Json& v) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_number_integer()) {
      bad(key, "must not be negative");
      return std::nullopt;
    }
    bad(key, "expected a non-negative integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const std::string& key, const Json& v) {
    if (v.is_boolean()) return v.get<bool>();
    bad(key, "expected true or false");
    return std::nullopt;
  }

  std::vector<std::string> strings(const std::string& key, const Json& v) {
    if (v.is_string()) return {v.get<std::string>()};
    std::vector<std::string> out;
    if (!v.is_array() || v.empty()) {
      bad(key, "expected a string or a non-empty array of strings");
      return out;
    }
    for (const auto& item : v) {
      if (!item.is_string()) {
        bad(key, "expected an array of strings");
        return {};
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

 private:
  std::vector<std::string>& problems_;
};

EngineConfig from_json(const Json& root) {
  std::vector<std::string> problems;
  if (!root.is_object()) throw ConfigError({"configuration must be a table of keys"});
  EngineConfig cfg;
  Reader rd(problems);

  auto set_count = [&](std::size_t& dst) {
    return [&dst, &rd](const std::string& k, const Json& v) {
      if (auto c = rd.count(k, v)) dst = static_cast<std::size_t>(*c);
    };
  };
  auto set_number = [&](double& dst) {
    return [&dst, &rd](const std::string& k, const Json& v) {
      if (auto c = rd.number(k, v)) dst = *c;
    };
  };
  auto set_optional = [&](std::optional<double>& dst) {
    return [&dst, &rd](const std::string& k, const Json& v) {
      if (v.is_null()) return;
      if (auto c = rd.number(k, v)) dst = *c;
    };
  };
  auto set_path = [&](std::optional<std::string>& dst) {
    return [&dst, &rd](const std::string& k, const Json& v) {
      if (v.is_null()) return;
      if (auto s = rd.string(k, v)) dst = *s;
    };
  };
  auto set_tasks = [&](const std::string& k, const Json& v) {
    std::vector<TaskId> ids;
    for (const auto& name : rd.strings(k, v)) {
      if (auto id = parse_task_id(name)) {
        ids.push_back(*id);
      } else {
        rd.bad(k, "unknown task '" + name + "' (valid: " + task_id_list() + ")");
      }
    }
    if (!ids.empty()) cfg.tasks = ids;
  };
  auto set_optimizers = [&](const std::string& k, const Json& v) {
    std::vector<optim::OptimizerSpec> specs;
    for (const auto& name : rd.strings(k, v)) {
      try {
        specs.push_back(optim::OptimizerSpec::from_name(name));
      } catch (const ArgumentError& e) {
        rd.bad(k, e.what());
      }
    }
    if (!specs.empty()) cfg.optimizers = specs;
  };

  const std::map<std::string, std::function<void(const std::string&, const Json&)>> handlers = {
      {"task", set_tasks},
      {"tasks", set_tasks},
      {"spec",
       [&](const std::string& k, const Json& v) {
         if (auto s = rd.string(k, v)) {
           if (*s == "success") {
             cfg.spec = envs::SpecKind::Success;
           } else if (*s == "danger") {
             cfg.spec = envs::SpecKind::Danger;
           } else {
             rd.bad(k, "expected \"success\" or \"danger\"");
           }
         }
       }},
      {"spec_file", set_path(cfg.spec_file)},
      {"optimizer", set_optimizers},
      {"optimizers", set_optimizers},
      {"trials", set_count(cfg.trials)},
      {"budget", set_count(cfg.budget)},
      {"eval_trials", set_count(cfg.eval_trials)},
      {"seed",
       [&](const std::string& k, const Json& v) {
         if (auto c = rd.count(k, v)) cfg.seed = *c;
       }},
      {"stl_stride",
       [&](const std::string& k, const Json& v) {
         if (v.is_null()) return;
         if (auto c = rd.count(k, v)) cfg.stl_stride = static_cast<std::size_t>(*c);
       }},
      {"jobs", set_count(cfg.jobs)},
      {"k_pos", set_optional(cfg.k_pos)},
      {"k_vel", set_optional(cfg.k_vel)},
      {"v_max", set_optional(cfg.v_max)},
      {"grasp_distance", set_optional(cfg.grasp_distance)},
      {"balance_omega", set_optional(cfg.balance_omega)},
      {"defect",
       [&](const std::string& k, const Json& v) {
         auto s = rd.string(k, v);
         if (!s) return;
         cfg.defect.reset();
         cfg.defect_task_default = false;
         if (*s == "none") return;
         if (*s == "default") {
           cfg.defect_task_default = true;
         } else if (auto m = envs::parse_defect_mode(*s)) {
           cfg.defect = *m;
         } else {
           rd.bad(k, "expected none, default, dead_zone, gain_flip or delayed_grasp");
         }
       }},
      {"defect_fraction", set_number(cfg.defect_fraction)},
      {"defect_seed",
       [&](const std::string& k, const Json& v) {
         if (auto c = rd.count(k, v)) cfg.defect_seed = *c;
       }},
      {"noise_variance",
       [&](const std::string& k, const Json& v) {
         if (v.is_null()) return;
         if (auto c = rd.number(k, v)) cfg.noise_variance = *c;
       }},
      {"eval_noise_variance", set_number(cfg.eval_noise_variance)},
      {"anneal_initial_temp", set_number(cfg.anneal.initial_temp)},
      {"anneal_visit", set_number(cfg.anneal.visit)},
      {"anneal_accept", set_number(cfg.anneal.accept)},
      {"anneal_restart_ratio", set_number(cfg.anneal.restart_temp_ratio)},
      {"anneal_max_iterations", set_count(cfg.anneal.max_iterations)},
      {"anneal_local_search",
       [&](const std::string& k, const Json& v) {
         if (auto b = rd.boolean(k, v)) cfg.anneal.local_search = *b;
       }},
      {"output",
       [&](const std::string& k, const Json& v) {
         if (auto s = rd.string(k, v)) cfg.output = *s;
       }},
      {"csv_output", set_path(cfg.csv_output)},
      {"endpoint", set_path(cfg.endpoint)},
  };

  for (const auto& [key, value] : root.items()) {
    auto h = handlers.find(key);
    if (h == handlers.end()) {
      problems.push_back("unknown key '" + key + "'");
      continue;
    }
    h->second(key, value);
  }
  for (auto& o : cfg.optimizers) o.anneal = cfg.anneal;
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

void check_positive_count(std::vector<std::string>& problems, const char* key, std::size_t v) {
  if (v == 0) problems.push_back(std::string(key) + ": must be at least 1");
}

}  // namespace

void EngineConfig::validate() const {
  std::vector<std::string> problems;
  if (tasks.empty()) problems.push_back("task: no task selected");
  if (optimizers.empty()) problems.push_back("optimizer: no optimizer selected");
  check_positive_count(problems, "trials", trials);
  check_positive_count(problems, "budget", budget);
  check_positive_count(problems, "eval_trials", eval_trials);
  if (stl_stride && *stl_stride == 0) problems.push_back("stl_stride: must be at least 1");
  try {
    anneal.validate();
  } catch (const ArgumentError& e) {
    problems.push_back(std::string("anneal: ") + e.what());
  }
  if (defect || defect_task_default) {
    if (!(defect_fraction > 0.0 && defect_fraction <= 1.0)) problems.push_back("defect_fraction: must lie in (0, 1]");
  }
  if (noise_variance && !(*noise_variance >= 0.0 && std::isfinite(*noise_variance))) {
    problems.push_back("noise_variance: must be finite and >= 0");
  }
  if (!(eval_noise_variance >= 0.0 && std::isfinite(eval_noise_variance))) {
    problems.push_back("eval_noise_variance: must be finite and >= 0");
  }
  if (output.empty()) problems.push_back("output: empty path");
  for (TaskId id : tasks) {
    try {
      controller_for(*this, id).validate();
    } catch (const ArgumentError& e) {
      problems.push_back(std::string(to_string(id)) + ": " + e.what());
      break;
    }
  }
  if (problems.empty() && spec_file) {
    try {
      (void)stl::parse_file(*spec_file);
    } catch (const std::exception& e) {
      problems.push_back("spec_file: " + std::string(e.what()));
    }
  }
  // A bridged environment declares its own schema at attach time.
  if (problems.empty() && !endpoint) {
    for (TaskId id : tasks) {
      try {
        TaskSpec task = envs::task_spec(id);
        if (stl_stride) task.stl_stride = *stl_stride;
        task.validate();
        if (spec_file) {
          task.success_spec = spec_for(*this, id);
          task.validate();
        }
      } catch (const std::exception& e) {
        problems.push_back(std::string(to_string(id)) + ": " + e.what());
      }
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::string EngineConfig::to_json() const {
  nlohmann::ordered_json j;
  Json task_names = Json::array();
  for (TaskId id : tasks) task_names.push_back(std::string(to_string(id)));
  j["tasks"] = task_names;
  j["spec"] = std::string(envs::to_string(spec));
  j["spec_file"] = spec_file ? Json(*spec_file) : Json(nullptr);
  Json names = Json::array();
  for (const auto& o : optimizers) names.push_back(o.name());
  j["optimizers"] = names;
  j["trials"] = trials;
  j["budget"] = budget;
  j["eval_trials"] = eval_trials;
  j["seed"] = seed;
  j["stl_stride"] = stl_stride ? Json(*stl_stride) : Json(nullptr);
  j["jobs"] = jobs;
  auto opt_num = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  j["k_pos"] = opt_num(k_pos);
  j["k_vel"] = opt_num(k_vel);
  j["v_max"] = opt_num(v_max);
  j["grasp_distance"] = opt_num(grasp_distance);
  j["balance_omega"] = opt_num(balance_omega);
  j["defect"] = defect_task_default ? "default" : defect ? std::string(envs::to_string(*defect)) : "none";
  j["defect_fraction"] = defect_fraction;
  j["defect_seed"] = defect_seed;
  j["noise_variance"] = opt_num(noise_variance);
  j["eval_noise_variance"] = eval_noise_variance;
  j["anneal_initial_temp"] = anneal.initial_temp;
  j["anneal_visit"] = anneal.visit;
  j["anneal_accept"] = anneal.accept;
  j["anneal_restart_ratio"] = anneal.restart_temp_ratio;
  j["anneal_max_iterations"] = anneal.max_iterations;
  j["anneal_local_search"] = anneal.local_search;
  j["output"] = output;
  j["csv_output"] = csv_output ? Json(*csv_output) : Json(nullptr);
  j["endpoint"] = endpoint ? Json(*endpoint) : Json(nullptr);
  return j.dump(2);
}

EngineConfig parse_config_toml(std::string_view text) {
  toml::table table;
  try {
    table = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML syntax error at " << e.source().begin.line << ":" << e.source().begin.column << ": "
        << e.description();
    throw ConfigError({msg.str()});
  }
  Json root = Json::object();
  std::vector<std::string> problems;
  for (const auto& [k, node] : table) {
    auto j = to_json_value(node);
    if (!j) {
      problems.push_back(std::string(k.str()) + ": unsupported value type");
      continue;
    }
    root[std::string(k.str())] = std::move(*j);
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return from_json(root);
}

EngineConfig parse_config_json(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({std::string("JSON syntax error: ") + e.what()});
  }
  if (root.is_object() && root.contains("config") && root["config"].is_object()) return from_json(root["config"]);
  return from_json(root);
}

EngineConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError({e.what()});
  }
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? parse_config_json(text) : parse_config_toml(text);
}

envs::ControllerParams controller_for(const EngineConfig& cfg, TaskId id) {
  envs::ControllerParams p = envs::default_controller(id);
  if (cfg.k_pos) p.k_pos = *cfg.k_pos;
  if (cfg.k_vel) p.k_vel = *cfg.k_vel;
  if (cfg.v_max) p.v_max = *cfg.v_max;
  if (cfg.grasp_distance) p.grasp_distance = *cfg.grasp_distance;
  if (cfg.balance_omega) p.balance_omega = *cfg.balance_omega;
  return p;
}

std::optional<envs::DefectSpec> defect_for(const EngineConfig& cfg, TaskId id) {
  if (!cfg.defect && !cfg.defect_task_default) return std::nullopt;
  const envs::DefectMode mode = cfg.defect_task_default ? envs::default_defect_mode(id) : *cfg.defect;
  return envs::make_defect(envs::task_spec(id).input_box, mode, cfg.defect_fraction,
                           derive_seed(cfg.defect_seed, hash_label(to_string(id))));
}

envs::EnvironmentHandle build_env(const EngineConfig& cfg, TaskId id) {
  std::optional<envs::NoiseSpec> noise;
  if (cfg.noise_variance && *cfg.noise_variance > 0.0) noise = envs::NoiseSpec{*cfg.noise_variance};
  auto env = envs::make_env(id, controller_for(cfg, id), defect_for(cfg, id), noise);
  if (cfg.stl_stride) env = envs::with_stl_stride(std::move(env), *cfg.stl_stride);
  return env;
}

stl::Formula spec_for(const EngineConfig& cfg, TaskId id) {
  if (cfg.spec_file) return stl::parse_file(*cfg.spec_file);
  return envs::builtin_spec(id, cfg.spec);
}

}  // namespace stlf
