#include "stlf/falsify/report.hpp"

#include <cstdio>

#include "json.hpp"
#include "stlf/trace_csv.hpp"

namespace stlf::falsify {

namespace {

using Json = nlohmann::ordered_json;

Json result_object(const FalsificationResult& r, bool timing) {
  Json j;
  j["success"] = r.success;
  j["falsifying_input"] = r.falsifying_input ? Json(r.falsifying_input->values) : Json(nullptr);
  j["falsifying_seed"] = r.falsifying_seed ? Json(*r.falsifying_seed) : Json(nullptr);
  j["best_input"] = r.best_input.values;
  j["min_robustness"] = r.min_robustness;
  j["simulations"] = r.simulations;
  if (timing) j["wall_time"] = r.wall_time;
  j["seed"] = r.seed;
  j["optimizer"] = r.optimizer;
  j["terminated_by"] = r.terminated_by;
  j["error"] = r.error ? Json(*r.error) : Json(nullptr);
  return j;
}

std::string average(const std::optional<double>& v, const char* fmt) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

}  // namespace

std::string result_json(const FalsificationResult& r, bool timing) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j.update(result_object(r, timing));
  return j.dump(2) + "\n";
}

std::string campaign_json(const CampaignReport& report, bool timing) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["master_seed"] = report.master_seed;
  j["trials"] = report.trials;
  j["budget"] = report.budget;
  Json cells = Json::array();
  for (const auto& c : report.cells) {
    Json cell;
    cell["task"] = c.task;
    cell["optimizer"] = c.optimizer;
    cell["suc_fals"] = c.successes;
    cell["errors"] = c.errors;
    if (timing) cell["avg_time"] = c.avg_time ? Json(*c.avg_time) : Json(nullptr);
    cell["avg_sims"] = c.avg_sims ? Json(*c.avg_sims) : Json(nullptr);
    Json trials = Json::array();
    for (std::size_t i = 0; i < c.trials.size(); ++i) {
      Json t;
      t["trial"] = i;
      t.update(result_object(c.trials[i], timing));
      trials.push_back(std::move(t));
    }
    cell["trials"] = std::move(trials);
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string metrics_json(const Metrics& m) {
  Json j;
  j["sr"] = m.sr;
  j["dbr"] = m.dbr;
  j["tct"] = m.tct ? Json(*m.tct) : Json(nullptr);
  j["trials"] = m.trials;
  return j.dump(2) + "\n";
}

std::string campaign_csv(const CampaignReport& report) {
  std::string out = "task,optimizer,suc_fals,avg_time,avg_sims\n";
  for (const auto& c : report.cells) {
    out += c.task + "," + c.optimizer + "," + std::to_string(c.successes) + ",";
    out += (c.avg_time ? format_double(*c.avg_time) : "-") + ",";
    out += (c.avg_sims ? format_double(*c.avg_sims) : "-") + "\n";
  }
  return out;
}

std::string summary_table(const CampaignReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-6s %-16s %10s %12s %10s\n", "Task", "Optimizer", "#Suc.Fals", "Avg.Time(s)",
                "Avg.#Sim");
  out += line;
  for (const auto& c : report.cells) {
    std::snprintf(line, sizeof line, "%-6s %-16s %10zu %12s %10s\n", c.task.c_str(), c.optimizer.c_str(),
                  c.successes, average(c.avg_time, "%.3f").c_str(), average(c.avg_sims, "%.2f").c_str());
    out += line;
  }
  return out;
}

}  // namespace stlf::falsify
