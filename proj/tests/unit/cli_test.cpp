#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("stlf_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const char* name) { return std::string(STLF_FIXTURE_DIR) + "/" + name; }
std::string spec(const char* name) { return std::string(STLF_SPEC_DIR) + "/" + name; }
std::string temp(const std::string& name) { return (scratch() / name).string(); }

CliRun run(const std::string& args) {
  static int counter = 0;
  const std::string id = std::to_string(counter++);
  const fs::path out = scratch() / ("out" + id), err = scratch() / ("err" + id);
  const std::string cmd = std::string(STLF_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

Json read_json(const std::string& path) { return Json::parse(slurp(path)); }

}  // namespace

TEST(Cli, MonitorPrintsRobustnessAndVerdict) {
  const CliRun sat = run("monitor --spec " + spec("pr_success.stl") + " --trace " + fixture("pr_constant_020.csv"));
  EXPECT_EQ(sat.code, 0) << sat.err;
  EXPECT_EQ(sat.out, "0.1 SAT\n");

  const CliRun unsat = run("monitor --spec " + spec("pr_success.stl") + " --trace " + fixture("pr_approach.csv"));
  EXPECT_EQ(unsat.code, 1) << unsat.err;
  EXPECT_NE(unsat.out.find("UNSAT"), std::string::npos);

  const CliRun zero = run("monitor --spec " + spec("pr_success.stl") + " --trace " + fixture("pr_boundary.csv"));
  EXPECT_EQ(zero.code, 2) << zero.err;
  EXPECT_EQ(zero.out, "0 INCONCLUSIVE\n");
}

TEST(Cli, MonitorErrorsExitWithThree) {
  const CliRun bad = run("monitor --spec " + fixture("malformed.stl") + " --trace " + fixture("pr_constant_020.csv"));
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("1:"), std::string::npos) << bad.err;

  const CliRun shortt = run("monitor --spec " + spec("pr_success.stl") + " --trace " + fixture("pr_short.csv"));
  EXPECT_EQ(shortt.code, 3);
  EXPECT_FALSE(shortt.err.empty());

  const CliRun truncated =
      run("monitor --truncate --spec " + spec("pr_success.stl") + " --trace " + fixture("pr_short.csv"));
  EXPECT_NE(truncated.code, 3) << truncated.err;

  EXPECT_EQ(run("monitor --spec " + spec("pr_success.stl")).code, 3);
  EXPECT_EQ(run("monitor --spec " + spec("pr_success.stl") + " --trace /nonexistent.csv").code, 3);
}

TEST(Cli, FalsifyFindsTheDefect) {
  const std::string out = temp("defect.json");
  const CliRun r = run("falsify --config " + fixture("pr_defect.toml") + " --output " + out);
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = read_json(out);
  EXPECT_EQ(j["command"], "falsify");
  EXPECT_EQ(j["task"], "PR");
  EXPECT_TRUE(j["result"]["success"].get<bool>());
  EXPECT_TRUE(j["result"]["falsifying_input"].is_array());
  EXPECT_LT(j["result"]["min_robustness"].get<double>(), 0.0);
  EXPECT_LE(j["result"]["simulations"].get<int>(), 300);
  EXPECT_TRUE(j.contains("config"));
}

TEST(Cli, FalsifyReportsASoundController) {
  const std::string out = temp("sound.json");
  const CliRun r = run("falsify --config " + fixture("pr_sound.toml") + " --output " + out);
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_FALSE(read_json(out)["result"]["success"].get<bool>());
}

TEST(Cli, InvalidConfigurationsExitWithTwo) {
  const CliRun zero = run("falsify --config " + fixture("budget_zero.toml") + " --output " + temp("zero.json"));
  EXPECT_EQ(zero.code, 2);
  EXPECT_NE(zero.err.find("budget"), std::string::npos) << zero.err;
  EXPECT_FALSE(fs::exists(temp("zero.json")));

  const CliRun unknown = run("evaluate --task XX");
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("PR, CS, PH, BB, BC, BP, DO, CP"), std::string::npos) << unknown.err;

  EXPECT_EQ(run("falsify --task PR --optimizer simplex").code, 2);
  EXPECT_EQ(run("falsify --config /nonexistent.toml").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, ReplayingAReportReproducesTheTrial) {
  const std::string first = temp("first.json"), second = temp("second.json");
  ASSERT_EQ(run("falsify --config " + fixture("pr_defect.toml") + " --seed 5 --output " + first).code, 0);
  ASSERT_EQ(run("falsify --config " + first + " --output " + second).code, 0);
  Json a = read_json(first), b = read_json(second);
  for (Json* j : {&a, &b}) {
    (*j)["result"].erase("wall_time");
    (*j)["config"].erase("output");
  }
  EXPECT_EQ(a, b);
}

TEST(Cli, CampaignWritesJsonAndCsv) {
  const std::string out = temp("campaign.json");
  const auto start = std::chrono::steady_clock::now();
  const CliRun r = run("campaign --config " + fixture("campaign_smoke.toml") + " --output " + out);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(60));
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = read_json(out);
  EXPECT_EQ(j["command"], "campaign");
  EXPECT_EQ(j["cells"].size(), 3u);

  std::istringstream csv(slurp(temp("campaign.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "task,optimizer,suc_fals,avg_time,avg_sims");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_NE(r.out.find("dual-annealing"), std::string::npos);
}

TEST(Cli, SoundCampaignHasDashes) {
  const std::string out = temp("sound_campaign.json"), csv = temp("sound_table.csv");
  const CliRun r = run("campaign --config " + fixture("campaign_sound.toml") + " --output " + out + " --csv " + csv);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_TRUE(line.ends_with(",0,-,-")) << line;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Cli, EvaluatePrintsBothConditions) {
  const CliRun r = run("evaluate --task PR --output " + temp("eval.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("SR(%)"), std::string::npos);
  EXPECT_NE(r.out.find("100.0"), std::string::npos);
}

TEST(Cli, BridgeAttachesAndFalsifies) {
  const std::string endpoint = std::string("\"stdio:") + STLF_FAKE_BRIDGE + "\"";
  const CliRun hello = run("bridge --endpoint " + endpoint);
  EXPECT_EQ(hello.code, 0) << hello.err;
  EXPECT_NE(hello.out.find("pos(2)"), std::string::npos) << hello.out;

  const std::string out = temp("bridge.json");
  const CliRun r = run("bridge --endpoint " + endpoint + " --stride 2 --spec-file " + fixture("ref_escape.stl") +
                    " --budget 200 --seed 1 --output " + out);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(read_json(out)["result"]["success"].get<bool>());

  const CliRun broken = run("bridge --endpoint \"stdio:" + std::string(STLF_FAKE_BRIDGE) + " bad-version\"");
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("protocol"), std::string::npos) << broken.err;
}
