#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "rebound_cli_tests";

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome run(const std::string& args) {
  fs::create_directories(kWork);
  const auto out = kWork / "stdout.txt";
  const auto err = kWork / "stderr.txt";
  const std::string cmd = std::string(REBOUND_CLI) + " " + args + " > " + out.string() + " 2> " +
                          err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

std::string config(const std::string& name) { return std::string(REBOUND_CONFIGS) + "/" + name; }

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("plan prints a window plan as JSON") {
  const auto r = run("plan --config " + config("plan_example.json"));
  REQUIRE(r.status == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["actions"].size() == 6);
  CHECK(doc["optimality"] == "exact");
  CHECK(doc["t_start"] == 4);
  CHECK(doc["t_end"] == 10);
  CHECK(doc["gap_bound"].get<double>() > 0.0);
  CHECK(doc["nodes_explored"].get<int>() > 0);
}

TEST_CASE("trace writes one row per step") {
  const auto r = run("trace --config " + config("paper_env.json") + " --horizon 12 --pulls 5,5,3");
  REQUIRE(r.status == 0);
  CHECK(count_lines(r.out) == 13);
  CHECK(r.out.rfind("run_id,t,arm,reward\n", 0) == 0);
  CHECK(r.out.find(",1,5,10\n") != std::string::npos);
}

TEST_CASE("eep then regret on the logged run") {
  const auto csv = (kWork / "eep.csv").string();
  const auto model = (kWork / "model.json").string();
  auto r = run("eep --config " + config("paper_env.json") +
               " --horizon 80 --window 4 --seed 3 --out " + csv + " --model-out " + model);
  REQUIRE(r.status == 0);
  CHECK(count_lines(slurp(csv)) == 81);
  const auto m = Json::parse(slurp(model));
  CHECK(m["arms"].size() == 5);
  CHECK(m["exploration_end"] == 20);

  const auto regret = (kWork / "regret.csv").string();
  r = run("regret --config " + config("paper_env.json") + " --run " + csv + " --window 4 --out " +
          regret);
  REQUIRE(r.status == 0);
  CHECK(count_lines(slurp(regret)) == 21);
  CHECK(Json::parse(r.err)["total"].get<double>() > 0.0);
}

TEST_CASE("estimate fits trajectories from CSV") {
  const auto path = kWork / "traj.csv";
  fs::create_directories(kWork);
  std::ofstream(path) << "arm,index,value\n1,1,0\n1,2,1.6\n1,3,2.88\n1,4,3.904\n";
  const auto r = run("estimate --trajectories " + path.string() + " --base-rewards 5");
  REQUIRE(r.status == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["arms"][0]["gamma_hat"].get<double>() == doctest::Approx(0.8));
  CHECK(doc["arms"][0]["lambda_hat"].get<double>() == doctest::Approx(2.0));
  CHECK(doc["arms"][0]["b_hat"].get<double>() == 5.0);
}

TEST_CASE("experiment runs once and is reused") {
  const auto out = (kWork / "exp" / "trace.csv").string();
  fs::remove_all(kWork / "exp");
  auto r = run("experiment --config " + config("trace.json") + " --out " + out + " --threads 2");
  REQUIRE(r.status == 0);
  CHECK(Json::parse(r.out)["reused"] == false);
  CHECK(count_lines(slurp(out)) == 1 + 30 * 2);
  r = run("experiment --config " + config("trace.json") + " --out " + out);
  REQUIRE(r.status == 0);
  CHECK(Json::parse(r.out)["reused"] == true);
}

TEST_CASE("failures exit nonzero with an error document") {
  auto r = run("plan --config /nonexistent.json");
  CHECK(r.status != 0);
  CHECK(Json::parse(r.err)["error"]["code"] == "io");

  fs::create_directories(kWork);
  std::ofstream(kWork / "bad.json") << R"({"arms":[{"gamma":1.5,"lambda":1,"base_reward":1}]})";
  r = run("eep --config " + (kWork / "bad.json").string() + " --horizon 50 --window 2");
  CHECK(r.status != 0);
  CHECK(Json::parse(r.err)["error"]["code"] == "parameter_domain");

  r = run("eep --config " + config("paper_env.json") + " --horizon 100 --window 11");
  CHECK(r.status != 0);
  CHECK(Json::parse(r.err)["error"]["code"] == "search_cap_exceeded");

  r = run("plan");
  CHECK(r.status != 0);
  CHECK(Json::parse(r.err)["error"]["code"] == "usage");
}
