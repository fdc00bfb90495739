#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rebound/core.hpp"
#include "rebound/eep.hpp"
#include "rebound/error.hpp"
#include "rebound/harness.hpp"
#include "rebound/io.hpp"
#include "rebound/planning.hpp"
#include "rebound/regret.hpp"
#include "rebound/sysid.hpp"

using namespace rebound;
using io::Json;

namespace {

// Sends text to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    io::write_text_file(out_path, text);
}

EnvConfig load_env(const std::string& path, std::optional<std::uint64_t> seed) {
  auto config = io::env_config_from_json(io::load_json_file(path));
  if (seed) config.seed = *seed;
  return config;
}

std::vector<ArmIndex> parse_arm_list(const std::string& text, std::size_t num_arms) {
  Json list = Json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      list.push_back(std::stoll(item));
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "bad arm id '" + item + "'");
    }
  }
  return io::actions_from_json(list, num_arms);
}

PlanMode parse_mode(const std::string& text) {
  if (text == "exact") return PlanMode::Exact;
  if (text == "heuristic") return PlanMode::Heuristic;
  fail(ErrorCode::InvalidInput, "mode must be 'exact' or 'heuristic'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  return in;
}

int print_error(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation, planning and learning for rebounding bandits"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  auto* trace = app.add_subcommand("trace", "Play a pull sequence and write the reward trace");
  std::string pulls_text;
  int trace_horizon = 0;
  trace->add_option("--config", config_path, "Environment JSON")->required();
  trace->add_option("--horizon", trace_horizon, "Steps to play")->required()->check(CLI::PositiveNumber);
  trace->add_option("--pulls", pulls_text, "Comma-separated arm ids, cycled; greedy if omitted");
  trace->add_option("--seed", seed, "Override the config seed");
  trace->add_option("--out", out_path, "CSV output path");

  auto* estimate = app.add_subcommand("estimate", "Fit arm parameters from trajectories");
  std::string traj_path, base_text;
  int spacing = 1;
  estimate->add_option("--trajectories", traj_path, "CSV with arm,index,value")->required();
  estimate->add_option("--spacing", spacing, "Steps between consecutive pulls")->check(CLI::PositiveNumber);
  estimate->add_option("--base-rewards", base_text, "Comma-separated b_hat per arm");
  estimate->add_option("--out", out_path, "JSON output path");

  auto* plan = app.add_subcommand("plan", "Plan one lookahead window");
  std::optional<int> plan_window;
  std::optional<std::string> plan_mode;
  plan->add_option("--config", config_path,
                   "JSON with arms, history, window, mode and optional horizon")->required();
  plan->add_option("--window", plan_window, "Override the window");
  plan->add_option("--mode", plan_mode, "exact or heuristic");
  plan->add_option("--out", out_path, "JSON output path");

  auto* eep = app.add_subcommand("eep", "Run Explore-Estimate-Plan");
  int horizon = 0, window = 1, interval = 1;
  std::string mode_text = "exact", model_out;
  eep->add_option("--config", config_path, "Environment JSON")->required();
  eep->add_option("--horizon", horizon, "Horizon T")->required()->check(CLI::PositiveNumber);
  eep->add_option("--window", window, "Lookahead window w")->required()->check(CLI::PositiveNumber);
  eep->add_option("--mode", mode_text, "exact or heuristic");
  eep->add_option("--interval", interval, "Exploration interval m (1 = repeated)")
      ->check(CLI::PositiveNumber);
  eep->add_option("--seed", seed, "Override the config seed");
  eep->add_option("--out", out_path, "Per-step CSV output path");
  eep->add_option("--model-out", model_out, "Fitted model JSON path (stdout if omitted)");

  auto* regret = app.add_subcommand("regret", "Lookahead regret of a logged run");
  std::string run_path;
  int regret_window = 1;
  regret->add_option("--config", config_path, "True-parameter environment JSON")->required();
  regret->add_option("--run", run_path, "CSV with t and arm columns")->required();
  regret->add_option("--window", regret_window, "Lookahead window w")->required()->check(CLI::PositiveNumber);
  regret->add_option("--out", out_path, "CSV output path");

  auto* experiment = app.add_subcommand("experiment", "Run an experiment grid");
  experiment->add_option("--config", config_path, "Experiment spec JSON")->required();
  experiment->add_option("--seed", seed, "Override the base seed");
  experiment->add_option("--out", out_path, "Override the CSV output path");
  experiment->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (*trace) {
      const auto config = load_env(config_path, seed);
      Environment env(config);
      const auto schedule = pulls_text.empty() ? std::vector<ArmIndex>{}
                                               : parse_arm_list(pulls_text, config.num_arms());
      std::vector<double> rewards;
      for (int t = 0; t < trace_horizon; ++t) {
        const ArmIndex arm = schedule.empty() ? greedy_step(config.arms, env.history())
                                              : schedule[t % schedule.size()];
        rewards.push_back(env.step(arm));
      }
      std::ostringstream csv;
      io::write_reward_trace_csv(csv, std::to_string(config.seed), env.history().actions(), rewards);
      emit(out_path, csv.str());
    } else if (*estimate) {
      auto in = open_input(traj_path);
      const auto trajectories = io::read_trajectories_csv(in, spacing);
      std::vector<double> base(trajectories.empty() ? 0 : trajectories.back().arm + 1, 0.0);
      if (!base_text.empty()) {
        std::stringstream ss(base_text);
        std::string item;
        base.clear();
        while (std::getline(ss, item, ',')) base.push_back(std::stod(item));
      }
      EstimatedModel model;
      for (const auto& traj : trajectories) {
        if (traj.arm >= base.size())
          fail(ErrorCode::IndexOutOfRange, "no base reward given for arm " + std::to_string(traj.arm + 1));
        model.arms.push_back(estimate_arm(traj, base[traj.arm]));
      }
      emit(out_path, io::estimated_model_to_json(model).dump(2) + "\n");
    } else if (*plan) {
      const auto doc = io::load_json_file(config_path);
      if (!doc.contains("arms")) fail(ErrorCode::InvalidInput, "plan config needs 'arms'");
      auto arms = io::arms_from_json(doc.at("arms"));
      const auto past = io::actions_from_json(doc.value("history", Json::array()), arms.size());
      PlanRequest request{arms, PullHistory(arms.size(), past), 0, 0};
      const int w = plan_window.value_or(doc.value("window", 1));
      request.t_start = request.history.length();
      request.t_end = request.t_start + w;
      const auto mode = parse_mode(plan_mode.value_or(doc.value("mode", std::string("exact"))));
      const int plan_horizon = doc.value("horizon", request.t_end);
      const auto result = lookahead_plan(request, mode);
      Json out = io::plan_result_to_json(result);
      out["t_start"] = request.t_start;
      out["t_end"] = request.t_end;
      out["horizon"] = plan_horizon;
      out["gap_bound"] = lookahead_gap_bound(request.arms, plan_horizon, std::min(w, plan_horizon));
      emit(out_path, out.dump(2) + "\n");
    } else if (*eep) {
      const auto config = load_env(config_path, seed);
      Environment env(config);
      EepConfig eep_config;
      eep_config.horizon = horizon;
      eep_config.window = window;
      eep_config.plan_mode = parse_mode(mode_text);
      eep_config.exploration = ExplorationMode::every(interval);
      const auto run = eep_run(env, eep_config);
      std::ostringstream csv;
      io::write_eep_run_csv(csv, run);
      Json model = io::estimated_model_to_json(run.model);
      model["exploration_end"] = run.exploration_end;
      model["window_exceeds_guarantee"] = run.window_exceeds_guarantee;
      model["filler_cycled"] = run.filler_cycled;
      model["any_fit_failed"] = run.model.any_fit_failed();
      if (out_path.empty() && model_out.empty()) {
        std::cout << csv.str();
        std::cerr << model.dump(2) << '\n';
      } else {
        emit(out_path, csv.str());
        emit(model_out, model.dump(2) + "\n");
      }
    } else if (*regret) {
      const auto config = load_env(config_path, std::nullopt);
      auto in = open_input(run_path);
      const auto history = io::read_run_csv(in, config.num_arms());
      const auto report = lookahead_regret(history, config.arms, regret_window);
      std::ostringstream csv;
      io::write_regret_csv(csv, report);
      emit(out_path, csv.str());
      std::cerr << Json{{"total", report.total}, {"episodes", report.per_episode.size()}}.dump()
                << '\n';
    } else if (*experiment) {
      auto spec = experiment_spec_from_json(io::load_json_file(config_path));
      if (seed) spec.env.seed = *seed;
      if (!out_path.empty()) spec.output = out_path;
      spec.threads = threads;
      const auto result = run_experiment(spec);
      if (spec.output.empty()) {
        std::cout << result.csv;
        std::cerr << result.summary.dump(2) << '\n';
      } else {
        std::cout << Json{{"output", spec.output},
                          {"summary", spec.output + ".summary.json"},
                          {"reused", result.reused}}.dump()
                  << '\n';
      }
    }
  } catch (const Error& e) {
    return print_error(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return print_error("internal", e.what());
  }
  return 0;
}
