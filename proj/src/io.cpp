#include "rebound/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rebound/error.hpp"

namespace rebound::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    fail(ErrorCode::InvalidInput, "not a number: '" + text + "'");
  return value;
}

long long parse_int(const std::string& text) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    fail(ErrorCode::InvalidInput, "not an integer: '" + text + "'");
  return value;
}

ArmIndex parse_arm(const std::string& text, std::size_t num_arms) {
  const long long arm = parse_int(text);
  if (arm < 1 || static_cast<std::size_t>(arm) > num_arms)
    fail(ErrorCode::IndexOutOfRange, "arm " + text + " outside 1.." + std::to_string(num_arms));
  return static_cast<ArmIndex>(arm - 1);
}

template <typename T>
T required(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    fail(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) fail(ErrorCode::Io, "cannot format number");
  return std::string(buf, ptr);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

std::vector<ArmParams> arms_from_json(const Json& doc) {
  if (!doc.is_array()) fail(ErrorCode::InvalidInput, "'arms' must be a list");
  std::vector<ArmParams> arms;
  for (const auto& item : doc)
    arms.push_back({required<double>(item, "gamma"), required<double>(item, "lambda"),
                    required<double>(item, "base_reward")});
  validate_arms(arms);
  return arms;
}

Json arms_to_json(std::span<const ArmParams> arms) {
  Json list = Json::array();
  for (const auto& arm : arms)
    list.push_back({{"gamma", arm.gamma}, {"lambda", arm.lambda},
                    {"base_reward", arm.base_reward}});
  return list;
}

EnvConfig env_config_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("arms"))
    fail(ErrorCode::InvalidInput, "config needs an 'arms' list");
  EnvConfig config;
  config.arms = arms_from_json(doc.at("arms"));
  config.sigma_z = doc.value("sigma_z", 0.0);
  config.seed = doc.value("seed", std::uint64_t{0});
  config.validate();
  return config;
}

Json env_config_to_json(const EnvConfig& config) {
  return {{"arms", arms_to_json(config.arms)},
          {"sigma_z", config.sigma_z},
          {"seed", config.seed}};
}

std::vector<ArmIndex> actions_from_json(const Json& list, std::size_t num_arms) {
  if (!list.is_array()) fail(ErrorCode::InvalidInput, "action list must be an array");
  std::vector<ArmIndex> actions;
  for (const auto& item : list) {
    if (!item.is_number_integer()) fail(ErrorCode::InvalidInput, "arm ids must be integers");
    actions.push_back(parse_arm(std::to_string(item.get<long long>()), num_arms));
  }
  return actions;
}

Json actions_to_json(std::span<const ArmIndex> actions) {
  Json list = Json::array();
  for (auto a : actions) list.push_back(a + 1);
  return list;
}

Json plan_result_to_json(const PlanResult& result) {
  return {{"actions", actions_to_json(result.actions)},
          {"objective", result.objective},
          {"optimality", result.optimality == Optimality::Exact ? "exact" : "heuristic"},
          {"nodes_explored", result.nodes_explored}};
}

Json estimated_model_to_json(const EstimatedModel& model) {
  Json arms = Json::array();
  for (const auto& est : model.arms) {
    Json item = {{"arm", est.arm + 1},
                 {"a_hat", est.a_hat},
                 {"d_hat", est.d_hat},
                 {"gamma_hat", est.gamma_hat},
                 {"lambda_hat", est.lambda_hat},
                 {"b_hat", est.b_hat},
                 {"spacing", est.spacing},
                 {"num_pairs", est.num_pairs},
                 {"sign_lost", est.sign_lost},
                 {"fit_failed", est.fit_failed}};
    if (est.sigma_zk_hat) item["sigma_zk_hat"] = *est.sigma_zk_hat;
    if (est.radii) item["radii"] = {{"eps_a", est.radii->eps_a}, {"eps_d", est.radii->eps_d}};
    if (est.psi) item["psi"] = *est.psi;
    if (est.below_sample_threshold) item["below_sample_threshold"] = true;
    arms.push_back(std::move(item));
  }
  return {{"arms", arms}};
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) fail(ErrorCode::InvalidInput, "CSV lacks column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      fail(ErrorCode::InvalidInput, "CSV row has " + std::to_string(fields.size()) +
                                        " fields, header has " +
                                        std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) fail(ErrorCode::InvalidInput, "CSV is empty");
  return table;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::vector<Trajectory> read_trajectories_csv(std::istream& in, int spacing) {
  const auto table = read_csv(in);
  const auto arm_col = table.column("arm");
  const auto index_col = table.column("index");
  const auto value_col = table.column("value");
  std::map<long long, std::map<long long, double>> by_arm;
  for (const auto& row : table.rows) {
    const long long arm = parse_int(row[arm_col]);
    if (arm < 1) fail(ErrorCode::IndexOutOfRange, "arm ids start at 1");
    const long long index = parse_int(row[index_col]);
    if (!by_arm[arm].emplace(index, parse_double(row[value_col])).second)
      fail(ErrorCode::InvalidInput, "duplicate (arm, index) in trajectory CSV");
  }
  std::vector<Trajectory> trajectories;
  for (const auto& [arm, values] : by_arm) {
    Trajectory traj;
    traj.arm = static_cast<ArmIndex>(arm - 1);
    traj.spacing = spacing;
    long long expected = values.begin()->first;
    for (const auto& [index, value] : values) {
      if (index != expected++)
        fail(ErrorCode::InvalidInput, "trajectory indices must be contiguous");
      traj.values.push_back(value);
    }
    traj.validate();
    trajectories.push_back(std::move(traj));
  }
  return trajectories;
}

void write_reward_trace_csv(std::ostream& out, const std::string& run_id,
                            std::span<const ArmIndex> actions, std::span<const double> rewards,
                            bool with_header) {
  if (actions.size() != rewards.size())
    fail(ErrorCode::InvalidInput, "actions and rewards differ in length");
  if (with_header) write_csv_row(out, {"run_id", "t", "arm", "reward"});
  for (std::size_t t = 0; t < actions.size(); ++t)
    write_csv_row(out, {run_id, std::to_string(t + 1), std::to_string(actions[t] + 1),
                        format_double(rewards[t])});
}

void write_eep_run_csv(std::ostream& out, const EepRun& run) {
  write_csv_row(out, {"t", "arm", "reward", "phase"});
  for (std::size_t t = 0; t < run.actions.size(); ++t)
    write_csv_row(out, {std::to_string(t + 1), std::to_string(run.actions[t] + 1),
                        format_double(run.rewards[t]), to_string(run.phases[t])});
}

PullHistory read_run_csv(std::istream& in, std::size_t num_arms) {
  const auto table = read_csv(in);
  const auto t_col = table.column("t");
  const auto arm_col = table.column("arm");
  std::vector<std::pair<long long, ArmIndex>> steps;
  for (const auto& row : table.rows)
    steps.emplace_back(parse_int(row[t_col]), parse_arm(row[arm_col], num_arms));
  std::sort(steps.begin(), steps.end());
  PullHistory history(num_arms);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].first != static_cast<long long>(i + 1))
      fail(ErrorCode::InvalidInput, "run must cover steps 1..T exactly once");
    history.push(steps[i].second);
  }
  return history;
}

void write_regret_csv(std::ostream& out, const RegretReport& report) {
  write_csv_row(out, {"episode", "t_start", "t_end", "oracle", "learner", "gap"});
  for (const auto& ep : report.per_episode)
    write_csv_row(out, {std::to_string(ep.index + 1), std::to_string(ep.t_start),
                        std::to_string(ep.t_end), format_double(ep.oracle_value),
                        format_double(ep.learner_value), format_double(ep.gap)});
}

}  // namespace rebound::io
