#pragma once

// Config documents (JSON) and CSV files. Arms are numbered from 1 in every
// external format.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rebound/core.hpp"
#include "rebound/eep.hpp"
#include "rebound/planning.hpp"
#include "rebound/regret.hpp"
#include "rebound/sysid.hpp"

namespace rebound::io {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::vector<ArmParams> arms_from_json(const Json& doc);
Json arms_to_json(std::span<const ArmParams> arms);

/// {"arms": [{"gamma", "lambda", "base_reward"}...], "sigma_z", "seed"}
EnvConfig env_config_from_json(const Json& doc);
Json env_config_to_json(const EnvConfig& config);

/// Zero-based arm indices from a 1-based JSON list.
std::vector<ArmIndex> actions_from_json(const Json& list, std::size_t num_arms);
Json actions_to_json(std::span<const ArmIndex> actions);

Json plan_result_to_json(const PlanResult& result);
Json estimated_model_to_json(const EstimatedModel& model);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads "arm,index,value" rows into one trajectory per arm, ordered by
/// index. Every trajectory gets `spacing`.
std::vector<Trajectory> read_trajectories_csv(std::istream& in, int spacing = 1);

/// Writes "run_id,t,arm,reward" rows.
void write_reward_trace_csv(std::ostream& out, const std::string& run_id,
                            std::span<const ArmIndex> actions, std::span<const double> rewards,
                            bool with_header = true);

/// Writes "t,arm,reward,phase" rows for an EEP run.
void write_eep_run_csv(std::ostream& out, const EepRun& run);

/// Pull history from any CSV with "t" and "arm" columns.
PullHistory read_run_csv(std::istream& in, std::size_t num_arms);

/// Writes "episode,t_start,t_end,oracle,learner,gap" rows.
void write_regret_csv(std::ostream& out, const RegretReport& report);

}  // namespace rebound::io
