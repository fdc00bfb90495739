#pragma once

// w-step lookahead regret of an executed pull sequence. Each episode's best
// time-dependent competitor is the exact true-parameter window plan started
// from the learner's own history.

#include <span>
#include <vector>

#include "rebound/core.hpp"
#include "rebound/planning.hpp"

namespace rebound {

struct EpisodeRegret {
  int index = 0;
  int t_start = 0;  // episode covers t_start+1 .. t_end
  int t_end = 0;
  double oracle_value = 0.0;
  double learner_value = 0.0;
  double gap = 0.0;
  std::vector<ArmIndex> oracle_actions;
};

struct RegretReport {
  std::vector<EpisodeRegret> per_episode;
  double total = 0.0;
  int window = 0;
  int horizon = 0;
};

/// Exact true-parameter plan for t_start+1..t_end given history through t_start.
PlanResult episode_oracle(std::span<const ArmParams> true_arms, const PullHistory& history,
                          int t_start, int t_end, const PlanLimits& limits = {});

/// Expected reward the learner collected over t_start+1..t_end.
double episode_learner_value(std::span<const ArmParams> true_arms, const PullHistory& run,
                             int t_start, int t_end);

RegretReport lookahead_regret(const PullHistory& run, std::span<const ArmParams> true_arms,
                              int window, const PlanLimits& limits = {});

}  // namespace rebound
