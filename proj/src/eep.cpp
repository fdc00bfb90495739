#include "rebound/eep.hpp"

#include <algorithm>
#include <string>

#include "rebound/error.hpp"

namespace rebound {

int floor_two_thirds_power(int horizon) {
  if (horizon < 1) fail(ErrorCode::InvalidInput, "horizon must be >= 1");
  // largest q with q^3 <= T^2
  const long long square = static_cast<long long>(horizon) * horizon;
  long long q = 0;
  while ((q + 1) * (q + 1) * (q + 1) <= square) ++q;
  return static_cast<int>(q);
}

int exploration_length(int horizon, int window) {
  if (window < 1 || window > horizon)
    fail(ErrorCode::InvalidInput, "window must lie in [1, T]");
  const int base = floor_two_thirds_power(horizon);
  // adds a full window even when base is already a multiple of w
  return base + window - base % window;
}

ExploreSchedule explore_schedule(int horizon, int window, std::size_t num_arms,
                                 ExplorationMode mode) {
  if (num_arms == 0) fail(ErrorCode::InvalidInput, "at least one arm is required");
  if (mode.interval < 1) fail(ErrorCode::InvalidInput, "exploration interval must be >= 1");
  const int explore_end = exploration_length(horizon, window);
  if (explore_end >= horizon)
    fail(ErrorCode::HorizonTooShort,
         "exploration would take " + std::to_string(explore_end) + " of " +
             std::to_string(horizon) + " steps; no planning phase is left");

  const int arms = static_cast<int>(num_arms);
  ExploreSchedule schedule;
  schedule.exploration_end = explore_end;
  schedule.pulls_per_arm = explore_end / arms;
  if (schedule.pulls_per_arm < 1)
    fail(ErrorCode::HorizonTooShort, "exploration is shorter than the number of arms");
  schedule.spacing.assign(num_arms, 1);

  const int group_size = std::min(mode.interval, arms);
  for (int first = 0; first < arms; first += group_size) {
    const int size = std::min(group_size, arms - first);
    for (int k = first; k < first + size; ++k) schedule.spacing[k] = size;
    for (int round = 0; round < schedule.pulls_per_arm; ++round)
      for (int k = first; k < first + size; ++k)
        schedule.actions.push_back(static_cast<ArmIndex>(k));
  }

  schedule.remainder_start = static_cast<int>(schedule.actions.size()) + 1;
  for (ArmIndex k = 0; static_cast<int>(schedule.actions.size()) < explore_end;
       k = (k + 1) % num_arms)
    schedule.actions.push_back(k);
  return schedule;
}

const char* to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Explore: return "explore";
    case Phase::Filler: return "filler";
    case Phase::Plan: return "plan";
  }
  return "unknown";
}

EepRun eep_run(Environment& env, const EepConfig& config) {
  if (env.time() != 1) fail(ErrorCode::InvalidInput, "EEP needs a fresh environment");
  const std::size_t num_arms = env.num_arms();
  const int horizon = config.horizon;
  const auto schedule =
      explore_schedule(horizon, config.window, num_arms, config.exploration);
  if (config.plan_mode == PlanMode::Exact &&
      !exact_search_admits(num_arms, config.window, config.limits))
    fail(ErrorCode::SearchCapExceeded, "window too large for exact planning");

  EepRun run;
  run.exploration_end = schedule.exploration_end;
  run.window_exceeds_guarantee = config.window > floor_two_thirds_power(horizon);
  run.filler_cycled = schedule.remainder_start <= schedule.exploration_end;

  auto play = [&](ArmIndex arm, Phase phase) {
    const double reward = env.step(arm);
    run.actions.push_back(arm);
    run.rewards.push_back(reward);
    run.phases.push_back(phase);
    return reward;
  };

  std::vector<double> first_reward(num_arms, 0.0);
  run.trajectories.resize(num_arms);
  for (ArmIndex k = 0; k < num_arms; ++k) {
    run.trajectories[k].arm = k;
    run.trajectories[k].spacing = schedule.spacing[k];
  }
  for (int t = 1; t <= schedule.exploration_end; ++t) {
    const ArmIndex arm = schedule.actions[t - 1];
    if (t >= schedule.remainder_start) {
      play(arm, Phase::Filler);
      continue;
    }
    const double reward = play(arm, Phase::Explore);
    auto& values = run.trajectories[arm].values;
    if (values.empty()) first_reward[arm] = reward;
    values.push_back(first_reward[arm] - reward);
  }

  for (ArmIndex k = 0; k < num_arms; ++k)
    run.model.arms.push_back(estimate_arm(run.trajectories[k], first_reward[k]));

  PlanRequest request{run.model.planning_params(), env.history(), 0, 0};
  int t_prev = schedule.exploration_end;
  while (t_prev < horizon) {
    request.t_start = t_prev;
    request.t_end = std::min(t_prev + config.window, horizon);
    request.history = env.history();
    auto plan = lookahead_plan(request, config.plan_mode, config.limits);
    for (auto arm : plan.actions) play(arm, Phase::Plan);
    run.episodes.push_back({request.t_start, request.t_end, std::move(plan)});
    t_prev = request.t_end;
  }
  return run;
}

}  // namespace rebound
