#include "rebound/regret.hpp"

#include <algorithm>

#include "rebound/error.hpp"

namespace rebound {

PlanResult episode_oracle(std::span<const ArmParams> true_arms, const PullHistory& history,
                          int t_start, int t_end, const PlanLimits& limits) {
  PlanRequest request{{true_arms.begin(), true_arms.end()}, history.prefix(t_start),
                      t_start, t_end};
  return lookahead_plan(request, PlanMode::Exact, limits);
}

double episode_learner_value(std::span<const ArmParams> true_arms, const PullHistory& run,
                             int t_start, int t_end) {
  if (t_start < 0 || t_end <= t_start || t_end > run.length())
    fail(ErrorCode::InvalidInput, "episode lies outside the recorded run");
  auto satiation = expected_satiation_after(true_arms, run.prefix(t_start));
  const auto actions = run.actions();
  double value = 0.0;
  for (int t = t_start; t < t_end; ++t) {
    const ArmIndex a = actions[t];
    value += true_arms[a].base_reward - true_arms[a].lambda * satiation[a];
    for (std::size_t k = 0; k < true_arms.size(); ++k)
      satiation[k] = true_arms[k].gamma * (satiation[k] + (k == a ? 1.0 : 0.0));
  }
  return value;
}

RegretReport lookahead_regret(const PullHistory& run, std::span<const ArmParams> true_arms,
                              int window, const PlanLimits& limits) {
  validate_arms(true_arms);
  if (run.num_arms() != true_arms.size())
    fail(ErrorCode::InvalidInput, "run arm count does not match parameters");
  const int horizon = run.length();
  if (horizon < 1) fail(ErrorCode::InvalidInput, "run is empty");
  if (window < 1 || window > horizon)
    fail(ErrorCode::InvalidInput, "window must lie in [1, T]");

  RegretReport report;
  report.window = window;
  report.horizon = horizon;
  const int episodes = (horizon + window - 1) / window;
  for (int i = 0; i < episodes; ++i) {
    EpisodeRegret ep;
    ep.index = i;
    ep.t_start = i * window;
    ep.t_end = std::min(ep.t_start + window, horizon);
    auto oracle = episode_oracle(true_arms, run, ep.t_start, ep.t_end, limits);
    ep.oracle_value = oracle.objective;
    ep.oracle_actions = std::move(oracle.actions);
    ep.learner_value = episode_learner_value(true_arms, run, ep.t_start, ep.t_end);
    ep.gap = ep.oracle_value - ep.learner_value;
    report.total += ep.gap;
    report.per_episode.push_back(std::move(ep));
  }
  return report;
}

}  // namespace rebound
