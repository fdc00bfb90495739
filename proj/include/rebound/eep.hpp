#pragma once

// w-lookahead Explore-Estimate-Plan: evenly spaced exploration, per-arm
// affine-system estimation, then windowed planning on the estimated model.

#include <vector>

#include "rebound/core.hpp"
#include "rebound/planning.hpp"
#include "rebound/sysid.hpp"

namespace rebound {

/// How arms are pulled during exploration. Repeated pulls each arm in one
/// consecutive block; interval(m) cycles through groups of m arms so each arm
/// is pulled every m steps (m = 1 is repeated, m = K is plain cycling).
struct ExplorationMode {
  int interval = 1;

  static ExplorationMode repeated() { return {1}; }
  static ExplorationMode every(int m) { return {m}; }
};

struct EepConfig {
  int window = 1;
  int horizon = 1;
  ExplorationMode exploration = ExplorationMode::repeated();
  PlanMode plan_mode = PlanMode::Exact;
  PlanLimits limits;
};

/// floor(T^{2/3}) computed in integers.
int floor_two_thirds_power(int horizon);

/// Exploration length floor(T^{2/3}) + w - (floor(T^{2/3}) mod w).
int exploration_length(int horizon, int window);

struct ExploreSchedule {
  int exploration_end = 0;       // last exploration step
  int pulls_per_arm = 0;         // estimation pulls per arm
  int remainder_start = 0;       // first cycled filler step (1-based)
  std::vector<ArmIndex> actions; // steps 1..exploration_end
  std::vector<int> spacing;      // per-arm pull spacing within its block
};

ExploreSchedule explore_schedule(int horizon, int window, std::size_t num_arms,
                                 ExplorationMode mode);

enum class Phase { Explore, Filler, Plan };

const char* to_string(Phase phase) noexcept;

struct Episode {
  int t_start = 0;  // plan covers t_start+1 .. t_end
  int t_end = 0;
  PlanResult plan;
};

struct EepRun {
  std::vector<ArmIndex> actions;
  std::vector<double> rewards;
  std::vector<Phase> phases;
  EstimatedModel model;
  std::vector<Trajectory> trajectories;
  int exploration_end = 0;
  std::vector<Episode> episodes;
  bool window_exceeds_guarantee = false;  // w > T^{2/3}
  bool filler_cycled = false;             // leftover exploration steps were cycled
};

/// Runs the full algorithm against a fresh environment.
EepRun eep_run(Environment& env, const EepConfig& config);

}  // namespace rebound
