#pragma once

// Planning with known (or estimated) deterministic dynamics: greedy play,
// exact and beam-search window planning, objective evaluation, and the
// identical-arm Max K-Cut construction.

#include <cstdint>
#include <span>
#include <vector>

#include "rebound/core.hpp"

namespace rebound {

/// Absolute tolerance for argmax and bound comparisons.
inline constexpr double kCompareTol = 1e-12;

enum class PlanMode { Exact, Heuristic };

struct PlanLimits {
  /// Exact search refuses windows with K^w above this.
  std::uint64_t max_exact_leaves = 10'000'000;
  std::size_t beam_width = 256;
};

struct PlanRequest {
  std::vector<ArmParams> arms;
  PullHistory history;  // complete through t_start
  int t_start = 0;
  int t_end = 0;  // plan covers t_start+1 .. t_end
};

enum class Optimality { Exact, Heuristic };

struct PlanResult {
  std::vector<ArmIndex> actions;  // for t_start+1 .. t_end
  double objective = 0.0;         // expected reward collected in the window
  Optimality optimality = Optimality::Exact;
  std::uint64_t nodes_explored = 0;
};

/// Arm maximizing the expected reward at step history.length() + 1, lowest
/// index among ties.
ArmIndex greedy_step(std::span<const ArmParams> arms, const PullHistory& history);

/// Best action sequence for one window. Exact mode is a depth-first
/// branch-and-bound returning the lexicographically smallest optimum.
PlanResult lookahead_plan(const PlanRequest& request, PlanMode mode,
                          const PlanLimits& limits = {});

/// Whether exact mode admits a window of `window` steps over `num_arms` arms.
bool exact_search_admits(std::size_t num_arms, int window, const PlanLimits& limits);

/// Plays the w-lookahead policy from an empty history for `horizon` steps.
PullHistory lookahead_policy(std::span<const ArmParams> arms, int horizon, int window,
                             PlanMode mode = PlanMode::Exact,
                             const PlanLimits& limits = {});

PullHistory greedy_policy(std::span<const ArmParams> arms, int horizon);

/// Binary assignment u_{k,t}, k in [0,K), t in [0,T].
class PullMatrix {
 public:
  PullMatrix(std::size_t num_arms, int horizon);

  static PullMatrix from_history(const PullHistory& history);

  std::size_t num_arms() const noexcept { return num_arms_; }
  int horizon() const noexcept { return horizon_; }

  std::uint8_t operator()(ArmIndex arm, int t) const;
  void set(ArmIndex arm, int t, std::uint8_t value);

  /// Throws Error(Infeasible) unless u_{k,0} = 0 and one arm per step.
  void check_feasible() const;

 private:
  std::size_t num_arms_;
  int horizon_;
  std::vector<std::uint8_t> cells_;
};

/// Auxiliary binaries z_{k,t,i} for t in [1,T], i in [0,t).
class ProductTable {
 public:
  ProductTable(std::size_t num_arms, int horizon);

  /// z_{k,t,i} = u_{k,i} u_{k,t}.
  static ProductTable exact(const PullMatrix& pulls);

  std::uint8_t operator()(ArmIndex arm, int t, int i) const;
  void set(ArmIndex arm, int t, int i, std::uint8_t value);

  std::size_t num_arms() const noexcept { return num_arms_; }
  int horizon() const noexcept { return horizon_; }

 private:
  std::size_t offset(ArmIndex arm, int t, int i) const;

  std::size_t num_arms_;
  int horizon_;
  std::vector<std::uint8_t> cells_;
};

/// Cumulative expected reward of a full assignment, bilinear form.
double objective_bilinear(std::span<const ArmParams> arms, const PullMatrix& pulls);

/// Same objective in the linearized form; checks the product constraints.
double objective_linearized(std::span<const ArmParams> arms, const PullMatrix& pulls,
                            const ProductTable& products);

/// Upper bound on the optimality gap of the w-lookahead policy over T steps.
double lookahead_gap_bound(std::span<const ArmParams> arms, int horizon, int window);

/// Parts P_1..P_K of the steps 1..T; part k holds the steps it plays.
using Partition = std::vector<std::vector<int>>;

/// Residue-class partition P_k = {t : t = k mod K}.
Partition max_kcut_partition(int num_parts, int horizon);

/// Weight of edges e(i,j) = lambda gamma^{|j-i|} crossing between parts.
double cut_weight(const Partition& partition, double lambda, double gamma);

/// Weight of all edges of the complete graph on steps 1..T.
double total_edge_weight(int horizon, double lambda, double gamma);

}  // namespace rebound
