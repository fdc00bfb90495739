#pragma once

// Satiation dynamics of rebounding arms: parameters, the stochastic
// environment, closed-form expected rewards and the observable MDP state.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rebound {

using ArmIndex = std::size_t;  // zero-based inside the library

/// Reward/dynamics parameters of one arm.
struct ArmParams {
  double gamma = 0.0;        // satiation retention, [0, 1)
  double lambda = 0.0;       // exposure influence, >= 0
  double base_reward = 0.0;  // reward at zero satiation

  /// Throws Error(ParameterDomain) when an invariant is broken.
  void validate() const;
};

void validate_arms(std::span<const ArmParams> arms);

struct EnvConfig {
  std::vector<ArmParams> arms;
  double sigma_z = 0.0;  // std of the satiation noise z_{k,t}
  std::uint64_t seed = 0;

  std::size_t num_arms() const noexcept { return arms.size(); }
  void validate() const;
};

/// Per-arm affine system seen when an arm is pulled every `spacing` steps:
/// x' = a x + d + noise, noise ~ N(0, noise_sd^2).
struct AffineParams {
  double a = 0.0;
  double d = 0.0;
  double noise_sd = 0.0;
};

AffineParams affine_params(const ArmParams& arm, double sigma_z, int spacing);

/// Actions taken at steps 1..t, one arm per step by construction.
class PullHistory {
 public:
  explicit PullHistory(std::size_t num_arms);
  PullHistory(std::size_t num_arms, std::vector<ArmIndex> actions);

  void push(ArmIndex arm);

  std::size_t num_arms() const noexcept { return num_arms_; }
  /// Number of completed steps t.
  int length() const noexcept { return static_cast<int>(actions_.size()); }
  std::span<const ArmIndex> actions() const noexcept { return actions_; }

  /// Binary sequence u_{k,0:t} (u_{k,0} = 0).
  std::vector<std::uint8_t> pulls(ArmIndex arm) const;

  /// The first `steps` actions.
  PullHistory prefix(int steps) const;

 private:
  std::size_t num_arms_;
  std::vector<ArmIndex> actions_;
};

/// s_{k,t} = sum_{i=1}^{t-1} gamma^{t-i} u_i for u = u_{0:t-1}.
double satiation_expected(double gamma, std::span<const std::uint8_t> pulls);

/// mu_{k,t} = b - lambda * s_{k,t} for u = u_{0:t-1}.
double expected_reward(const ArmParams& arm, std::span<const std::uint8_t> pulls);

/// Deterministic satiation of every arm at step history.length() + 1.
std::vector<double> expected_satiation_after(std::span<const ArmParams> arms,
                                             const PullHistory& history);

/// Sum over steps of the expected reward of the pulled arm given everything
/// pulled before it.
double cumulative_expected_reward(std::span<const ArmParams> arms,
                                  const PullHistory& history);

/// Learner-visible state x_t = (x_{k,t}, n_{k,t})_k at step `time`.
struct MdpState {
  int time = 1;
  std::vector<double> influence;      // x_{k,t}
  std::vector<int> steps_since_pull;  // n_{k,t}; 0 if never pulled

  static MdpState initial(std::size_t num_arms);
};

/// Full simulator state; `satiation` is hidden from learners.
struct EnvState {
  MdpState observed;
  std::vector<double> satiation;  // s_{k,t}

  static EnvState initial(std::size_t num_arms);
};

/// Independent noise stream per arm, derived from the config seed. Each arm
/// draws once per step whether or not the draw is used, so z_{k,t} depends on
/// (seed, k, t) only.
class NoiseStreams {
 public:
  NoiseStreams(std::uint64_t seed, std::size_t num_arms, double sigma_z);

  double draw(ArmIndex arm);

 private:
  std::vector<std::mt19937_64> engines_;
  std::vector<std::normal_distribution<double>> normals_;
  double sigma_z_;
};

struct StepOutcome {
  double reward = 0.0;
  EnvState next;
};

/// Pull `arm` at state.observed.time and advance every arm one step.
StepOutcome env_step(std::span<const ArmParams> arms, const EnvState& state,
                     ArmIndex arm, NoiseStreams& noise);

/// Expected reward r(x_t, k) of pulling `arm` in observable state `state`.
double mdp_reward(const MdpState& state, ArmIndex arm,
                  std::span<const ArmParams> arms);

/// High-probability bound B(delta) on max_{k,t} |x_{k,t}|.
double state_bound(const EnvConfig& config, double delta, int horizon);

/// Single-threaded simulator owning its noise streams.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  /// Pull an arm; returns the realized reward.
  double step(ArmIndex arm);

  const EnvConfig& config() const noexcept { return config_; }
  std::size_t num_arms() const noexcept { return config_.arms.size(); }
  /// Index of the next step to be played (starts at 1).
  int time() const noexcept { return state_.observed.time; }
  const MdpState& observation() const noexcept { return state_.observed; }
  const PullHistory& history() const noexcept { return history_; }

  /// Hidden satiation, for traces and diagnostics only.
  double hidden_satiation(ArmIndex arm) const;

 private:
  EnvConfig config_;
  EnvState state_;
  NoiseStreams noise_;
  PullHistory history_;
};

}  // namespace rebound
