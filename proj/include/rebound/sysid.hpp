#pragma once

// Identification of the per-arm affine satiation-influence system
// x' = a x + d + noise from evenly spaced pulls, and recovery of (gamma, lambda).

#include <optional>
#include <span>
#include <vector>

#include "rebound/core.hpp"

namespace rebound {

/// Observed satiation influences of one arm, pulled every `spacing` steps.
/// values[j] is the first reward minus the (j+1)-th reward, so values[0] = 0.
struct Trajectory {
  ArmIndex arm = 0;
  int spacing = 1;
  std::vector<double> values;

  void validate() const;
};

struct AffineFit {
  double a_hat = 0.0;
  double d_hat = 0.0;
  int num_pairs = 0;
  /// Residual std with divisor n - 2; absent when n = 2.
  std::optional<double> residual_sd;
};

/// Ordinary least squares on rows (x_j, 1) -> x_{j+1}.
AffineFit ols_affine_fit(const Trajectory& trajectory);

struct RecoveredParams {
  double gamma_hat = 0.0;
  double lambda_hat = 0.0;
  bool sign_lost = false;  // a_hat was negative
};

/// gamma_hat = |a|^{1/m}, lambda_hat = |d / a|.
RecoveredParams recover_params(double a_hat, double d_hat, int spacing);

struct MultiTrajectoryFit {
  double a_hat = 0.0;
  double d_hat = 0.0;
  int num_trajectories = 0;
  /// n < 64 log(2/delta): the sample-size precondition of the a-bound fails.
  bool below_sample_threshold = false;
};

/// Estimators from many short trajectories. d_hat averages the second values;
/// a_hat regresses differenced trajectory pairs at index t_min (1-based).
MultiTrajectoryFit multi_traj_estimate(std::span<const Trajectory> trajectories, int t_min,
                                       double delta = 0.05);

struct ConfidenceRadii {
  double eps_a = 0.0;
  double eps_d = 0.0;
};

/// Half-widths of the d and a confidence intervals. a_hat stands in for the
/// unknown a inside the a-radius, so eps_a is approximate.
ConfidenceRadii confidence_radii(int n, double delta, double sigma_zk, double a_hat,
                                 int t_min);

/// Small-ball constant of the single-trajectory rate; diagnostic only.
double small_ball_psi(double a, double d, double sigma_zk);

struct ArmEstimate {
  ArmIndex arm = 0;
  double a_hat = 0.0;
  double d_hat = 0.0;
  double gamma_hat = 0.0;   // clamped to [0, 1 - 1e-6]
  double lambda_hat = 0.0;
  double b_hat = 0.0;
  int spacing = 1;
  int num_pairs = 0;
  std::optional<double> sigma_zk_hat;
  std::optional<ConfidenceRadii> radii;
  std::optional<double> psi;
  bool sign_lost = false;
  bool below_sample_threshold = false;
  bool fit_failed = false;  // planning then uses lambda = 0 for this arm
};

struct EstimatedModel {
  std::vector<ArmEstimate> arms;

  /// Parameters to hand to the planner.
  std::vector<ArmParams> planning_params() const;
  bool any_fit_failed() const;
};

inline constexpr double kGammaClampMax = 1.0 - 1e-6;

/// Fits one arm from its single trajectory and first observed reward.
/// Failures (too short, rank deficient, a_hat ~ 0) yield fit_failed with
/// gamma_hat = lambda_hat = 0.
ArmEstimate estimate_arm(const Trajectory& trajectory, double b_hat);

/// Multiple-trajectory estimate with confidence radii; sigma_zk is the known
/// (or separately estimated) std of the affine noise.
ArmEstimate estimate_arm_multi(std::span<const Trajectory> trajectories, double b_hat,
                               int t_min, double sigma_zk, double delta = 0.05);

}  // namespace rebound
