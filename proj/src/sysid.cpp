#include "rebound/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rebound/error.hpp"

namespace rebound {

void Trajectory::validate() const {
  if (spacing < 1) fail(ErrorCode::InvalidInput, "trajectory spacing must be >= 1");
  if (values.empty() || values.front() != 0.0)
    fail(ErrorCode::InvalidInput, "trajectory must start at 0");
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorCode::InvalidInput, "trajectory values must be finite");
}

AffineFit ols_affine_fit(const Trajectory& trajectory) {
  trajectory.validate();
  const auto& x = trajectory.values;
  const int n = static_cast<int>(x.size()) - 1;
  if (n < 2)
    fail(ErrorCode::InvalidInput, "OLS needs at least 2 regression pairs, got " +
                                      std::to_string(std::max(n, 0)));

  // centred sums keep the 2x2 normal equations well conditioned
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (int j = 0; j < n; ++j) {
    mean_x += x[j];
    mean_y += x[j + 1];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double sum_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    const double dx = x[j] - mean_x;
    sxx += dx * dx;
    sxy += dx * (x[j + 1] - mean_y);
    sum_sq += x[j] * x[j];
  }
  // det(X^T X) = n * sxx
  const double det = n * sxx;
  const double scale = n * std::max(sum_sq, 1.0);
  if (!(std::abs(det) > 1e-12 * scale))
    fail(ErrorCode::RankDeficient, "covariates are (numerically) constant");

  AffineFit fit;
  fit.num_pairs = n;
  fit.a_hat = sxy / sxx;
  fit.d_hat = mean_y - fit.a_hat * mean_x;
  if (n > 2) {
    double rss = 0.0;
    for (int j = 0; j < n; ++j) {
      const double r = x[j + 1] - fit.a_hat * x[j] - fit.d_hat;
      rss += r * r;
    }
    fit.residual_sd = std::sqrt(rss / (n - 2));
  }
  return fit;
}

RecoveredParams recover_params(double a_hat, double d_hat, int spacing) {
  if (spacing < 1) fail(ErrorCode::ParameterDomain, "spacing must be >= 1");
  if (std::abs(a_hat) < 1e-9)
    fail(ErrorCode::DegenerateRatio, "a_hat is ~0; lambda_hat = |d/a| is undefined");
  RecoveredParams out;
  out.gamma_hat = std::pow(std::abs(a_hat), 1.0 / spacing);
  out.lambda_hat = std::abs(d_hat / a_hat);
  out.sign_lost = a_hat < 0.0;
  return out;
}

MultiTrajectoryFit multi_traj_estimate(std::span<const Trajectory> trajectories, int t_min,
                                       double delta) {
  const int n = static_cast<int>(trajectories.size());
  if (n < 2) fail(ErrorCode::InvalidInput, "need at least 2 trajectories");
  if (t_min < 2) fail(ErrorCode::InvalidInput, "t_min must be > 1");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::ParameterDomain, "delta must lie in (0, 1)");
  for (const auto& traj : trajectories) {
    traj.validate();
    if (static_cast<int>(traj.values.size()) < t_min + 1)
      fail(ErrorCode::InvalidInput, "every trajectory needs at least t_min + 1 values");
  }

  MultiTrajectoryFit fit;
  fit.num_trajectories = n;
  fit.below_sample_threshold = n < 64.0 * std::log(2.0 / delta);

  double sum_second = 0.0;
  for (const auto& traj : trajectories) sum_second += traj.values[1];
  fit.d_hat = sum_second / n;

  // disjoint pairs (2i-1, 2i) in 1-based numbering; the difference of two
  // trajectories cancels d and leaves y' = a y + w
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i + 1 < n; i += 2) {
    const auto& first = trajectories[i].values;
    const auto& second = trajectories[i + 1].values;
    const double y_prev = first[t_min - 1] - second[t_min - 1];
    const double y_next = first[t_min] - second[t_min];
    num += y_prev * y_next;
    den += y_prev * y_prev;
  }
  if (!(den > 0.0))
    fail(ErrorCode::DegenerateData, "differenced trajectories vanish at t_min");
  fit.a_hat = num / den;
  return fit;
}

ConfidenceRadii confidence_radii(int n, double delta, double sigma_zk, double a_hat,
                                 int t_min) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::ParameterDomain, "delta must lie in (0, 1)");
  if (n < 1) fail(ErrorCode::InvalidInput, "n must be >= 1");
  if (t_min < 0) fail(ErrorCode::InvalidInput, "t_min must be >= 0");
  if (!(sigma_zk >= 0.0)) fail(ErrorCode::ParameterDomain, "sigma_zk must be >= 0");
  double power_sum = 0.0;
  double term = 1.0;
  for (int t = 0; t <= t_min; ++t) {
    power_sum += term;
    term *= a_hat * a_hat;
  }
  ConfidenceRadii radii;
  radii.eps_d = std::sqrt(2.0 * sigma_zk * sigma_zk * std::log(2.0 / delta) / n);
  radii.eps_a = 4.0 * std::sqrt(2.0 * std::log(4.0 / delta) / (n * power_sum));
  return radii;
}

double small_ball_psi(double a, double d, double sigma_zk) {
  if (!(std::abs(a) < 1.0)) fail(ErrorCode::ParameterDomain, "|a| must be < 1");
  const double var = sigma_zk * sigma_zk;
  const double one_minus = 1.0 - a;
  const double first = var * one_minus * one_minus /
                       (16.0 * d * d * (1.0 - a * a) + one_minus * one_minus * var);
  const double second = var / (4.0 * (1.0 - a * a));
  return std::sqrt(std::min(first, second));
}

std::vector<ArmParams> EstimatedModel::planning_params() const {
  std::vector<ArmParams> params;
  params.reserve(arms.size());
  for (const auto& arm : arms) params.push_back({arm.gamma_hat, arm.lambda_hat, arm.b_hat});
  return params;
}

bool EstimatedModel::any_fit_failed() const {
  return std::any_of(arms.begin(), arms.end(), [](const auto& a) { return a.fit_failed; });
}

ArmEstimate estimate_arm(const Trajectory& trajectory, double b_hat) {
  trajectory.validate();
  ArmEstimate est;
  est.arm = trajectory.arm;
  est.b_hat = b_hat;
  est.spacing = trajectory.spacing;
  try {
    const auto fit = ols_affine_fit(trajectory);
    const auto recovered = recover_params(fit.a_hat, fit.d_hat, trajectory.spacing);
    est.a_hat = fit.a_hat;
    est.d_hat = fit.d_hat;
    est.num_pairs = fit.num_pairs;
    est.gamma_hat = std::clamp(recovered.gamma_hat, 0.0, kGammaClampMax);
    est.lambda_hat = recovered.lambda_hat;
    est.sign_lost = recovered.sign_lost;
    est.sigma_zk_hat = fit.residual_sd;
    if (fit.residual_sd && std::abs(fit.a_hat) < 1.0 && *fit.residual_sd > 0.0)
      est.psi = small_ball_psi(fit.a_hat, fit.d_hat, *fit.residual_sd);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidInput && e.code() != ErrorCode::RankDeficient &&
        e.code() != ErrorCode::DegenerateRatio)
      throw;
    est.fit_failed = true;
    est.gamma_hat = 0.0;
    est.lambda_hat = 0.0;
  }
  return est;
}

ArmEstimate estimate_arm_multi(std::span<const Trajectory> trajectories, double b_hat,
                               int t_min, double sigma_zk, double delta) {
  if (trajectories.empty()) fail(ErrorCode::InvalidInput, "no trajectories");
  const int spacing = trajectories.front().spacing;
  for (const auto& traj : trajectories)
    if (traj.spacing != spacing)
      fail(ErrorCode::InvalidInput, "trajectories must share one spacing");
  const auto fit = multi_traj_estimate(trajectories, t_min, delta);
  const auto recovered = recover_params(fit.a_hat, fit.d_hat, spacing);
  ArmEstimate est;
  est.arm = trajectories.front().arm;
  est.a_hat = fit.a_hat;
  est.d_hat = fit.d_hat;
  est.b_hat = b_hat;
  est.spacing = spacing;
  est.num_pairs = fit.num_trajectories / 2;
  est.gamma_hat = std::clamp(recovered.gamma_hat, 0.0, kGammaClampMax);
  est.lambda_hat = recovered.lambda_hat;
  est.sign_lost = recovered.sign_lost;
  est.sigma_zk_hat = sigma_zk;
  est.radii = confidence_radii(fit.num_trajectories, delta, sigma_zk, fit.a_hat, t_min);
  est.below_sample_threshold = fit.below_sample_threshold;
  return est;
}

}  // namespace rebound
