#include "rebound/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rebound/error.hpp"

namespace rebound {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParameterDomain: return "parameter_domain";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::RankDeficient: return "rank_deficient";
    case ErrorCode::DegenerateRatio: return "degenerate_ratio";
    case ErrorCode::DegenerateData: return "degenerate_data";
    case ErrorCode::SearchCapExceeded: return "search_cap_exceeded";
    case ErrorCode::HorizonTooShort: return "horizon_too_short";
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    fail(ErrorCode::ParameterDomain,
         "gamma must lie in [0, 1), got " + std::to_string(gamma));
}

void check_pull_sequence(std::span<const std::uint8_t> pulls) {
  if (!pulls.empty() && pulls[0] != 0)
    fail(ErrorCode::InvalidInput, "pull sequence must start with u_0 = 0");
  for (auto u : pulls)
    if (u > 1) fail(ErrorCode::InvalidInput, "pull sequence must be binary");
}

void check_arm(ArmIndex arm, std::size_t num_arms) {
  if (arm >= num_arms)
    fail(ErrorCode::IndexOutOfRange,
         "arm index " + std::to_string(arm) + " out of range for " +
             std::to_string(num_arms) + " arms");
}

}  // namespace

void ArmParams::validate() const {
  check_gamma(gamma);
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    fail(ErrorCode::ParameterDomain, "lambda must be finite and >= 0");
  if (!std::isfinite(base_reward))
    fail(ErrorCode::ParameterDomain, "base reward must be finite");
}

void validate_arms(std::span<const ArmParams> arms) {
  if (arms.empty()) fail(ErrorCode::ParameterDomain, "at least one arm is required");
  for (const auto& arm : arms) arm.validate();
}

void EnvConfig::validate() const {
  validate_arms(arms);
  if (!(sigma_z >= 0.0) || !std::isfinite(sigma_z))
    fail(ErrorCode::ParameterDomain, "sigma_z must be finite and >= 0");
}

AffineParams affine_params(const ArmParams& arm, double sigma_z, int spacing) {
  arm.validate();
  if (spacing < 1) fail(ErrorCode::ParameterDomain, "pull spacing must be >= 1");
  const double a = std::pow(arm.gamma, spacing);
  // sum_{i<m} gamma^{2i}
  double geometric = 0.0;
  double term = 1.0;
  for (int i = 0; i < spacing; ++i) {
    geometric += term;
    term *= arm.gamma * arm.gamma;
  }
  return {a, arm.lambda * a, arm.lambda * sigma_z * std::sqrt(geometric)};
}

PullHistory::PullHistory(std::size_t num_arms) : num_arms_(num_arms) {
  if (num_arms == 0) fail(ErrorCode::ParameterDomain, "at least one arm is required");
}

PullHistory::PullHistory(std::size_t num_arms, std::vector<ArmIndex> actions)
    : PullHistory(num_arms) {
  for (auto a : actions) check_arm(a, num_arms_);
  actions_ = std::move(actions);
}

void PullHistory::push(ArmIndex arm) {
  check_arm(arm, num_arms_);
  actions_.push_back(arm);
}

std::vector<std::uint8_t> PullHistory::pulls(ArmIndex arm) const {
  check_arm(arm, num_arms_);
  std::vector<std::uint8_t> u(actions_.size() + 1, 0);
  for (std::size_t t = 0; t < actions_.size(); ++t) u[t + 1] = actions_[t] == arm;
  return u;
}

PullHistory PullHistory::prefix(int steps) const {
  if (steps < 0 || steps > length())
    fail(ErrorCode::IndexOutOfRange, "history prefix beyond recorded steps");
  return PullHistory(num_arms_, {actions_.begin(), actions_.begin() + steps});
}

double satiation_expected(double gamma, std::span<const std::uint8_t> pulls) {
  check_gamma(gamma);
  check_pull_sequence(pulls);
  // s_1 = 0, s_{i+1} = gamma (s_i + u_i)
  double s = 0.0;
  for (std::size_t i = 1; i < pulls.size(); ++i) s = gamma * (s + pulls[i]);
  return s;
}

double expected_reward(const ArmParams& arm, std::span<const std::uint8_t> pulls) {
  arm.validate();
  return arm.base_reward - arm.lambda * satiation_expected(arm.gamma, pulls);
}

std::vector<double> expected_satiation_after(std::span<const ArmParams> arms,
                                             const PullHistory& history) {
  if (arms.size() != history.num_arms())
    fail(ErrorCode::InvalidInput, "arm count does not match history");
  std::vector<double> s(arms.size(), 0.0);
  for (auto pulled : history.actions())
    for (std::size_t k = 0; k < arms.size(); ++k)
      s[k] = arms[k].gamma * (s[k] + (k == pulled ? 1.0 : 0.0));
  return s;
}

double cumulative_expected_reward(std::span<const ArmParams> arms,
                                  const PullHistory& history) {
  validate_arms(arms);
  if (arms.size() != history.num_arms())
    fail(ErrorCode::InvalidInput, "arm count does not match history");
  std::vector<double> s(arms.size(), 0.0);
  double total = 0.0;
  for (auto pulled : history.actions()) {
    total += arms[pulled].base_reward - arms[pulled].lambda * s[pulled];
    for (std::size_t k = 0; k < arms.size(); ++k)
      s[k] = arms[k].gamma * (s[k] + (k == pulled ? 1.0 : 0.0));
  }
  return total;
}

MdpState MdpState::initial(std::size_t num_arms) {
  MdpState state;
  state.time = 1;
  state.influence.assign(num_arms, 0.0);
  state.steps_since_pull.assign(num_arms, 0);
  return state;
}

EnvState EnvState::initial(std::size_t num_arms) {
  return {MdpState::initial(num_arms), std::vector<double>(num_arms, 0.0)};
}

NoiseStreams::NoiseStreams(std::uint64_t seed, std::size_t num_arms, double sigma_z)
    : sigma_z_(sigma_z) {
  engines_.reserve(num_arms);
  for (std::size_t k = 0; k < num_arms; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), 0x5a71a7u};
    engines_.emplace_back(seq);
  }
  normals_.resize(num_arms);
}

double NoiseStreams::draw(ArmIndex arm) {
  check_arm(arm, engines_.size());
  return sigma_z_ * normals_[arm](engines_[arm]);
}

StepOutcome env_step(std::span<const ArmParams> arms, const EnvState& state,
                     ArmIndex arm, NoiseStreams& noise) {
  const std::size_t num_arms = arms.size();
  check_arm(arm, num_arms);
  if (state.satiation.size() != num_arms ||
      state.observed.influence.size() != num_arms ||
      state.observed.steps_since_pull.size() != num_arms)
    fail(ErrorCode::InvalidInput, "state does not match arm count");

  StepOutcome out{0.0, state};
  const auto& pulled = arms[arm];
  out.reward = pulled.base_reward - pulled.lambda * state.satiation[arm];

  auto& obs = out.next.observed;
  for (std::size_t k = 0; k < num_arms; ++k) {
    if (k == arm) {
      obs.steps_since_pull[k] = 1;
      obs.influence[k] = pulled.base_reward - out.reward;
    } else if (obs.steps_since_pull[k] != 0) {
      ++obs.steps_since_pull[k];
    }
  }
  ++obs.time;

  for (std::size_t k = 0; k < num_arms; ++k) {
    const double z = noise.draw(k);
    // satiation stays zero until the first pull has happened
    if (obs.steps_since_pull[k] == 0) continue;
    const double u = k == arm ? 1.0 : 0.0;
    out.next.satiation[k] = arms[k].gamma * (state.satiation[k] + u) + z;
  }
  return out;
}

double mdp_reward(const MdpState& state, ArmIndex arm, std::span<const ArmParams> arms) {
  check_arm(arm, arms.size());
  const auto& p = arms[arm];
  const int n = state.steps_since_pull.at(arm);
  if (n == 0) return p.base_reward;
  const double decay = std::pow(p.gamma, n);
  return p.base_reward - decay * state.influence.at(arm) - p.lambda * decay;
}

double state_bound(const EnvConfig& config, double delta, int horizon) {
  config.validate();
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorCode::ParameterDomain, "delta must lie in (0, 1)");
  if (horizon < 1) fail(ErrorCode::ParameterDomain, "horizon must be >= 1");
  double gamma_max = 0.0;
  double lambda_max = 0.0;
  for (const auto& arm : config.arms) {
    gamma_max = std::max(gamma_max, arm.gamma);
    lambda_max = std::max(lambda_max, arm.lambda);
  }
  const double k = static_cast<double>(config.num_arms());
  const double mean_part = lambda_max * gamma_max / (1.0 - gamma_max);
  const double tail = lambda_max * config.sigma_z *
                      std::sqrt(2.0 * std::log(2.0 * k * horizon / delta) /
                                (1.0 - gamma_max * gamma_max));
  return mean_part + tail;
}

Environment::Environment(EnvConfig config)
    : config_((config.validate(), std::move(config))),
      state_(EnvState::initial(config_.num_arms())),
      noise_(config_.seed, config_.num_arms(), config_.sigma_z),
      history_(config_.num_arms()) {}

double Environment::step(ArmIndex arm) {
  auto out = env_step(config_.arms, state_, arm, noise_);
  state_ = std::move(out.next);
  history_.push(arm);
  return out.reward;
}

double Environment::hidden_satiation(ArmIndex arm) const {
  check_arm(arm, num_arms());
  return state_.satiation[arm];
}

}  // namespace rebound
