#include "rebound/planning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rebound/error.hpp"

namespace rebound {

namespace {

// -1 if a < b, 0 if equal, 1 if a > b over the first n positions
int lex_compare(std::span<const ArmIndex> a, std::span<const ArmIndex> b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

void advance(std::span<const ArmParams> arms, std::vector<double>& satiation,
             ArmIndex pulled) {
  for (std::size_t k = 0; k < arms.size(); ++k)
    satiation[k] = arms[k].gamma * (satiation[k] + (k == pulled ? 1.0 : 0.0));
}

double window_value(std::span<const ArmParams> arms, std::vector<double> satiation,
                    std::span<const ArmIndex> actions) {
  double total = 0.0;
  for (auto a : actions) {
    total += arms[a].base_reward - arms[a].lambda * satiation[a];
    advance(arms, satiation, a);
  }
  return total;
}

class BranchAndBound {
 public:
  BranchAndBound(std::span<const ArmParams> arms, std::vector<double> satiation,
                 int window)
      : arms_(arms),
        num_arms_(arms.size()),
        window_(window),
        satiation_(window + 1, std::vector<double>(arms.size())),
        prefix_(window),
        order_(window, std::vector<ArmIndex>(arms.size())),
        rewards_(window, std::vector<double>(arms.size())) {
    satiation_[0] = std::move(satiation);
    decay_.assign(num_arms_, std::vector<double>(window + 1, 1.0));
    for (std::size_t k = 0; k < num_arms_; ++k)
      for (int j = 1; j <= window; ++j) decay_[k][j] = decay_[k][j - 1] * arms[k].gamma;
  }

  PlanResult solve() {
    search(0, 0.0);
    return {best_, best_value_, Optimality::Exact, nodes_};
  }

 private:
  // Each arm's satiation is nonnegative and decays by at least gamma per step
  // while unpulled, so b_k - lambda_k gamma_k^j s_k caps its reward j steps on.
  double upper_bound(int depth) const {
    const auto& s = satiation_[depth];
    double bound = 0.0;
    for (int j = 0; j < window_ - depth; ++j) {
      double step_best = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < num_arms_; ++k)
        step_best = std::max(step_best,
                             arms_[k].base_reward - arms_[k].lambda * decay_[k][j] * s[k]);
      bound += step_best;
    }
    return bound;
  }

  void search(int depth, double value) {
    ++nodes_;
    if (depth == window_) {
      const bool better = !have_best_ || value > best_value_ + kCompareTol;
      const bool tie_smaller = have_best_ && value >= best_value_ - kCompareTol &&
                               lex_compare(prefix_, best_, window_) < 0;
      if (better || tie_smaller) {
        best_ = prefix_;
        best_value_ = value;
        have_best_ = true;
      }
      return;
    }
    if (have_best_) {
      const double optimistic = value + upper_bound(depth);
      if (optimistic < best_value_ - kCompareTol) return;
      // a tie at best cannot displace a lexicographically smaller incumbent
      if (optimistic <= best_value_ + kCompareTol &&
          lex_compare(prefix_, best_, depth) > 0)
        return;
    }

    const auto& s = satiation_[depth];
    auto& level_rewards = rewards_[depth];
    for (std::size_t k = 0; k < num_arms_; ++k)
      level_rewards[k] = arms_[k].base_reward - arms_[k].lambda * s[k];
    auto& order = order_[depth];
    std::iota(order.begin(), order.end(), ArmIndex{0});
    std::stable_sort(order.begin(), order.end(), [&](ArmIndex a, ArmIndex b) {
      return level_rewards[a] > level_rewards[b] + kCompareTol;
    });
    for (auto k : order) {
      prefix_[depth] = k;
      auto& next = satiation_[depth + 1];
      next = s;
      advance(arms_, next, k);
      search(depth + 1, value + level_rewards[k]);
    }
  }

  std::span<const ArmParams> arms_;
  std::size_t num_arms_;
  int window_;
  std::vector<std::vector<double>> satiation_;  // per depth
  std::vector<std::vector<double>> decay_;      // gamma_k^j
  std::vector<ArmIndex> prefix_;
  std::vector<std::vector<ArmIndex>> order_;
  std::vector<std::vector<double>> rewards_;  // immediate rewards per depth
  std::vector<ArmIndex> best_;
  double best_value_ = -std::numeric_limits<double>::infinity();
  bool have_best_ = false;
  std::uint64_t nodes_ = 0;
};

struct BeamEntry {
  std::vector<ArmIndex> actions;
  std::vector<double> satiation;
  double value = 0.0;
};

PlanResult beam_search(std::span<const ArmParams> arms, std::vector<double> satiation,
                       int window, std::size_t width) {
  std::vector<BeamEntry> beam{{{}, std::move(satiation), 0.0}};
  std::uint64_t nodes = 1;
  for (int depth = 0; depth < window; ++depth) {
    std::vector<BeamEntry> next;
    next.reserve(beam.size() * arms.size());
    for (const auto& entry : beam) {
      for (std::size_t k = 0; k < arms.size(); ++k) {
        BeamEntry child{entry.actions, entry.satiation, entry.value};
        child.value += arms[k].base_reward - arms[k].lambda * entry.satiation[k];
        child.actions.push_back(k);
        advance(arms, child.satiation, k);
        next.push_back(std::move(child));
        ++nodes;
      }
    }
    std::stable_sort(next.begin(), next.end(), [](const BeamEntry& a, const BeamEntry& b) {
      if (a.value > b.value + kCompareTol) return true;
      if (b.value > a.value + kCompareTol) return false;
      return a.actions < b.actions;
    });
    if (next.size() > width) next.resize(width);
    beam = std::move(next);
  }
  return {beam.front().actions, beam.front().value, Optimality::Heuristic, nodes};
}

}  // namespace

ArmIndex greedy_step(std::span<const ArmParams> arms, const PullHistory& history) {
  validate_arms(arms);
  const auto s = expected_satiation_after(arms, history);
  ArmIndex best = 0;
  double best_reward = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < arms.size(); ++k) {
    const double mu = arms[k].base_reward - arms[k].lambda * s[k];
    if (mu > best_reward + kCompareTol) {
      best = k;
      best_reward = mu;
    }
  }
  return best;
}

bool exact_search_admits(std::size_t num_arms, int window, const PlanLimits& limits) {
  std::uint64_t leaves = 1;
  for (int i = 0; i < window; ++i) {
    if (leaves > limits.max_exact_leaves / num_arms) return false;
    leaves *= num_arms;
  }
  return leaves <= limits.max_exact_leaves;
}

PlanResult lookahead_plan(const PlanRequest& request, PlanMode mode,
                          const PlanLimits& limits) {
  validate_arms(request.arms);
  if (request.arms.size() != request.history.num_arms())
    fail(ErrorCode::InvalidInput, "arm count does not match history");
  const int window = request.t_end - request.t_start;
  if (window <= 0) fail(ErrorCode::InvalidInput, "planning window must be positive");
  if (request.t_start < 0 || request.history.length() != request.t_start)
    fail(ErrorCode::InvalidInput,
         "history must be complete through t_start = " + std::to_string(request.t_start));

  auto satiation = expected_satiation_after(request.arms, request.history);
  PlanResult result;
  if (mode == PlanMode::Exact) {
    if (!exact_search_admits(request.arms.size(), window, limits))
      fail(ErrorCode::SearchCapExceeded,
           "K^w exceeds the exact-search cap of " + std::to_string(limits.max_exact_leaves));
    result = BranchAndBound(request.arms, satiation, window).solve();
  } else {
    if (limits.beam_width == 0) fail(ErrorCode::InvalidInput, "beam width must be positive");
    result = beam_search(request.arms, satiation, window, limits.beam_width);
  }
  result.objective = window_value(request.arms, std::move(satiation), result.actions);
  return result;
}

PullHistory lookahead_policy(std::span<const ArmParams> arms, int horizon, int window,
                             PlanMode mode, const PlanLimits& limits) {
  if (horizon < 1) fail(ErrorCode::InvalidInput, "horizon must be >= 1");
  if (window < 1 || window > horizon)
    fail(ErrorCode::InvalidInput, "window must lie in [1, T]");
  PlanRequest request{{arms.begin(), arms.end()}, PullHistory(arms.size()), 0, 0};
  while (request.t_start < horizon) {
    request.t_end = std::min(request.t_start + window, horizon);
    const auto plan = lookahead_plan(request, mode, limits);
    for (auto a : plan.actions) request.history.push(a);
    request.t_start = request.t_end;
  }
  return std::move(request.history);
}

PullHistory greedy_policy(std::span<const ArmParams> arms, int horizon) {
  if (horizon < 0) fail(ErrorCode::InvalidInput, "horizon must be >= 0");
  PullHistory history(arms.size());
  for (int t = 0; t < horizon; ++t) history.push(greedy_step(arms, history));
  return history;
}

PullMatrix::PullMatrix(std::size_t num_arms, int horizon)
    : num_arms_(num_arms), horizon_(horizon) {
  if (num_arms == 0 || horizon < 0)
    fail(ErrorCode::InvalidInput, "pull matrix needs K >= 1 and T >= 0");
  cells_.assign(num_arms * static_cast<std::size_t>(horizon + 1), 0);
}

PullMatrix PullMatrix::from_history(const PullHistory& history) {
  PullMatrix m(history.num_arms(), history.length());
  const auto actions = history.actions();
  for (int t = 1; t <= history.length(); ++t) m.set(actions[t - 1], t, 1);
  return m;
}

std::uint8_t PullMatrix::operator()(ArmIndex arm, int t) const {
  if (arm >= num_arms_ || t < 0 || t > horizon_)
    fail(ErrorCode::IndexOutOfRange, "pull matrix index out of range");
  return cells_[arm * static_cast<std::size_t>(horizon_ + 1) + t];
}

void PullMatrix::set(ArmIndex arm, int t, std::uint8_t value) {
  if (arm >= num_arms_ || t < 0 || t > horizon_)
    fail(ErrorCode::IndexOutOfRange, "pull matrix index out of range");
  cells_[arm * static_cast<std::size_t>(horizon_ + 1) + t] = value;
}

void PullMatrix::check_feasible() const {
  for (std::size_t k = 0; k < num_arms_; ++k) {
    if ((*this)(k, 0) != 0) fail(ErrorCode::Infeasible, "u_{k,0} must be 0");
    for (int t = 0; t <= horizon_; ++t)
      if ((*this)(k, t) > 1) fail(ErrorCode::Infeasible, "pull matrix must be binary");
  }
  for (int t = 1; t <= horizon_; ++t) {
    int pulled = 0;
    for (std::size_t k = 0; k < num_arms_; ++k) pulled += (*this)(k, t);
    if (pulled != 1)
      fail(ErrorCode::Infeasible,
           "step " + std::to_string(t) + " must pull exactly one arm");
  }
}

ProductTable::ProductTable(std::size_t num_arms, int horizon)
    : num_arms_(num_arms), horizon_(horizon) {
  if (num_arms == 0 || horizon < 0)
    fail(ErrorCode::InvalidInput, "product table needs K >= 1 and T >= 0");
  // t in [1,T] has t entries: T(T+1)/2 per arm
  const auto per_arm = static_cast<std::size_t>(horizon) * (horizon + 1) / 2;
  cells_.assign(num_arms * per_arm, 0);
}

std::size_t ProductTable::offset(ArmIndex arm, int t, int i) const {
  if (arm >= num_arms_ || t < 1 || t > horizon_ || i < 0 || i >= t)
    fail(ErrorCode::IndexOutOfRange, "product table index out of range");
  const auto per_arm = static_cast<std::size_t>(horizon_) * (horizon_ + 1) / 2;
  const auto row = static_cast<std::size_t>(t - 1) * t / 2;
  return arm * per_arm + row + i;
}

std::uint8_t ProductTable::operator()(ArmIndex arm, int t, int i) const {
  return cells_[offset(arm, t, i)];
}

void ProductTable::set(ArmIndex arm, int t, int i, std::uint8_t value) {
  cells_[offset(arm, t, i)] = value;
}

ProductTable ProductTable::exact(const PullMatrix& pulls) {
  ProductTable z(pulls.num_arms(), pulls.horizon());
  for (std::size_t k = 0; k < pulls.num_arms(); ++k)
    for (int t = 1; t <= pulls.horizon(); ++t)
      for (int i = 0; i < t; ++i) z.set(k, t, i, pulls(k, i) & pulls(k, t));
  return z;
}

double objective_bilinear(std::span<const ArmParams> arms, const PullMatrix& pulls) {
  validate_arms(arms);
  if (arms.size() != pulls.num_arms())
    fail(ErrorCode::InvalidInput, "arm count does not match assignment");
  pulls.check_feasible();
  double total = 0.0;
  for (std::size_t k = 0; k < arms.size(); ++k) {
    const auto& arm = arms[k];
    for (int t = 1; t <= pulls.horizon(); ++t) {
      if (!pulls(k, t)) continue;
      double satiation = 0.0;
      for (int i = 0; i < t; ++i)
        if (pulls(k, i)) satiation += std::pow(arm.gamma, t - i);
      total += arm.base_reward - arm.lambda * satiation;
    }
  }
  return total;
}

double objective_linearized(std::span<const ArmParams> arms, const PullMatrix& pulls,
                            const ProductTable& products) {
  validate_arms(arms);
  if (arms.size() != pulls.num_arms() || products.num_arms() != pulls.num_arms() ||
      products.horizon() != pulls.horizon())
    fail(ErrorCode::InvalidInput, "dimension mismatch between arms, u and z");
  pulls.check_feasible();
  double total = 0.0;
  for (std::size_t k = 0; k < arms.size(); ++k) {
    const auto& arm = arms[k];
    for (int t = 1; t <= pulls.horizon(); ++t) {
      const int ut = pulls(k, t);
      total += arm.base_reward * ut;
      for (int i = 0; i < t; ++i) {
        const int ui = pulls(k, i);
        const int z = products(k, t, i);
        if (z > 1 || z > ui || z > ut || ui + ut - 1 > z)
          fail(ErrorCode::Infeasible, "z_{k,t,i} violates the product constraints");
        total -= arm.lambda * std::pow(arm.gamma, t - i) * z;
      }
    }
  }
  return total;
}

double lookahead_gap_bound(std::span<const ArmParams> arms, int horizon, int window) {
  validate_arms(arms);
  if (horizon < 1 || window < 1 || window > horizon)
    fail(ErrorCode::InvalidInput, "window must lie in [1, T]");
  double gamma_max = 0.0;
  double lambda_max = 0.0;
  for (const auto& arm : arms) {
    gamma_max = std::max(gamma_max, arm.gamma);
    lambda_max = std::max(lambda_max, arm.lambda);
  }
  const int episodes = (horizon + window - 1) / window;
  const double one_minus = 1.0 - gamma_max;
  return lambda_max * gamma_max * (1.0 - std::pow(gamma_max, horizon - window)) /
         (one_minus * one_minus) * episodes;
}

Partition max_kcut_partition(int num_parts, int horizon) {
  if (num_parts < 1 || horizon < 1)
    fail(ErrorCode::InvalidInput, "Max K-Cut needs K >= 1 and T >= 1");
  Partition parts(num_parts);
  for (int t = 1; t <= horizon; ++t) parts[(t - 1) % num_parts].push_back(t);
  return parts;
}

double cut_weight(const Partition& partition, double lambda, double gamma) {
  std::vector<std::pair<int, std::size_t>> labelled;
  for (std::size_t p = 0; p < partition.size(); ++p)
    for (int t : partition[p]) labelled.emplace_back(t, p);
  double weight = 0.0;
  for (std::size_t a = 0; a < labelled.size(); ++a)
    for (std::size_t b = a + 1; b < labelled.size(); ++b)
      if (labelled[a].second != labelled[b].second)
        weight += lambda * std::pow(gamma, std::abs(labelled[a].first - labelled[b].first));
  return weight;
}

double total_edge_weight(int horizon, double lambda, double gamma) {
  double weight = 0.0;
  for (int t = 2; t <= horizon; ++t)
    for (int i = 1; i < t; ++i) weight += lambda * std::pow(gamma, t - i);
  return weight;
}

}  // namespace rebound
