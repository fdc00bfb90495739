#pragma once

// Reference computations for tests. Everything here works from the raw
// formulas with plain loops and std::pow so that it shares no code path with
// the library.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

struct Arm {
  double gamma, lambda, b;
};

// Expected reward of arm k at 1-based step t, given the actions taken at steps
// 1..t-1 (zero-based arm ids in actions[0..t-2]).
inline double reward_at(const std::vector<Arm>& arms, const std::vector<int>& actions, int k,
                        int t) {
  double s = 0.0;
  for (int i = 1; i <= t - 1; ++i)
    if (actions[i - 1] == k) s += std::pow(arms[k].gamma, t - i);
  return arms[k].b - arms[k].lambda * s;
}

// Sum of expected rewards over steps from+1..actions.size().
inline double value(const std::vector<Arm>& arms, const std::vector<int>& actions, int from = 0) {
  double total = 0.0;
  for (int t = from + 1; t <= static_cast<int>(actions.size()); ++t)
    total += reward_at(arms, actions, actions[t - 1], t);
  return total;
}

struct Best {
  double value = -INFINITY;
  std::vector<int> actions;  // window part only, lexicographically smallest optimum
};

// Exhaustive search over all K^w continuations of `history`.
inline Best best_window(const std::vector<Arm>& arms, const std::vector<int>& history, int w) {
  const int K = static_cast<int>(arms.size());
  std::vector<int> window(w, 0);
  Best best;
  for (;;) {
    std::vector<int> full = history;
    full.insert(full.end(), window.begin(), window.end());
    const double v = value(arms, full, static_cast<int>(history.size()));
    // odometer order is lexicographic, so only strictly better values replace
    if (v > best.value + 1e-12) {
      best.value = v;
      best.actions = window;
    }
    int pos = w - 1;
    while (pos >= 0 && ++window[pos] == K) window[pos--] = 0;
    if (pos < 0) break;
  }
  return best;
}

// w-lookahead policy played from scratch, each window solved exhaustively.
inline std::vector<int> lookahead_actions(const std::vector<Arm>& arms, int T, int w) {
  std::vector<int> actions;
  while (static_cast<int>(actions.size()) < T) {
    const int len = std::min(w, T - static_cast<int>(actions.size()));
    const auto best = best_window(arms, actions, len);
    actions.insert(actions.end(), best.actions.begin(), best.actions.end());
  }
  return actions;
}

inline double cut_weight_of(const std::vector<int>& part_of, double lambda, double gamma) {
  double w = 0.0;
  const int T = static_cast<int>(part_of.size());
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j)
      if (part_of[i] != part_of[j]) w += lambda * std::pow(gamma, j - i);
  return w;
}

// Maximum K-cut weight over all K^T labelings of steps 1..T.
inline double max_cut(int K, int T, double lambda, double gamma) {
  std::vector<int> label(T, 0);
  double best = 0.0;
  for (;;) {
    best = std::max(best, cut_weight_of(label, lambda, gamma));
    int pos = T - 1;
    while (pos >= 0 && ++label[pos] == K) label[pos--] = 0;
    if (pos < 0) break;
  }
  return best;
}

inline std::vector<Arm> random_arms(std::mt19937_64& rng, int K) {
  std::uniform_real_distribution<double> g(0.0, 0.95), l(0.0, 3.0), b(0.0, 5.0);
  std::vector<Arm> arms;
  for (int k = 0; k < K; ++k) arms.push_back({g(rng), l(rng), b(rng)});
  return arms;
}

inline std::vector<int> random_actions(std::mt19937_64& rng, int K, int T) {
  std::uniform_int_distribution<int> pick(0, K - 1);
  std::vector<int> a(T);
  for (auto& x : a) x = pick(rng);
  return a;
}

}  // namespace oracle
