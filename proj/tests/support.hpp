#pragma once

#include <vector>

#include "oracles.hpp"
#include "rebound/core.hpp"

inline std::vector<rebound::ArmParams> to_params(const std::vector<oracle::Arm>& arms) {
  std::vector<rebound::ArmParams> out;
  for (const auto& a : arms) out.push_back({a.gamma, a.lambda, a.b});
  return out;
}

inline rebound::PullHistory to_history(std::size_t K, const std::vector<int>& actions) {
  rebound::PullHistory h(K);
  for (int a : actions) h.push(static_cast<rebound::ArmIndex>(a));
  return h;
}

inline std::vector<int> to_ints(std::span<const rebound::ArmIndex> actions) {
  return {actions.begin(), actions.end()};
}
