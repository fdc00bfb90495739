#pragma once

// Experiment grids over seeded environments: satiation traces, estimation
// error sweeps, lookahead comparisons and EEP regret scaling. Cells run on a
// worker pool; output order depends only on the spec.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rebound/core.hpp"
#include "rebound/eep.hpp"
#include "rebound/io.hpp"
#include "rebound/planning.hpp"

namespace rebound {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (log x, log y).
SlopeFit slope_fit(std::span<const std::pair<double, double>> points);

enum class ExperimentKind { Trace, EstimationRate, LookaheadCompare, EepRegret };

const char* to_string(ExperimentKind kind) noexcept;
ExperimentKind experiment_kind_from_string(const std::string& text);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Trace;
  EnvConfig env;
  std::vector<int> n_grid;    // estimation_rate: regression pairs per arm
  std::vector<int> horizons;  // trace, lookahead_compare, eep_regret
  std::vector<int> windows;   // lookahead_compare, eep_regret
  int seeds = 1;
  std::string output;         // CSV path; summary goes to <output>.summary.json
  std::vector<ArmIndex> pull_schedule;  // trace only; cycled if shorter than T
  int threads = 1;
  PlanLimits limits;
  ExplorationMode exploration;

  void validate() const;
};

ExperimentSpec experiment_spec_from_json(const io::Json& doc);
io::Json experiment_spec_to_json(const ExperimentSpec& spec);

/// Seed of one cell, derived from the base seed and the cell coordinates.
std::uint64_t cell_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c);

struct ExperimentResult {
  std::string csv;
  io::Json summary;
  bool reused = false;  // a finished run with the same spec was found
};

/// Runs every cell, then writes the CSV and summary when spec.output is set.
/// Finished cells are appended to <output>.cells.jsonl and skipped on rerun.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace rebound
