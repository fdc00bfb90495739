#include "rebound/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "rebound/error.hpp"
#include "rebound/regret.hpp"
#include "rebound/sysid.hpp"

namespace rebound {

using io::Json;
using io::format_double;

SlopeFit slope_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) fail(ErrorCode::InvalidInput, "slope fit needs at least 2 points");
  std::vector<double> xs, ys;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      fail(ErrorCode::InvalidInput, "slope fit needs positive finite values");
    xs.push_back(std::log(x));
    ys.push_back(std::log(y));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::InvalidInput, "slope fit needs two distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double rss = syy - fit.slope * sxy;
  fit.r2 = syy > 0.0 ? 1.0 - std::max(rss, 0.0) / syy : 1.0;
  return fit;
}

const char* to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Trace: return "trace";
    case ExperimentKind::EstimationRate: return "estimation_rate";
    case ExperimentKind::LookaheadCompare: return "lookahead_compare";
    case ExperimentKind::EepRegret: return "eep_regret";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& text) {
  for (auto kind : {ExperimentKind::Trace, ExperimentKind::EstimationRate,
                    ExperimentKind::LookaheadCompare, ExperimentKind::EepRegret})
    if (text == to_string(kind)) return kind;
  fail(ErrorCode::InvalidInput, "unknown experiment kind '" + text + "'");
}

void ExperimentSpec::validate() const {
  env.validate();
  if (seeds < 1) fail(ErrorCode::InvalidInput, "seeds must be >= 1");
  if (threads < 1) fail(ErrorCode::InvalidInput, "threads must be >= 1");
  auto need = [](const std::vector<int>& grid, const char* name, int min_value) {
    if (grid.empty()) fail(ErrorCode::InvalidInput, std::string(name) + " must not be empty");
    for (int v : grid)
      if (v < min_value)
        fail(ErrorCode::InvalidInput,
             std::string(name) + " entries must be >= " + std::to_string(min_value));
  };
  switch (kind) {
    case ExperimentKind::Trace:
      need(horizons, "horizons", 1);
      for (auto arm : pull_schedule)
        if (arm >= env.num_arms()) fail(ErrorCode::IndexOutOfRange, "pull_schedule arm out of range");
      break;
    case ExperimentKind::EstimationRate:
      need(n_grid, "n_grid", 2);
      break;
    case ExperimentKind::LookaheadCompare:
    case ExperimentKind::EepRegret:
      need(horizons, "horizons", 1);
      need(windows, "windows", 1);
      break;
  }
  if (exploration.interval < 1) fail(ErrorCode::InvalidInput, "exploration interval must be >= 1");
}

namespace {

std::vector<int> int_list(const Json& doc, const char* key) {
  std::vector<int> out;
  if (!doc.contains(key)) return out;
  const auto& list = doc.at(key);
  if (!list.is_array()) fail(ErrorCode::InvalidInput, std::string(key) + " must be a list");
  for (const auto& item : list) {
    if (!item.is_number_integer())
      fail(ErrorCode::InvalidInput, std::string(key) + " entries must be integers");
    out.push_back(item.get<int>());
  }
  return out;
}

}  // namespace

ExperimentSpec experiment_spec_from_json(const Json& doc) {
  if (!doc.is_object()) fail(ErrorCode::InvalidInput, "experiment spec must be an object");
  if (!doc.contains("kind") || !doc.at("kind").is_string())
    fail(ErrorCode::InvalidInput, "experiment spec needs a 'kind'");
  if (!doc.contains("env")) fail(ErrorCode::InvalidInput, "experiment spec needs an 'env'");
  try {
    ExperimentSpec spec;
    spec.kind = experiment_kind_from_string(doc.at("kind").get<std::string>());
    spec.env = io::env_config_from_json(doc.at("env"));
    spec.n_grid = int_list(doc, "n_grid");
    spec.horizons = int_list(doc, "horizons");
    spec.windows = int_list(doc, "windows");
    spec.seeds = doc.value("seeds", 1);
    spec.output = doc.value("output", std::string{});
    spec.threads = doc.value("threads", 1);
    if (doc.contains("pull_schedule"))
      spec.pull_schedule = io::actions_from_json(doc.at("pull_schedule"), spec.env.num_arms());
    if (doc.contains("limits")) {
      const auto& lim = doc.at("limits");
      spec.limits.max_exact_leaves = lim.value("max_exact_leaves", spec.limits.max_exact_leaves);
      spec.limits.beam_width = lim.value("beam_width", spec.limits.beam_width);
    }
    if (doc.contains("exploration"))
      spec.exploration.interval = doc.at("exploration").value("interval", 1);
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("experiment spec: ") + e.what());
  }
}

// threads and output are left out: neither changes the results
Json experiment_spec_to_json(const ExperimentSpec& spec) {
  return {{"kind", to_string(spec.kind)},
          {"env", io::env_config_to_json(spec.env)},
          {"n_grid", spec.n_grid},
          {"horizons", spec.horizons},
          {"windows", spec.windows},
          {"seeds", spec.seeds},
          {"pull_schedule", io::actions_to_json(spec.pull_schedule)},
          {"limits",
           {{"max_exact_leaves", spec.limits.max_exact_leaves},
            {"beam_width", spec.limits.beam_width}}},
          {"exploration", {{"interval", spec.exploration.interval}}}};
}

std::uint64_t cell_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(base);
  for (std::uint64_t part : {a, b, c}) h = mix(h ^ mix(part));
  return h;
}

namespace {

struct Cell {
  int first = 0;   // index into the first grid
  int second = 0;  // index into the second grid (or 0)
  int seed = 0;    // seed index
};

struct CellOutput {
  std::string rows;
  Json data = Json::object();
};

struct Plan {
  std::string header;
  std::vector<Cell> cells;
};

Plan plan_cells(const ExperimentSpec& spec) {
  Plan plan;
  const int seeds = spec.seeds;
  switch (spec.kind) {
    case ExperimentKind::Trace:
      plan.header = "T,seed,t,arm,satiation,reward,pulled";
      for (int h = 0; h < static_cast<int>(spec.horizons.size()); ++h)
        for (int s = 0; s < seeds; ++s) plan.cells.push_back({h, 0, s});
      break;
    case ExperimentKind::EstimationRate:
      plan.header = "n,seed,arm,gamma_hat,lambda_hat,gamma_abs_err,lambda_abs_err,fit_failed";
      for (int i = 0; i < static_cast<int>(spec.n_grid.size()); ++i)
        for (int s = 0; s < seeds; ++s) plan.cells.push_back({i, 0, s});
      break;
    case ExperimentKind::LookaheadCompare:
      plan.header = "T,w,objective,optimality,gap_bound,nodes";
      for (int h = 0; h < static_cast<int>(spec.horizons.size()); ++h) {
        for (int w = 0; w < static_cast<int>(spec.windows.size()); ++w)
          plan.cells.push_back({h, w, 0});
        plan.cells.push_back({h, -1, 0});  // full horizon
      }
      break;
    case ExperimentKind::EepRegret:
      plan.header = "T,w,seed,regret,exploration_end,fit_failed";
      for (int w = 0; w < static_cast<int>(spec.windows.size()); ++w)
        for (int h = 0; h < static_cast<int>(spec.horizons.size()); ++h)
          for (int s = 0; s < seeds; ++s) plan.cells.push_back({h, w, s});
      break;
  }
  return plan;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::ostringstream out;
  io::write_csv_row(out, fields);
  return out.str();
}

CellOutput run_trace(const ExperimentSpec& spec, const Cell& cell) {
  const int horizon = spec.horizons[cell.first];
  EnvConfig config = spec.env;
  config.seed = cell_seed(spec.env.seed, 0, static_cast<std::uint64_t>(horizon), cell.seed);
  Environment env(config);
  const std::size_t num_arms = env.num_arms();
  CellOutput out;
  std::ostringstream rows;
  for (int t = 1; t <= horizon; ++t) {
    const ArmIndex pulled =
        spec.pull_schedule.empty()
            ? static_cast<ArmIndex>((t - 1) % static_cast<int>(num_arms))
            : spec.pull_schedule[(t - 1) % spec.pull_schedule.size()];
    std::vector<double> satiation(num_arms);
    for (ArmIndex k = 0; k < num_arms; ++k) satiation[k] = env.hidden_satiation(k);
    env.step(pulled);
    for (ArmIndex k = 0; k < num_arms; ++k) {
      const auto& arm = config.arms[k];
      io::write_csv_row(rows, {std::to_string(horizon), std::to_string(config.seed),
                               std::to_string(t), std::to_string(k + 1),
                               format_double(satiation[k]),
                               format_double(arm.base_reward - arm.lambda * satiation[k]),
                               k == pulled ? "1" : "0"});
    }
  }
  out.rows = rows.str();
  return out;
}

CellOutput run_estimation(const ExperimentSpec& spec, const Cell& cell) {
  const int n = spec.n_grid[cell.first];
  CellOutput out;
  std::ostringstream rows;
  Json errors = Json::array();
  for (ArmIndex k = 0; k < spec.env.num_arms(); ++k) {
    EnvConfig config;
    config.arms = {spec.env.arms[k]};
    config.sigma_z = spec.env.sigma_z;
    config.seed = cell_seed(spec.env.seed, static_cast<std::uint64_t>(n), cell.seed, k);
    Environment env(config);
    Trajectory traj;
    traj.arm = k;
    const double first = env.step(0);
    traj.values.push_back(0.0);
    for (int j = 0; j < n; ++j) traj.values.push_back(first - env.step(0));
    const auto est = estimate_arm(traj, first);
    const auto& truth = spec.env.arms[k];
    const double gamma_err = std::abs(est.gamma_hat - truth.gamma);
    const double lambda_err = std::abs(est.lambda_hat - truth.lambda);
    io::write_csv_row(rows, {std::to_string(n), std::to_string(config.seed),
                             std::to_string(k + 1), format_double(est.gamma_hat),
                             format_double(est.lambda_hat), format_double(gamma_err),
                             format_double(lambda_err), est.fit_failed ? "1" : "0"});
    errors.push_back({gamma_err, lambda_err});
  }
  out.rows = rows.str();
  out.data["errors"] = errors;
  return out;
}

CellOutput run_lookahead(const ExperimentSpec& spec, const Cell& cell) {
  const int horizon = spec.horizons[cell.first];
  const bool full = cell.second < 0;
  const int window = full ? horizon : spec.windows[cell.second];
  CellOutput out;
  if (window > horizon) {
    out.data["skipped"] = "window exceeds horizon";
    return out;
  }
  const auto& arms = spec.env.arms;
  PlanMode mode = PlanMode::Exact;
  if (!exact_search_admits(arms.size(), window, spec.limits)) {
    if (!full) {
      out.data["skipped"] = "K^w exceeds the exact-search cap";
      return out;
    }
    mode = PlanMode::Heuristic;
  }
  std::uint64_t nodes = 0;
  PullHistory history(arms.size());
  for (int t0 = 0; t0 < horizon; t0 += window) {
    PlanRequest request{arms, history, t0, std::min(t0 + window, horizon)};
    const auto plan = lookahead_plan(request, mode, spec.limits);
    nodes += plan.nodes_explored;
    for (auto a : plan.actions) history.push(a);
  }
  const double objective = cumulative_expected_reward(arms, history);
  const double bound = lookahead_gap_bound(arms, horizon, window);
  const char* optimality = mode == PlanMode::Exact ? "exact" : "heuristic";
  out.rows = csv_line({std::to_string(horizon), std::to_string(window), format_double(objective),
                       optimality, format_double(bound), std::to_string(nodes)});
  out.data = {{"objective", objective}, {"gap_bound", bound}, {"optimality", optimality}};
  return out;
}

CellOutput run_eep(const ExperimentSpec& spec, const Cell& cell) {
  const int horizon = spec.horizons[cell.first];
  const int window = spec.windows[cell.second];
  EnvConfig config = spec.env;
  config.seed = cell_seed(spec.env.seed, static_cast<std::uint64_t>(horizon),
                          static_cast<std::uint64_t>(window), cell.seed);
  CellOutput out;
  Environment env(config);
  EepConfig eep;
  eep.window = window;
  eep.horizon = horizon;
  eep.exploration = spec.exploration;
  eep.limits = spec.limits;
  const auto run = eep_run(env, eep);
  const auto report = lookahead_regret(env.history(), config.arms, window, spec.limits);
  out.rows = csv_line({std::to_string(horizon), std::to_string(window),
                       std::to_string(config.seed), format_double(report.total),
                       std::to_string(run.exploration_end),
                       run.model.any_fit_failed() ? "1" : "0"});
  out.data = {{"regret", report.total}};
  return out;
}

CellOutput run_cell(const ExperimentSpec& spec, const Cell& cell) {
  try {
    switch (spec.kind) {
      case ExperimentKind::Trace: return run_trace(spec, cell);
      case ExperimentKind::EstimationRate: return run_estimation(spec, cell);
      case ExperimentKind::LookaheadCompare: return run_lookahead(spec, cell);
      case ExperimentKind::EepRegret: return run_eep(spec, cell);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchCapExceeded && e.code() != ErrorCode::HorizonTooShort &&
        e.code() != ErrorCode::InvalidInput)
      throw;
    CellOutput out;
    out.data["skipped"] = std::string(to_string(e.code())) + ": " + e.what();
    return out;
  }
  return {};
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

Json slope_json(const std::vector<std::pair<double, double>>& points) {
  for (const auto& p : points)
    if (!(p.second > 0.0)) return nullptr;
  if (points.size() < 2) return nullptr;
  const auto fit = slope_fit(points);
  return {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
}

Json cell_coords(const ExperimentSpec& spec, const Cell& cell) {
  Json c = Json::object();
  switch (spec.kind) {
    case ExperimentKind::EstimationRate: c["n"] = spec.n_grid[cell.first]; break;
    case ExperimentKind::LookaheadCompare:
      c["T"] = spec.horizons[cell.first];
      c["w"] = cell.second < 0 ? spec.horizons[cell.first] : spec.windows[cell.second];
      break;
    case ExperimentKind::EepRegret:
      c["w"] = spec.windows[cell.second];
      [[fallthrough]];
    case ExperimentKind::Trace:
      c["T"] = spec.horizons[cell.first];
      break;
  }
  c["seed_index"] = cell.seed;
  return c;
}

Json summarize(const ExperimentSpec& spec, const Plan& plan,
               const std::vector<CellOutput>& outputs) {
  Json summary = {{"spec", experiment_spec_to_json(spec)},
                  {"kind", to_string(spec.kind)},
                  {"cells", plan.cells.size()}};
  Json skipped = Json::array();
  for (std::size_t i = 0; i < plan.cells.size(); ++i)
    if (outputs[i].data.contains("skipped"))
      skipped.push_back({{"cell", cell_coords(spec, plan.cells[i])},
                         {"reason", outputs[i].data["skipped"]}});
  summary["skipped"] = skipped;

  if (spec.kind == ExperimentKind::EstimationRate) {
    const std::size_t num_arms = spec.env.num_arms();
    Json arms = Json::array();
    for (std::size_t k = 0; k < num_arms; ++k) {
      Json per_n = Json::array();
      std::vector<std::pair<double, double>> gamma_points, lambda_points;
      for (std::size_t g = 0; g < spec.n_grid.size(); ++g) {
        std::vector<double> ge, le;
        for (std::size_t i = 0; i < plan.cells.size(); ++i) {
          if (plan.cells[i].first != static_cast<int>(g) || !outputs[i].data.contains("errors"))
            continue;
          ge.push_back(outputs[i].data["errors"][k][0].get<double>());
          le.push_back(outputs[i].data["errors"][k][1].get<double>());
        }
        if (ge.empty()) continue;
        const double n = spec.n_grid[g];
        const double mg = median(ge), ml = median(le);
        per_n.push_back({{"n", spec.n_grid[g]}, {"median_gamma_abs_err", mg},
                         {"median_lambda_abs_err", ml}});
        gamma_points.emplace_back(n, mg);
        lambda_points.emplace_back(n, ml);
      }
      arms.push_back({{"arm", k + 1},
                      {"per_n", per_n},
                      {"gamma_slope", slope_json(gamma_points)},
                      {"lambda_slope", slope_json(lambda_points)}});
    }
    summary["arms"] = arms;
  } else if (spec.kind == ExperimentKind::EepRegret) {
    Json windows = Json::array();
    for (std::size_t w = 0; w < spec.windows.size(); ++w) {
      Json per_t = Json::array();
      std::vector<std::pair<double, double>> points;
      for (std::size_t h = 0; h < spec.horizons.size(); ++h) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < plan.cells.size(); ++i) {
          const auto& c = plan.cells[i];
          if (c.first != static_cast<int>(h) || c.second != static_cast<int>(w) ||
              !outputs[i].data.contains("regret"))
            continue;
          sum += outputs[i].data["regret"].get<double>();
          ++count;
        }
        if (count == 0) continue;
        per_t.push_back({{"T", spec.horizons[h]}, {"mean_regret", sum / count}, {"runs", count}});
        points.emplace_back(spec.horizons[h], sum / count);
      }
      windows.push_back({{"w", spec.windows[w]}, {"per_T", per_t}, {"fit", slope_json(points)}});
    }
    summary["windows"] = windows;
  } else if (spec.kind == ExperimentKind::LookaheadCompare) {
    Json horizons = Json::array();
    for (std::size_t h = 0; h < spec.horizons.size(); ++h) {
      Json full = nullptr;
      double best_upper = INFINITY;
      for (std::size_t i = 0; i < plan.cells.size(); ++i) {
        const auto& c = plan.cells[i];
        const auto& data = outputs[i].data;
        if (c.first != static_cast<int>(h) || !data.contains("objective")) continue;
        if (c.second < 0) full = data;
        // value of a window plan plus its gap bound caps the full-horizon optimum
        if (data["optimality"] == "exact")
          best_upper = std::min(best_upper, data["objective"].get<double>() +
                                                data["gap_bound"].get<double>());
      }
      Json entry = {{"T", spec.horizons[h]}, {"full_horizon", full}};
      entry["optimum_upper_bound"] = std::isfinite(best_upper) ? Json(best_upper) : Json(nullptr);
      horizons.push_back(entry);
    }
    summary["horizons"] = horizons;
  }
  return summary;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Json spec_json = experiment_spec_to_json(spec);
  const std::string summary_path = spec.output + ".summary.json";
  const std::string cells_path = spec.output + ".cells.jsonl";
  const bool persist = !spec.output.empty();

  if (persist && std::filesystem::exists(summary_path) && std::filesystem::exists(spec.output)) {
    Json previous;
    try {
      previous = Json::parse(read_file(summary_path));
    } catch (const nlohmann::json::exception&) {
      previous = nullptr;
    }
    if (previous.is_object() && previous.value("spec", Json()) == spec_json)
      return {read_file(spec.output), previous, true};
  }

  const Plan plan = plan_cells(spec);
  std::vector<CellOutput> outputs(plan.cells.size());
  std::vector<bool> done(plan.cells.size(), false);

  std::ofstream checkpoint;
  if (persist) {
    const auto parent = std::filesystem::path(spec.output).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    bool resume = false;
    if (std::filesystem::exists(cells_path)) {
      std::ifstream in(cells_path);
      std::string line;
      if (std::getline(in, line)) {
        try {
          resume = Json::parse(line).value("spec", Json()) == spec_json;
        } catch (const nlohmann::json::exception&) {
        }
      }
      while (resume && std::getline(in, line)) {
        try {
          const auto entry = Json::parse(line);
          const auto index = entry.at("cell").get<std::size_t>();
          if (index >= outputs.size()) continue;
          outputs[index].rows = entry.at("rows").get<std::string>();
          outputs[index].data = entry.at("data");
          done[index] = true;
        } catch (const nlohmann::json::exception&) {
          break;  // a torn final line from an interrupted run
        }
      }
    }
    if (resume) {
      // rewrite without a possibly torn tail
      std::ofstream rewrite(cells_path, std::ios::trunc);
      rewrite << Json{{"spec", spec_json}}.dump() << '\n';
      for (std::size_t i = 0; i < outputs.size(); ++i)
        if (done[i])
          rewrite << Json{{"cell", i}, {"rows", outputs[i].rows}, {"data", outputs[i].data}}.dump()
                  << '\n';
    } else {
      std::ofstream fresh(cells_path, std::ios::trunc);
      if (!fresh) fail(ErrorCode::Io, "cannot write " + cells_path);
      fresh << Json{{"spec", spec_json}}.dump() << '\n';
    }
    checkpoint.open(cells_path, std::ios::app);
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < plan.cells.size(); ++i)
    if (!done[i]) pending.push_back(i);

  std::atomic<std::size_t> next{0};
  std::mutex collector;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      {
        std::lock_guard lock(collector);
        if (failure) return;
      }
      const std::size_t index = pending[slot];
      try {
        auto result = run_cell(spec, plan.cells[index]);
        std::lock_guard lock(collector);
        if (checkpoint.is_open()) {
          checkpoint << Json{{"cell", index}, {"rows", result.rows}, {"data", result.data}}.dump()
                     << '\n';
          checkpoint.flush();
        }
        outputs[index] = std::move(result);
      } catch (...) {
        std::lock_guard lock(collector);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int workers = std::max(1, std::min<int>(spec.threads, static_cast<int>(pending.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.csv = plan.header + "\n";
  for (const auto& out : outputs) result.csv += out.rows;
  result.summary = summarize(spec, plan, outputs);
  if (persist) {
    io::write_text_file(spec.output, result.csv);
    io::write_text_file(summary_path, result.summary.dump(2) + "\n");
  }
  return result;
}

}  // namespace rebound
