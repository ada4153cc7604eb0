// Experiment harness: exact solves, step sweeps, learning cells, and the
// two-dealer game, orchestrated from a single JSON config.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mq/config.hpp"
#include "mq/dp.hpp"
#include "mq/env.hpp"
#include "mq/errors.hpp"
#include "mq/game.hpp"
#include "mq/game_env.hpp"
#include "mq/nash.hpp"
#include "mq/qlearn.hpp"
#include "mq/report.hpp"
#include "mq/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string format;
  bool plot = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

mq::ExperimentConfig load_effective_config(const CommonOpts& opts) {
  mq::ExperimentConfig cfg = mq::load_config_file(opts.config_path);
  if (opts.seed_set) cfg.master_seed = opts.seed;
  if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;
  if (!opts.format.empty()) cfg.output.formats = {opts.format};
  if (opts.plot) cfg.output.plots = true;
  return cfg;
}

// Collects artifacts and manifest rows; files land on disk as soon as their
// contents are complete, the manifest last.
class RunWriter {
 public:
  RunWriter(const mq::ExperimentConfig& cfg, std::string command)
      : root_(cfg.output.directory), formats_(cfg.output.formats) {
    manifest_.command = std::move(command);
    manifest_.master_seed = cfg.master_seed;
    manifest_.config_snapshot = mq::config_to_json(cfg);
    manifest_.config_checksum =
        mq::to_hex(mq::fnv1a64(manifest_.config_snapshot));
    manifest_.started_at = mq::iso8601_utc_now();
    fs::create_directories(root_);
  }

  void set_config_path(const std::string& path) {
    manifest_.config_path = path;
  }

  bool wants(const std::string& format) const {
    for (const auto& f : formats_) {
      if (f == format) return true;
    }
    return false;
  }

  void add(const std::string& rel_path, const std::string& content) {
    const fs::path full = root_ / rel_path;
    std::ofstream out(full, std::ios::binary);
    if (!out) throw mq::solver_error("cannot write artifact: " + full.string(), 0.0);
    out << content;
    out.close();
    manifest_.artifacts.push_back(
        {rel_path, mq::to_hex(mq::fnv1a64(content)), content.size()});
  }

  // Emits the csv/json pair of one logical artifact under the selected
  // formats.
  void add_table(const std::string& stem, const std::string& csv,
                 const std::string& json) {
    if (wants("csv")) add(stem + ".csv", csv);
    if (wants("json")) add(stem + ".json", json);
  }

  void record_cell(const std::string& name, std::uint64_t seed,
                   const std::string& status, const std::string& message,
                   double seconds) {
    manifest_.cells.push_back({name, status, message, seed, seconds});
    if (status != "ok") failed_ = true;
  }

  bool any_failed() const { return failed_; }

  void finish() {
    manifest_.finished_at = mq::iso8601_utc_now();
    const std::string text = mq::manifest_json(manifest_);
    std::ofstream out(root_ / "manifest.json", std::ios::binary);
    out << text;
  }

 private:
  fs::path root_;
  std::vector<std::string> formats_;
  mq::RunManifest manifest_;
  bool failed_ = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Runs fn(i) for i in [0, n) on up to jobs worker threads. Exceptions are
// caught inside fn; results land in pre-sized slots, so output order is
// independent of scheduling.
void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const int n_workers = static_cast<int>(std::min<std::size_t>(jobs, n));
  for (int w = 0; w < n_workers; ++w) {
    workers.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : workers) t.join();
}

int run_solve(const mq::ExperimentConfig& cfg, const std::string& config_path,
              const std::string& command, double dt) {
  RunWriter writer(cfg, command);
  writer.set_config_path(config_path);
  const auto t0 = std::chrono::steady_clock::now();

  const mq::DiscreteModel model = mq::build_discrete_model(cfg.model, dt);
  mq::SolveResult res = mq::value_iteration(model, cfg.solver.tolerance,
                                            cfg.solver.max_iterations);
  const double hjb = mq::hjb_residual(cfg.model, res.v);

  mq::SweepReport report;
  report.rows.push_back({dt, std::move(res), 0.0, true, hjb});
  report.reference_index = 0;
  writer.add_table("solve", mq::sweep_csv(cfg.model, report),
                   mq::sweep_json(cfg.model, report));
  writer.record_cell("solve dt=" + mq::fmt_double(dt), cfg.master_seed, "ok",
                     "", seconds_since(t0));
  writer.finish();
  return 0;
}

int run_sweep(const mq::ExperimentConfig& cfg, const std::string& config_path,
              const std::string& command, int jobs,
              const std::vector<std::uint64_t>& seed_override) {
  RunWriter writer(cfg, command);
  writer.set_config_path(config_path);
  const std::vector<std::uint64_t>& seeds =
      seed_override.empty() ? cfg.complexity.seeds : seed_override;
  const auto& grid = cfg.grid.values;
  const int n_dt = static_cast<int>(grid.size());

  // Exact solves first; they are the reference for every learning cell.
  const auto t_dp = std::chrono::steady_clock::now();
  mq::SweepReport report;
  try {
    report = mq::delta_sweep(cfg.model, grid, cfg.solver.tolerance);
  } catch (const std::exception& e) {
    writer.record_cell("dp_sweep", cfg.master_seed, "failed", e.what(),
                       seconds_since(t_dp));
    writer.finish();
    std::cerr << "sweep: exact solve failed: " << e.what() << "\n";
    return 1;
  }
  writer.record_cell("dp_sweep", cfg.master_seed, "ok", "",
                     seconds_since(t_dp));
  writer.add_table("sweep", mq::sweep_csv(cfg.model, report),
                   mq::sweep_json(cfg.model, report));

  // Learning cells: one curve run per dt (first listed seed) and one
  // complexity run per (dt, seed).
  std::vector<mq::DiscreteModel> models;
  models.reserve(n_dt);
  for (int k = 0; k < n_dt; ++k) {
    models.push_back(mq::build_discrete_model(cfg.model, grid[k]));
  }

  struct CurveCell {
    mq::LearningCurve curve;
    std::uint64_t seed = 0;
    std::string error;
    double seconds = 0.0;
  };
  struct ComplexityCell {
    mq::ComplexityRow row;
    std::uint64_t seed = 0;
    std::string error;
    double seconds = 0.0;
  };
  std::vector<CurveCell> curve_cells(n_dt);
  const std::size_t n_seeds = seeds.size();
  std::vector<ComplexityCell> cx_cells(n_dt * n_seeds);

  const std::size_t total = curve_cells.size() + cx_cells.size();
  parallel_for(jobs, total, [&](std::size_t task) {
    if (task < curve_cells.size()) {
      const int k = static_cast<int>(task);
      CurveCell& cell = curve_cells[k];
      cell.seed = mq::derive_cell_seed(cfg.master_seed,
                                       cfg.experiment + "/curves", k, seeds[0]);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const auto& row = report.rows[k];
        const auto result =
            mq::run_qlearning(models[k], cfg.qlearn_for(k + 1), cell.seed,
                              &row.solution.v, &row.solution.policy);
        cell.curve = result.curve;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cell.seconds = seconds_since(t0);
      return;
    }
    const std::size_t idx = task - curve_cells.size();
    const int k = static_cast<int>(idx / n_seeds);
    const std::size_t si = idx % n_seeds;
    ComplexityCell& cell = cx_cells[idx];
    cell.seed = mq::derive_cell_seed(
        cfg.master_seed, cfg.experiment + "/complexity", k, seeds[si]);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto res = mq::measure_sample_complexity(
          models[k], cfg.qlearn_for(k + 1), cell.seed,
          report.rows[k].solution.v, cfg.complexity.threshold);
      cell.row = {grid[k], seeds[si], res.n_delta, res.reached};
    } catch (const std::exception& e) {
      cell.error = e.what();
      cell.row = {grid[k], seeds[si], 0, false};
    }
    cell.seconds = seconds_since(t0);
  });

  for (int k = 0; k < n_dt; ++k) {
    const auto& cell = curve_cells[k];
    const std::string name = "qlearn_curve dt_index=" + std::to_string(k + 1);
    if (cell.error.empty()) {
      writer.add_table("curves_dt" + std::to_string(k + 1),
                       mq::curve_csv(cell.curve), mq::curve_json(cell.curve));
      writer.record_cell(name, cell.seed, "ok", "", cell.seconds);
    } else {
      writer.record_cell(name, cell.seed, "failed", cell.error, cell.seconds);
    }
  }

  std::vector<mq::ComplexityRow> rows;
  rows.reserve(cx_cells.size());
  for (std::size_t i = 0; i < cx_cells.size(); ++i) {
    const auto& cell = cx_cells[i];
    const std::string name =
        "qlearn_complexity dt_index=" + std::to_string(i / n_seeds + 1) +
        " seed=" + std::to_string(seeds[i % n_seeds]);
    if (cell.error.empty()) {
      rows.push_back(cell.row);
      writer.record_cell(name, cell.seed, "ok", "", cell.seconds);
    } else {
      writer.record_cell(name, cell.seed, "failed", cell.error, cell.seconds);
    }
  }
  writer.add_table("complexity", mq::complexity_csv(rows),
                   mq::complexity_json(rows));

  if (cfg.output.plots) {
    // Discretization error vs dt (reference point excluded: its distance
    // is zero by construction).
    mq::PlotSeries err{"sup distance to reference", {}, {}};
    for (int k = 0; k < n_dt; ++k) {
      if (k == report.reference_index) continue;
      err.x.push_back(grid[k]);
      err.y.push_back(report.rows[k].sup_dist_to_ref);
    }
    writer.add("sweep.svg",
               mq::line_plot_svg("Value error vs step size", "dt",
                                 "sup distance", {err}, true, true));

    std::vector<mq::PlotSeries> curves;
    for (int k = 0; k < n_dt; ++k) {
      if (!curve_cells[k].error.empty()) continue;
      mq::PlotSeries s{"dt_" + std::to_string(k + 1), {}, {}};
      for (std::size_t i = 0; i < curve_cells[k].curve.step.size(); ++i) {
        s.x.push_back(static_cast<double>(curve_cells[k].curve.step[i]));
        s.y.push_back(curve_cells[k].curve.sup_error[i]);
      }
      curves.push_back(std::move(s));
    }
    writer.add("convergence.svg",
               mq::line_plot_svg("Learning curves", "step", "sup error",
                                 curves, false, true));

    mq::PlotSeries med{"median N", {}, {}};
    for (int k = 0; k < n_dt; ++k) {
      std::vector<double> ns;
      for (const auto& row : rows) {
        if (row.dt == grid[k] && row.reached) {
          ns.push_back(static_cast<double>(row.n_delta));
        }
      }
      if (ns.empty()) continue;
      std::sort(ns.begin(), ns.end());
      med.x.push_back(grid[k]);
      med.y.push_back(ns[ns.size() / 2]);
    }
    writer.add("complexity.svg",
               mq::line_plot_svg("Sample complexity vs step size", "dt",
                                 "median N", {med}, true, true));
  }

  writer.finish();
  if (writer.any_failed()) {
    std::cerr << "sweep: one or more cells failed; see manifest.json\n";
    return 1;
  }
  return 0;
}

mq::GameSolutionEntry solve_game_at(const mq::ExperimentConfig& cfg, double dt,
                                    std::vector<std::string>* warnings) {
  const mq::GameModel model = mq::build_game_model(cfg.game, dt);
  if (warnings != nullptr) {
    for (const auto& w : model.warnings) warnings->push_back(w);
  }
  mq::GameSolutionEntry entry;
  entry.dt = dt;
  entry.actions = model.actions;
  entry.solution = mq::game_value_iteration(model, cfg.solver.tolerance,
                                            cfg.solver.max_iterations);
  entry.residuals = mq::game_hjb_residual(model, entry.solution);
  return entry;
}

int run_game_solve(const mq::ExperimentConfig& cfg,
                   const std::string& config_path, const std::string& command,
                   double dt) {
  RunWriter writer(cfg, command);
  writer.set_config_path(config_path);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> warnings;
  const auto entry = solve_game_at(cfg, dt, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  writer.add_table("game_solution", mq::game_solution_csv({entry}),
                   mq::game_solution_json({entry}));
  writer.record_cell("game_solve dt=" + mq::fmt_double(dt), cfg.master_seed,
                     "ok",
                     warnings.empty() ? "" : "warnings: " + warnings.front(),
                     seconds_since(t0));
  writer.finish();
  return 0;
}

int run_game_sweep(const mq::ExperimentConfig& cfg,
                   const std::string& config_path,
                   const std::string& command) {
  RunWriter writer(cfg, command);
  writer.set_config_path(config_path);
  std::vector<mq::GameSolutionEntry> entries;
  bool warned = false;
  for (std::size_t k = 0; k < cfg.grid.values.size(); ++k) {
    const double dt = cfg.grid.values[k];
    const auto t0 = std::chrono::steady_clock::now();
    const std::string name = "game_solve dt_index=" + std::to_string(k + 1);
    try {
      std::vector<std::string> warnings;
      entries.push_back(solve_game_at(cfg, dt, &warnings));
      if (!warned) {
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        warned = warned || !warnings.empty();
      }
      writer.record_cell(name, cfg.master_seed, "ok", "", seconds_since(t0));
    } catch (const std::exception& e) {
      writer.record_cell(name, cfg.master_seed, "failed", e.what(),
                         seconds_since(t0));
    }
  }
  writer.add_table("game_solution", mq::game_solution_csv(entries),
                   mq::game_solution_json(entries));

  if (cfg.output.plots && !entries.empty()) {
    std::vector<mq::PlotSeries> series;
    const int n_states = static_cast<int>(entries[0].actions.size());
    for (int player = 1; player <= 2; ++player) {
      for (int s = 0; s < n_states; ++s) {
        mq::PlotSeries line{"player " + std::to_string(player) + " state " +
                                std::to_string(s),
                            {},
                            {}};
        for (const auto& e : entries) {
          line.x.push_back(e.dt);
          line.y.push_back(player == 1 ? e.solution.v1[s] : e.solution.v2[s]);
        }
        series.push_back(std::move(line));
      }
    }
    writer.add("game_values.svg",
               mq::line_plot_svg("Equilibrium values vs step size", "dt",
                                 "value", series, true, false));
  }

  writer.finish();
  if (writer.any_failed()) {
    std::cerr << "game sweep: one or more cells failed; see manifest.json\n";
    return 1;
  }
  return 0;
}

int run_game_nashq(const mq::ExperimentConfig& cfg,
                   const std::string& config_path, const std::string& command,
                   double dt_override) {
  RunWriter writer(cfg, command);
  writer.set_config_path(config_path);
  const double dt = dt_override > 0.0 ? dt_override : cfg.nashq.dt;
  const auto t0 = std::chrono::steady_clock::now();

  const mq::GameModel model = mq::build_game_model(cfg.game, dt);
  for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
  const mq::GameSolution reference = mq::game_value_iteration(
      model, cfg.solver.tolerance, cfg.solver.max_iterations);
  const std::uint64_t seed =
      mq::derive_cell_seed(cfg.master_seed, cfg.experiment + "/nashq", 0, 0);
  const auto result =
      mq::run_nash_qlearning(model, cfg.nashq.learner, seed, &reference);

  writer.add_table("nashq_curves", mq::game_curve_csv(result.curve),
                   mq::game_curve_json(result.curve));
  writer.record_cell("nashq dt=" + mq::fmt_double(dt), seed, "ok", "",
                     seconds_since(t0));

  if (cfg.output.plots) {
    std::vector<mq::PlotSeries> series;
    for (int player = 1; player <= 2; ++player) {
      mq::PlotSeries line{"player " + std::to_string(player), {}, {}};
      for (std::size_t i = 0; i < result.curve.step.size(); ++i) {
        line.x.push_back(static_cast<double>(result.curve.step[i]));
        line.y.push_back(result.curve.value_error[player - 1][i]);
      }
      series.push_back(std::move(line));
    }
    writer.add("nashq.svg",
               mq::line_plot_svg("Learning error vs step", "step",
                                 "value error", series, false, true));
  }

  writer.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream cmdline;
  for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];

  CLI::App app{"Market-making MDP experiments: exact solves, step sweeps, "
               "tabular learning, and the two-dealer game"};
  app.require_subcommand(1);

  CommonOpts opts;
  double solve_dt = 0.0;
  double game_dt = 0.0;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  std::vector<std::uint64_t> seed_list;

  const auto add_common = [&](CLI::App* cmd, bool plots_relevant = true) {
    cmd->add_option("--config", opts.config_path, "Experiment config (JSON)")
        ->required();
    cmd->add_option("--out", opts.out_dir, "Output directory override");
    cmd->add_option("--format", opts.format, "Artifact format override")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "Master seed override")
        ->each([&](const std::string&) { opts.seed_set = true; });
    if (plots_relevant) {
      cmd->add_flag("--plot", opts.plot, "Also render SVG plots");
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "Exact solve at one step size");
  add_common(solve);
  solve->add_option("--dt", solve_dt, "Step size")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Exact solves plus learning cells over the step grid");
  add_common(sweep);
  sweep->add_option("--jobs", jobs, "Parallel cell workers");
  sweep->add_option("--seeds", seed_list, "Seed labels override");

  CLI::App* game = app.add_subcommand("game", "Two-dealer game experiments");
  game->require_subcommand(1);
  CLI::App* game_solve =
      game->add_subcommand("solve", "Equilibrium at one step size");
  add_common(game_solve);
  game_solve->add_option("--dt", game_dt, "Step size (default: smallest grid value)")
      ->check(CLI::PositiveNumber);
  CLI::App* game_sweep =
      game->add_subcommand("sweep", "Equilibria across the step grid");
  add_common(game_sweep);
  CLI::App* game_nashq =
      game->add_subcommand("nashq", "Two-player tabular learning");
  add_common(game_nashq);
  game_nashq->add_option("--dt", game_dt, "Step size (default: config nashq.dt)")
      ->check(CLI::PositiveNumber);

  CLI::App* dump = app.add_subcommand(
      "dump-config", "Print the built-in default config as canonical JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dump->parsed()) {
      std::cout << mq::config_to_json(mq::default_config());
      return 0;
    }
    const mq::ExperimentConfig cfg = load_effective_config(opts);
    if (solve->parsed()) {
      return run_solve(cfg, opts.config_path, cmdline.str(), solve_dt);
    }
    if (sweep->parsed()) {
      return run_sweep(cfg, opts.config_path, cmdline.str(), jobs, seed_list);
    }
    if (game->parsed()) {
      if (game_solve->parsed()) {
        const double dt = game_dt > 0.0 ? game_dt : cfg.grid.values.back();
        return run_game_solve(cfg, opts.config_path, cmdline.str(), dt);
      }
      if (game_sweep->parsed()) {
        return run_game_sweep(cfg, opts.config_path, cmdline.str());
      }
      if (game_nashq->parsed()) {
        return run_game_nashq(cfg, opts.config_path, cmdline.str(), game_dt);
      }
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const mq::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
