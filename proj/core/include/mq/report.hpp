#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mq/dp.hpp"
#include "mq/format.hpp"
#include "mq/game.hpp"
#include "mq/nash.hpp"
#include "mq/qlearn.hpp"

namespace mq {

inline constexpr const char* kToolName = "mq";
inline constexpr const char* kToolVersion = "0.1.0";

// All artifact builders return the complete file contents as a string, so
// callers can checksum and write them atomically. Every numeric field uses
// fmt_double and the builders are deterministic given their inputs.

// Step sweep: one row per (dt, state).
std::string sweep_csv(const ModelParams& params, const SweepReport& report);
std::string sweep_json(const ModelParams& params, const SweepReport& report);

// Single-agent learning curve.
std::string curve_csv(const LearningCurve& curve);
std::string curve_json(const LearningCurve& curve);

// Sample-complexity grid: one row per (dt, seed) cell.
struct ComplexityRow {
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t n_delta = 0;
  bool reached = false;
};
std::string complexity_csv(const std::vector<ComplexityRow>& rows);
std::string complexity_json(const std::vector<ComplexityRow>& rows);

// Game equilibrium output: one row per (dt, state, player, action).
struct GameSolutionEntry {
  double dt = 0.0;
  std::vector<std::vector<Action>> actions;  // per state
  GameSolution solution;
  std::array<double, 2> residuals{0.0, 0.0};
};
std::string game_solution_csv(const std::vector<GameSolutionEntry>& entries);
std::string game_solution_json(const std::vector<GameSolutionEntry>& entries);

// Two-player learning curves: one row per (step, player).
std::string game_curve_csv(const GameLearningCurve& curve);
std::string game_curve_json(const GameLearningCurve& curve);

// Run manifest. Timestamps are its only nondeterministic fields.
struct ArtifactRecord {
  std::string path;  // relative to the output directory
  std::string checksum_fnv1a64;
  std::uint64_t bytes = 0;
};

struct CellRecord {
  std::string name;
  std::string status;  // "ok" | "failed"
  std::string message;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string config_checksum;
  std::string config_snapshot;  // canonical JSON dump of the parsed config
  std::uint64_t master_seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<CellRecord> cells;
  std::vector<ArtifactRecord> artifacts;
};

std::string manifest_json(const RunManifest& manifest);
std::string iso8601_utc_now();

// Minimal self-contained SVG line plot (optionally log-scaled axes;
// non-positive points are dropped on a log axis).
struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};
std::string line_plot_svg(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<PlotSeries>& series, bool log_x,
                          bool log_y);

}  // namespace mq
