#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mq/game.hpp"
#include "mq/model.hpp"
#include "mq/nash.hpp"
#include "mq/qlearn.hpp"

namespace mq {

inline constexpr int kConfigSchemaVersion = 1;

struct SolverConfig {
  double tolerance = 1e-10;
  int max_iterations = 1000000;
};

// Step grid: either an explicit non-increasing list or the log generator
// dt_k = 10^{-1 - 2k/(count-1)}, k = 0..count-1.
struct GridSpec {
  enum class Kind { log_generator, list };
  Kind kind = Kind::log_generator;
  int count = 10;
  std::vector<double> values;  // resolved, non-increasing

  static std::vector<double> log_grid(int count);
};

struct ComplexityConfig {
  double threshold = 0.1;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
};

struct NashqSection {
  double dt = 0.1;
  NashLearnerConfig learner;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats{"csv"};
  bool plots = false;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  std::string experiment = "desk";
  std::uint64_t master_seed = 0;
  ModelParams model;
  GameParams game;
  GridSpec grid;
  SolverConfig solver;
  LearnerConfig qlearn_default;
  std::map<int, LearnerConfig> qlearn_per_dt;  // keyed by 1-based grid index
  ComplexityConfig complexity;
  NashqSection nashq;
  OutputConfig output;

  // Preset for one grid cell: the per-index override when present, else the
  // default.
  const LearnerConfig& qlearn_for(int grid_index_1based) const;
};

// Parses and fully validates a config document; throws config_error on any
// schema violation, including keys outside the documented schema.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical JSON serialization: parse_config_text(config_to_json(c)) yields
// the same configuration, and the shipped default config file is exactly
// config_to_json(default_config()).
std::string config_to_json(const ExperimentConfig& config);

// The reference desk-scale setup: 3 price states, inventory bound 1,
// tick 1/3, discount 0.95, fill intensity 10.87 e^{-2d}, the symmetric
// tridiagonal generator, the 10-point log grid, and tuned learner presets.
ExperimentConfig default_config();

}  // namespace mq
