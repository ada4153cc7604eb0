#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mq/game.hpp"

namespace mq {

// A finite two-player general-sum stage game. a[i][j] is the row player's
// payoff, b[i][j] the column player's.
struct BimatrixGame {
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }
};

using MixedStrategy = std::vector<double>;

struct EquilibriumProfile {
  MixedStrategy row;
  MixedStrategy col;
  double value_row = 0.0;
  double value_col = 0.0;
  double certificate = 0.0;  // max unilateral improvement, both players
};

// Largest unilateral deviation gain of either player at (row, col); an
// equilibrium certificate evaluates to <= tol. Computed directly from the
// payoff matrices, independently of how the profile was found.
double best_response_gap(const BimatrixGame& game, const MixedStrategy& row,
                         const MixedStrategy& col);

// Deterministic equilibrium selection: pure profiles in lexicographic
// (row-major) order first; otherwise support enumeration in increasing total
// support size with lexicographic tie-breaking, solving the indifference
// systems by Gaussian elimination. Throws solver_error when no profile
// passes the certificate (possible only for degenerate numerically hostile
// inputs).
EquilibriumProfile solve_bimatrix(const BimatrixGame& game, double tol = 1e-9);

// Diagnostic enumeration of all certified equilibria (pure and mixed),
// deduplicated; used to census uniqueness per state.
std::vector<EquilibriumProfile> enumerate_equilibria(const BimatrixGame& game,
                                                     double tol = 1e-9);

// Equilibrium value functions and per-state profiles of the discrete game.
struct GameSolution {
  std::vector<double> v1;
  std::vector<double> v2;
  std::vector<EquilibriumProfile> profiles;   // per state
  std::vector<int> equilibrium_count;         // census per state (diagnostic)
  int iterations = 0;
};

// Builds the stage game at one state from continuation values:
// Q^k(i,j) = r^k dt + e^{-gamma dt} E[V^k(next)].
BimatrixGame continuation_game(const GameModel& model, int state,
                               const std::vector<double>& v1,
                               const std::vector<double>& v2);

// Fixed-point iteration on both value tables, solving one bimatrix game per
// state per sweep. Stops when both tables move less than tol in sup norm for
// three consecutive sweeps, then re-certifies every state's profile. Throws
// solver_error if max_iter sweeps pass without convergence.
GameSolution game_value_iteration(const GameModel& model, double tol = 1e-10,
                                  int max_iter = 1000000);

// Continuous-time optimality residual per player:
//   max_s | gamma V^k(s) - max_a { r^k(s, a, pi^rival(s))
//            + sum_{s'} qbar(s, a, s') V^k(s') } |
// with the rival mixing according to the solved profile and qbar the
// generator row averaged over that mix. Returns {residual_1, residual_2}.
std::array<double, 2> game_hjb_residual(const GameModel& model,
                                        const GameSolution& solution);

// Learning configuration for the two-player tabular learner.
struct NashLearnerConfig {
  double eta0 = 0.5;       // initial learning rate
  double eta = 0.995;      // per-epoch decay factor
  std::int64_t rate_epoch = 100;  // M_b: updates per learning-rate epoch
  double q_init = 1.0;     // constant initial Q for both players
  double eps_floor = 1e-5;
  double eps_rho0 = 1.0;
  double eps_rho = 0.5;
  std::int64_t eps_epoch = 100;   // M: visits per exploration epoch
  std::uint64_t step_budget = 200000;
  // standard: TD target r + e^{-gamma dt} NashV(s'); paper_literal: the
  // printed update Q(s,a) = r + beta (Q(s', ahat) - Q(s, a)) with (ahat)
  // sampled from the stage equilibrium at s' and no discount factor.
  enum class UpdateRule { standard, paper_literal };
  UpdateRule update_rule = UpdateRule::standard;

  void validate() const;  // throws config_error
};

struct GameLearningCurve {
  std::vector<std::uint64_t> step;
  std::array<std::vector<double>, 2> value_error;
  std::array<std::vector<double>, 2> policy_error;
};

struct NashQResult {
  std::array<std::vector<std::vector<std::vector<double>>>, 2> q;  // [k][s][i][j]
  std::vector<EquilibriumProfile> learned_profiles;  // per state, final
  std::array<std::vector<double>, 2> learned_values; // per state, final
  GameLearningCurve curve;
  std::uint64_t steps = 0;
};

using NashQTables = std::array<std::vector<std::vector<std::vector<double>>>, 2>;

// Tabular two-player learner: both players follow the epsilon-greedy joint
// rule (uniform joint action with probability eps(s), else a sample from the
// current stage equilibrium at s), share all observations, and update both
// Q tables. Stage equilibria are cached per state and recomputed only when
// that state's Q entries change. The curve logs sup-norm distance of the
// learned equilibrium values to reference (and profile distance) every
// ceil(budget/1000) steps when a reference solution is supplied. When
// initial_q is given it replaces the constant q_init tables (shape-checked);
// with eta0 = 0 the learner is frozen, which turns that override into a
// replay probe of the supplied tables.
NashQResult run_nash_qlearning(const GameModel& model,
                               const NashLearnerConfig& config,
                               std::uint64_t seed,
                               const GameSolution* reference = nullptr,
                               const NashQTables* initial_q = nullptr);

}  // namespace mq
