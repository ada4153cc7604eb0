#pragma once

#include <array>
#include <string>
#include <vector>

#include "mq/model.hpp"

namespace mq {

// Named parameterizations for the competitive-intensity building blocks.
enum class IntensityKind {
  exp_decay,  // alpha * exp(-kappa * d)
  sqrt_exp,   // scale * sqrt(1 + weight * exp(-kappa * d))
  constant,   // value, independent of d
};

struct IntensityFn {
  IntensityKind kind = IntensityKind::exp_decay;
  double alpha = 10.87;  // exp_decay scale
  double kappa = 2.0;    // decay rate (exp_decay and sqrt_exp)
  double scale = 0.5;    // sqrt_exp prefactor
  double weight = 3.0;   // sqrt_exp mixing weight
  double value = 1.0;    // constant level

  double eval(double d) const;
};

// Upsilon pair defining the competitive execution intensities. Defaults are
// the two-dealer study's choice: minus = 10.87 e^{-2d},
// plus = (1/2) sqrt(1 + 3 e^{-2d}), so plus(0) = 1 and tied quotes reduce to
// the single-agent intensity.
struct IntensitySpec {
  IntensityFn minus{IntensityKind::exp_decay, 10.87, 2.0, 0.5, 3.0, 1.0};
  IntensityFn plus{IntensityKind::sqrt_exp, 10.87, 2.0, 0.5, 3.0, 1.0};
};

enum class Side { ask, bid };

// Parameters of the two-dealer game. The shared state is the mid-price
// alone; both dealers always quote both sides.
struct GameParams {
  int n_price_levels = 2;
  double tick = 1.0 / 3.0;
  double discount_rate = 0.95;
  double transaction_cost = 0.0;
  double rate_bound = 1e6;
  RateMatrixSpec price_rates;  // generator over joint actions
  IntensitySpec intensity;

  int n_price_states() const { return 2 * n_price_levels - 1; }
  double mid_price(int price_index) const { return price_index * tick / 2.0; }
  double quote_price(int level) const { return level * tick; }

  void validate() const;  // throws model_error
};

// One action per dealer. Both sides are always quoted in the game.
struct JointAction {
  Action a1;
  Action a2;
};

// Execution intensity of one dealer's quote given the rival's quote on the
// same side: minus(|own - x|) / plus(|own - best|), where best is the lower
// ask (resp. higher bid) of the two. Throws model_error when the own quote
// sits on the wrong side of the mid-price (asks must be strictly above,
// bids strictly below).
double execution_intensity(const IntensitySpec& spec, double x, Side side,
                           double own_price, double rival_price);

// Reward rate r^k of the given player (1 or 2) under a joint action:
// (p_ask - x - c) Gamma_ask + (x - p_bid - c) Gamma_bid for that player's
// quotes against the rival's.
double game_stage_rate(const GameParams& params, int price_index,
                       const Action& a1, const Action& a2, int player);

// Per-(state, joint action) tables of the discretized game.
struct JointCell {
  double reward1 = 0.0;  // r^1 * dt
  double reward2 = 0.0;  // r^2 * dt
  double fill_ask1 = 0.0, fill_bid1 = 0.0;  // per-step fill probabilities
  double fill_ask2 = 0.0, fill_bid2 = 0.0;
  std::vector<int> price_next;
  std::vector<double> price_cdf;
};

// Materialized discrete-time game G_dt. State ids are price_index - 1; each
// state's action list follows the single-agent admissibility at zero
// inventory (both sides quotable, strictly outside the mid). Immutable
// after build.
struct GameModel {
  GameParams params;
  double dt = 0.0;
  double discount = 1.0;
  std::vector<std::vector<Action>> actions;            // [s]
  std::vector<std::vector<std::vector<JointCell>>> cells;  // [s][i][j]
  std::vector<std::string> warnings;  // non-fatal assumption violations

  int n_states() const { return static_cast<int>(actions.size()); }
};

// Builds the game tables, validating every fill probability and kernel row.
// Monotonicity of the intensity building blocks (minus decreasing, plus
// increasing) is checked on the quote grid; violations are reported in
// GameModel::warnings rather than rejected, since the reference two-dealer
// configuration itself uses a decreasing plus.
GameModel build_game_model(const GameParams& params, double dt);

}  // namespace mq
