#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mq/errors.hpp"

namespace mq {

// Market state: mid-price on the half-tick grid, signed inventory.
// price_index k is 1-based (k = 1 .. 2*N_P - 1), mid-price x = k * tick / 2.
struct State {
  int price_index = 1;
  int inventory = 0;

  friend bool operator==(const State& a, const State& b) {
    return a.price_index == b.price_index && a.inventory == b.inventory;
  }
};

// A pair of quote levels on the price grid {0, 1, ..., N_P} * tick.
// A side that is banned by the inventory bound is absent entirely.
struct Action {
  std::optional<int> ask;
  std::optional<int> bid;

  friend bool operator==(const Action& a, const Action& b) {
    return a.ask == b.ask && a.bid == b.bid;
  }
};

using RateMatrix = std::vector<std::vector<double>>;

// Generator entries of the mid-price chain, optionally action-dependent.
// Keys encode (ask, bid) for the single-agent model and
// (ask1, bid1, ask2, bid2) for the game; -1 marks an absent side / unused
// slot. Actions without an override fall back to the base matrix.
class RateMatrixSpec {
 public:
  using Key = std::array<int, 4>;

  RateMatrixSpec() = default;
  explicit RateMatrixSpec(RateMatrix base) : base_(std::move(base)) {}
  RateMatrixSpec(RateMatrix base, std::map<Key, RateMatrix> overrides)
      : base_(std::move(base)), overrides_(std::move(overrides)) {}

  static Key key_of(const Action& a) {
    return {a.ask.value_or(-1), a.bid.value_or(-1), -1, -1};
  }
  static Key key_of(const Action& a1, const Action& a2) {
    return {a1.ask.value_or(-1), a1.bid.value_or(-1), a2.ask.value_or(-1),
            a2.bid.value_or(-1)};
  }

  const RateMatrix& rates(const Key& key) const {
    auto it = overrides_.find(key);
    return it == overrides_.end() ? base_ : it->second;
  }
  const RateMatrix& base() const { return base_; }
  const std::map<Key, RateMatrix>& overrides() const { return overrides_; }
  bool action_dependent() const { return !overrides_.empty(); }
  std::size_t dim() const { return base_.size(); }

  // Checks every matrix: square of the expected dimension, zero outside the
  // tridiagonal band, rows summing to zero, off-diagonal rates in
  // (0, rate_bound). Throws model_error with the offending entry.
  void validate(std::size_t expected_dim, double rate_bound) const;

 private:
  RateMatrix base_;
  std::map<Key, RateMatrix> overrides_;
};

// Parameters of the single-agent market-making model.
struct ModelParams {
  int n_price_levels = 2;        // N_P: quote grid is {0, ..., N_P} * tick
  int max_inventory = 1;         // N_Y: inventory bounded by +/- N_Y
  double tick = 1.0 / 3.0;       // price increment (price units)
  double discount_rate = 0.95;   // gamma, per unit time
  double fill_alpha = 10.87;     // alpha: fill intensity scale (events/time)
  double fill_kappa = 2.0;       // kappa: fill intensity decay (1/price)
  double inventory_penalty = 0;  // phi: running penalty coefficient
  double transaction_cost = 0;   // c: per-fill cost (price units)
  double rate_bound = 1e6;       // C_lambda: strict upper bound on rates
  RateMatrixSpec price_rates;    // generator of the mid-price chain

  int n_price_states() const { return 2 * n_price_levels - 1; }
  int n_inventory_states() const { return 2 * max_inventory + 1; }
  double mid_price(int price_index) const { return price_index * tick / 2.0; }
  double quote_price(int level) const { return level * tick; }

  void validate() const;  // throws model_error
};

// Quote availability: the ask side is quotable unless inventory is at the
// lower bound, the bid side unless at the upper bound. Admissible levels are
// strictly above (ask) / below (bid) the mid-price. Actions are ordered
// ask-major with levels ascending; a state with both sides banned gets the
// single empty action.
std::vector<Action> available_actions(const ModelParams& params,
                                      const State& s);

// One-step price transition matrix at step dt: off-diagonal lambda_{k,l}*dt,
// diagonal 1 - (row outflow)*dt. Throws model_error if any entry leaves
// [0, 1]. dt = 0 yields the identity.
RateMatrix price_transition_matrix(const ModelParams& params, double dt,
                                   const Action& a);

// Single-step fill probability of a quote at the given distance from mid:
// alpha * exp(-kappa * distance) * dt. Throws model_error when the value
// exceeds 1 (the step dt is too coarse for this model).
double fill_probability(const ModelParams& params, double dt, double distance);

// Expected reward rate f(s,a): quoted-spread capture at the fill intensity,
// inventory penalty, and inventory-times-drift term, where the drift is
// mu(x,a) = (lambda_{k,k+1} - lambda_{k,k-1}) * tick / 2.
double expected_stage_rate(const ModelParams& params, const State& s,
                           const Action& a);

// Realized one-step reward for sampled fills and next mid-price:
//   (p_a - x - c) n_ask + (x - p_b - c) n_bid + (x_next - x) y - phi y^2 dt,
// with each quote leg present only when the action quotes that side.
double reward_given_outcome(const ModelParams& params, const State& s,
                            const Action& a, int n_ask, int n_bid,
                            double x_next, double dt);

// One enumerated transition: joint (price move, ask fill, bid fill) outcome
// collapsed to its next state, probability, and realized reward.
struct Outcome {
  int next_state = 0;
  double prob = 0.0;
  double reward = 0.0;
};

// Fully materialized discrete-time model M_dt. States are enumerated
// price-major: id = (k-1) * (2*N_Y+1) + (y + N_Y). Immutable after build and
// safe to share read-only across workers.
struct DiscreteModel {
  ModelParams params;
  double dt = 0.0;
  double discount = 1.0;  // exp(-gamma * dt)

  std::vector<State> states;
  std::vector<std::vector<Action>> actions;      // per state
  std::vector<std::vector<std::vector<Outcome>>> outcomes;  // [s][a]
  std::vector<std::vector<double>> stage_rate;       // f(s,a)
  std::vector<std::vector<double>> expected_reward;  // f(s,a) * dt

  // Sampling tables for the environment, per (s, a).
  std::vector<std::vector<double>> fill_prob_ask;   // 0 when side absent
  std::vector<std::vector<double>> fill_prob_bid;
  std::vector<std::vector<std::vector<int>>> price_next;     // next k values
  std::vector<std::vector<std::vector<double>>> price_cdf;   // cumulative

  int n_states() const { return static_cast<int>(states.size()); }
  int state_id(const State& s) const {
    return (s.price_index - 1) * params.n_inventory_states() +
           (s.inventory + params.max_inventory);
  }
  bool valid_state(const State& s) const {
    return s.price_index >= 1 && s.price_index <= params.n_price_states() &&
           s.inventory >= -params.max_inventory &&
           s.inventory <= params.max_inventory;
  }

  // Kernel row aggregated over outcomes that share a next state.
  std::vector<std::pair<int, double>> kernel_row(int s, int a) const;
};

// Enumerates states, admissible actions, and the full outcome distribution
// per (s, a). Throws model_error when dt makes any probability leave [0, 1].
DiscreteModel build_discrete_model(const ModelParams& params, double dt);

}  // namespace mq
