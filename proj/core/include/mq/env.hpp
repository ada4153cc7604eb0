#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mq/model.hpp"
#include "mq/rng.hpp"

namespace mq {

// One sampled interaction of the single-agent environment.
struct StepRecord {
  std::uint64_t step = 0;
  State state;
  Action action;
  int n_ask = 0;
  int n_bid = 0;
  State next;
  double reward = 0.0;
};

// Seeded stochastic stepper for a DiscreteModel. Price moves, ask fills and
// bid fills consume three independent named substreams of the seed, so the
// trajectory under a fixed action sequence is reproducible bit-for-bit and
// insensitive to consumers added elsewhere.
class Environment {
 public:
  // Throws model_error when s0 lies outside the model's state space.
  Environment(const DiscreteModel& model, std::uint64_t seed, const State& s0);

  // Samples (price move, ask fill, bid fill), computes the realized reward,
  // and advances. The action must be admissible at the current state;
  // anything else throws model_error rather than being masked.
  StepRecord step(const Action& a);

  // As step(Action), addressing the action by its index in the current
  // state's admissible list. Used by the learners.
  StepRecord step_index(int action_index);

  const State& state() const { return state_; }
  int state_id() const { return model_->state_id(state_); }
  std::uint64_t steps_taken() const { return steps_; }
  const DiscreteModel& model() const { return *model_; }

 private:
  const DiscreteModel* model_;
  State state_;
  std::uint64_t steps_ = 0;
  RngStream price_rng_;
  RngStream ask_rng_;
  RngStream bid_rng_;
};

// env_reset per the module contract: builds a fresh deterministic stepper.
inline Environment env_reset(const DiscreteModel& model, std::uint64_t seed,
                             const State& s0) {
  return Environment(model, seed, s0);
}

inline StepRecord env_step(Environment& env, const Action& a) {
  return env.step(a);
}

// Optional trajectory dump: one CSV row per record with the header
// step,x,y,ask,bid,n_a,n_b,x_next,reward. Banned sides serialize as empty
// fields.
void write_trajectory_csv(std::ostream& os, const DiscreteModel& model,
                          const std::vector<StepRecord>& records);

}  // namespace mq
