#include "mq/env.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "mq/format.hpp"

namespace mq {

Environment::Environment(const DiscreteModel& model, std::uint64_t seed,
                         const State& s0)
    : model_(&model),
      state_(s0),
      price_rng_(seed, "price"),
      ask_rng_(seed, "ask_fill"),
      bid_rng_(seed, "bid_fill") {
  if (!model.valid_state(s0))
    throw model_error("env_reset: initial state (" +
                      std::to_string(s0.price_index) + "," +
                      std::to_string(s0.inventory) + ") outside state space");
}

StepRecord Environment::step(const Action& a) {
  const int s = model_->state_id(state_);
  const auto& acts = model_->actions[s];
  const auto it = std::find(acts.begin(), acts.end(), a);
  if (it == acts.end())
    throw model_error("env_step: action not admissible at current state");
  return step_index(static_cast<int>(it - acts.begin()));
}

StepRecord Environment::step_index(int action_index) {
  const int s = model_->state_id(state_);
  const auto& acts = model_->actions[s];
  if (action_index < 0 || action_index >= static_cast<int>(acts.size()))
    throw model_error("env_step: action index out of range");
  const Action& a = acts[action_index];

  // Draw all three substreams every step, including banned sides, so the
  // price stream stays aligned regardless of the action mix.
  const double u_price = price_rng_.uniform();
  const double u_ask = ask_rng_.uniform();
  const double u_bid = bid_rng_.uniform();

  const auto& cdf = model_->price_cdf[s][action_index];
  const auto& nxt = model_->price_next[s][action_index];
  std::size_t j = 0;
  while (u_price >= cdf[j]) ++j;
  const int k2 = nxt[j];

  const int n_ask = (a.ask && u_ask < model_->fill_prob_ask[s][action_index]) ? 1 : 0;
  const int n_bid = (a.bid && u_bid < model_->fill_prob_bid[s][action_index]) ? 1 : 0;

  StepRecord rec;
  rec.step = steps_;
  rec.state = state_;
  rec.action = a;
  rec.n_ask = n_ask;
  rec.n_bid = n_bid;
  rec.next = State{k2, state_.inventory - n_ask + n_bid};
  rec.reward = reward_given_outcome(model_->params, state_, a, n_ask, n_bid,
                                    model_->params.mid_price(k2), model_->dt);
  state_ = rec.next;
  ++steps_;
  return rec;
}

void write_trajectory_csv(std::ostream& os, const DiscreteModel& model,
                          const std::vector<StepRecord>& records) {
  os << "step,x,y,ask,bid,n_a,n_b,x_next,reward\n";
  for (const StepRecord& r : records) {
    os << r.step << ',' << fmt_double(model.params.mid_price(r.state.price_index))
       << ',' << r.state.inventory << ',';
    if (r.action.ask) os << fmt_double(model.params.quote_price(*r.action.ask));
    os << ',';
    if (r.action.bid) os << fmt_double(model.params.quote_price(*r.action.bid));
    os << ',' << r.n_ask << ',' << r.n_bid << ','
       << fmt_double(model.params.mid_price(r.next.price_index)) << ','
       << fmt_double(r.reward) << '\n';
  }
}

}  // namespace mq
