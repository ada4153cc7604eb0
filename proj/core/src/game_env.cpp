#include "mq/game_env.hpp"

#include <ostream>

#include "mq/errors.hpp"
#include "mq/format.hpp"

namespace mq {

GameEnvironment::GameEnvironment(const GameModel& model, std::uint64_t seed,
                                 int price_index0)
    : model_(&model),
      state_(price_index0 == 0 ? model.params.n_price_levels : price_index0),
      price_rng_(seed, "price"),
      ask1_rng_(seed, "ask_fill_1"),
      bid1_rng_(seed, "bid_fill_1"),
      ask2_rng_(seed, "ask_fill_2"),
      bid2_rng_(seed, "bid_fill_2") {
  if (state_ < 1 || state_ > model.n_states()) {
    throw model_error("initial price index out of range");
  }
}

GameStepRecord GameEnvironment::step(const Action& a1, const Action& a2) {
  const auto& acts = model_->actions[state_ - 1];
  int i = -1, j = -1;
  for (int t = 0; t < static_cast<int>(acts.size()); ++t) {
    if (acts[t] == a1) i = t;
    if (acts[t] == a2) j = t;
  }
  if (i < 0 || j < 0) {
    throw model_error("joint action not admissible at the current price");
  }
  return step_index(i, j);
}

GameStepRecord GameEnvironment::step_index(int i, int j) {
  const auto& acts = model_->actions[state_ - 1];
  if (i < 0 || i >= static_cast<int>(acts.size()) || j < 0 ||
      j >= static_cast<int>(acts.size())) {
    throw model_error("joint action index out of range");
  }
  const JointCell& cell = model_->cells[state_ - 1][i][j];
  const GameParams& params = model_->params;

  GameStepRecord rec;
  rec.step = steps_;
  rec.state = state_;
  rec.a1 = acts[i];
  rec.a2 = acts[j];

  // All streams advance every step to keep paths aligned across runs.
  const double u_price = price_rng_.uniform();
  const double u_ask1 = ask1_rng_.uniform();
  const double u_bid1 = bid1_rng_.uniform();
  const double u_ask2 = ask2_rng_.uniform();
  const double u_bid2 = bid2_rng_.uniform();

  int next = cell.price_next.back();
  for (std::size_t t = 0; t < cell.price_cdf.size(); ++t) {
    if (u_price < cell.price_cdf[t]) {
      next = cell.price_next[t];
      break;
    }
  }
  rec.next_state = next;
  rec.n_ask1 = u_ask1 < cell.fill_ask1 ? 1 : 0;
  rec.n_bid1 = u_bid1 < cell.fill_bid1 ? 1 : 0;
  rec.n_ask2 = u_ask2 < cell.fill_ask2 ? 1 : 0;
  rec.n_bid2 = u_bid2 < cell.fill_bid2 ? 1 : 0;

  const double x = params.mid_price(state_);
  const double c = params.transaction_cost;
  rec.reward1 = (params.quote_price(*rec.a1.ask) - x - c) * rec.n_ask1 +
                (x - params.quote_price(*rec.a1.bid) - c) * rec.n_bid1;
  rec.reward2 = (params.quote_price(*rec.a2.ask) - x - c) * rec.n_ask2 +
                (x - params.quote_price(*rec.a2.bid) - c) * rec.n_bid2;

  state_ = next;
  ++steps_;
  return rec;
}

void write_game_trajectory_csv(std::ostream& os,
                               const std::vector<GameStepRecord>& records) {
  os << "step,state,ask1,bid1,ask2,bid2,n_ask1,n_bid1,n_ask2,n_bid2,"
        "next_state,reward1,reward2\n";
  for (const auto& r : records) {
    os << r.step << ',' << r.state << ',' << *r.a1.ask << ',' << *r.a1.bid
       << ',' << *r.a2.ask << ',' << *r.a2.bid << ',' << r.n_ask1 << ','
       << r.n_bid1 << ',' << r.n_ask2 << ',' << r.n_bid2 << ','
       << r.next_state << ',' << fmt_double(r.reward1) << ','
       << fmt_double(r.reward2) << '\n';
  }
}

}  // namespace mq
