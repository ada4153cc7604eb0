#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mq/game.hpp"
#include "mq/rng.hpp"

namespace mq {

// One simulated transition of the two-dealer game.
struct GameStepRecord {
  std::uint64_t step = 0;
  int state = 1;  // price index before the step
  Action a1;
  Action a2;
  int n_ask1 = 0, n_bid1 = 0;
  int n_ask2 = 0, n_bid2 = 0;
  int next_state = 1;
  double reward1 = 0.0;
  double reward2 = 0.0;
};

// Exact sampler of the discrete game. Five named substreams (price plus one
// per quote leg) are derived from the seed and all advance every step, so a
// shared seed keeps the price path identical across runs regardless of the
// chosen actions.
class GameEnvironment {
 public:
  // price_index0 = 0 selects the middle price state.
  GameEnvironment(const GameModel& model, std::uint64_t seed,
                  int price_index0 = 0);

  GameStepRecord step(const Action& a1, const Action& a2);
  GameStepRecord step_index(int i, int j);

  int state() const { return state_; }
  std::uint64_t steps_taken() const { return steps_; }
  const GameModel& model() const { return *model_; }

 private:
  const GameModel* model_;
  int state_;
  std::uint64_t steps_ = 0;
  RngStream price_rng_;
  RngStream ask1_rng_, bid1_rng_, ask2_rng_, bid2_rng_;
};

void write_game_trajectory_csv(std::ostream& os,
                               const std::vector<GameStepRecord>& records);

}  // namespace mq
