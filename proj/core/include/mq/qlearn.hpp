#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mq/dp.hpp"
#include "mq/env.hpp"
#include "mq/model.hpp"

namespace mq {

// Hyperparameters of the tabular learner. The learning rate for the n-th
// update of a pair (s,a) is N(s,a)^{-omega} with N counting one plus prior
// updates; exploration follows eps(s) = max(eps_floor,
// eps_rho0 * eps_rho^{floor(visits(s)/eps_epoch)}) with raw prior visits.
struct LearnerConfig {
  double omega = 0.5001;      // learning-rate exponent, in (1/2, 1)
  double q_init = 1.0;        // C0 > 0, initial value of every Q entry
  double eps_floor = 1e-5;    // eps0: exploration survives at this floor
  double eps_rho0 = 1.0;      // rho0: initial exploration probability
  double eps_rho = 0.5;       // rho: per-epoch decay factor, in (0, 1)
  std::int64_t eps_epoch = 100;     // M: visits per exploration epoch
  std::uint64_t step_budget = 1000000;

  void validate() const;  // throws model_error
};

// Visit bookkeeping. state_visits counts raw prior visits (drives the
// epsilon schedule, starting at 0); sa_updates counts completed updates of
// each pair (the learning-rate base is this count including the current
// update, hence >= 1 whenever used). At every step boundary
// sum_a sa_updates[s][a] == state_visits[s].
struct VisitCounts {
  std::vector<std::int64_t> state_visits;
  std::vector<std::vector<std::int64_t>> sa_updates;
};

// Error trajectory against the exact solution, logged every
// ceil(budget/1000) steps. policy_match flags whether the greedy policy
// (lowest-index argmax) equals the reference optimal policy at that step.
struct LearningCurve {
  std::vector<std::uint64_t> step;
  std::vector<double> sup_error;
  std::vector<bool> policy_match;
};

struct QlearnResult {
  QTable q;
  VisitCounts visits;
  LearningCurve curve;  // empty unless a reference was supplied
  std::uint64_t steps = 0;
};

// Exploration probability after the given number of raw prior state visits.
double epsilon_value(const LearnerConfig& config, std::int64_t state_visits);

// Polynomial learning rate n^{-omega} for the n-th update (n >= 1).
double learning_rate(double omega, std::int64_t sa_visits);

// Single tabular backup:
//   Q(s,a) += beta * (reward + discount * max_a' Q(s_next, a') - Q(s,a)).
// Returns the updated entry; no other entry changes.
double q_update(QTable& q, int s, int a, double reward, int s_next,
                double beta, double discount);

// Runs the epsilon-greedy interaction loop against a seeded environment,
// starting from the middle price state with zero inventory. When v_ref /
// policy_ref are supplied, logs the sup-norm error of V^{(n)}(s) =
// max_a Q^{(n)}(s,a) and the greedy-policy match at checkpoints. Exhausting
// the budget is not an error.
QlearnResult run_qlearning(const DiscreteModel& model,
                           const LearnerConfig& config, std::uint64_t seed,
                           const ValueTable* v_ref = nullptr,
                           const Policy* policy_ref = nullptr);

// Sample complexity: the first step n with ||V^{(n)} - v_star||_inf <=
// threshold. When the budget runs out first, reached is false and n_delta
// holds the budget.
struct ComplexityResult {
  std::uint64_t n_delta = 0;
  bool reached = false;
};

ComplexityResult measure_sample_complexity(const DiscreteModel& model,
                                           const LearnerConfig& config,
                                           std::uint64_t seed,
                                           const ValueTable& v_star,
                                           double threshold);

// Delta-exponents of the two terms of the theoretical sample-complexity
// bound, for the model's dimensions. Both are negative for omega in (1/2,1).
std::pair<double, double> complexity_bound_exponents(const ModelParams& params,
                                                     double omega);

// The two-term sample-complexity bound with every suppressed constant set
// to 1, evaluated for the model's dimensions (|S_X| price states, |S_Y|
// inventory states, |A| = (N_P+1)^2 quote pairs). Only the shape in dt is
// meaningful.
double complexity_bound(const ModelParams& params, double dt, double omega,
                        double eps_v, double eps_floor);

}  // namespace mq
