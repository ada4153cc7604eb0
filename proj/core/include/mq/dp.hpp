#pragma once

#include <vector>

#include "mq/model.hpp"

namespace mq {

// Value per state, indexed by DiscreteModel state ids.
using ValueTable = std::vector<double>;

// Deterministic stationary policy: per state, the index of the chosen action
// within that state's admissible-action list.
using Policy = std::vector<int>;

// State-action values, ragged over each state's admissible actions.
using QTable = std::vector<std::vector<double>>;

struct SolveResult {
  ValueTable v;
  Policy policy;
  QTable q;
  int iterations = 0;
  double bellman_residual = 0.0;  // re-evaluated after the loop exits
};

// Independent evaluation of max_s |V(s) - max_a (f dt + beta sum p V')|.
double bellman_residual(const DiscreteModel& model, const ValueTable& v);

// Solves the Bellman equation by value iteration from V = 0. Successive
// sup-norm differences are scaled by discount/(1-discount), so the returned
// table is within tol of the fixed point and its Bellman residual is <= tol.
// Ties in the argmax break toward the lowest action index. Throws
// solver_error (carrying the last residual) if max_iter is hit first.
SolveResult value_iteration(const DiscreteModel& model, double tol = 1e-10,
                            int max_iter = 1000000);

// Continuous-time optimality residual of a table V on the model's state
// enumeration: max_s |gamma V(s) - max_a (f(s,a) + sum_{s' != s}
// rate(s'|s,a) V(s') - total_outflow(s,a) V(s))|. Transition rates combine
// the price generator with ask fills (inventory down) and bid fills
// (inventory up) at their quote-distance intensities.
double hjb_residual(const ModelParams& params, const ValueTable& v);

struct SweepEntry {
  double dt = 0.0;
  SolveResult solution;
  double sup_dist_to_ref = 0.0;
  bool policy_identical = false;
  double hjb = 0.0;
};

// Rows in grid order (descending dt); reference solution at the smallest dt.
struct SweepReport {
  std::vector<SweepEntry> rows;
  int reference_index = 0;
};

// Solves every grid step and reports distances to the smallest-dt solution,
// which stands in for the continuous-time optimum. The grid must be
// non-increasing (duplicates allowed).
SweepReport delta_sweep(const ModelParams& params,
                        const std::vector<double>& dt_grid, double tol);

}  // namespace mq
