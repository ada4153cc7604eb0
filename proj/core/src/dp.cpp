#include "mq/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mq {

namespace {

// One Bellman backup at state s: max over actions of f dt + beta * E[V'].
double backup(const DiscreteModel& model, const ValueTable& v, int s,
              int* argmax) {
  double best = -std::numeric_limits<double>::infinity();
  int best_a = 0;
  const auto& acts = model.outcomes[s];
  for (std::size_t a = 0; a < acts.size(); ++a) {
    double cont = 0.0;
    for (const Outcome& o : acts[a]) cont += o.prob * v[o.next_state];
    const double q = model.expected_reward[s][a] + model.discount * cont;
    if (q > best) {  // strict: ties keep the lowest action index
      best = q;
      best_a = static_cast<int>(a);
    }
  }
  if (argmax) *argmax = best_a;
  return best;
}

}  // namespace

double bellman_residual(const DiscreteModel& model, const ValueTable& v) {
  double worst = 0.0;
  for (int s = 0; s < model.n_states(); ++s)
    worst = std::max(worst, std::abs(v[s] - backup(model, v, s, nullptr)));
  return worst;
}

SolveResult value_iteration(const DiscreteModel& model, double tol,
                            int max_iter) {
  if (!(tol > 0)) throw model_error("value_iteration: tol must be positive");
  const int ns = model.n_states();
  const double beta = model.discount;
  // Stop when the contraction bound beta/(1-beta) * sup-diff drops to tol.
  const double stop = tol * (1.0 - beta) / beta;

  SolveResult res;
  res.v.assign(ns, 0.0);
  ValueTable next(ns, 0.0);
  double diff = 0.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    diff = 0.0;
    for (int s = 0; s < ns; ++s) {
      next[s] = backup(model, res.v, s, nullptr);
      diff = std::max(diff, std::abs(next[s] - res.v[s]));
    }
    res.v.swap(next);
    if (diff <= stop) break;
  }
  if (it == max_iter)
    throw solver_error("value_iteration: no convergence after " +
                           std::to_string(max_iter) + " sweeps",
                       diff * beta / (1.0 - beta));

  res.iterations = it + 1;
  res.policy.assign(ns, 0);
  res.q.resize(ns);
  for (int s = 0; s < ns; ++s) {
    const auto& acts = model.outcomes[s];
    res.q[s].resize(acts.size());
    for (std::size_t a = 0; a < acts.size(); ++a) {
      double cont = 0.0;
      for (const Outcome& o : acts[a]) cont += o.prob * res.v[o.next_state];
      res.q[s][a] = model.expected_reward[s][a] + beta * cont;
    }
    backup(model, res.v, s, &res.policy[s]);
  }
  res.bellman_residual = bellman_residual(model, res.v);
  return res;
}

double hjb_residual(const ModelParams& params, const ValueTable& v) {
  const int n_price = params.n_price_states();
  const int n_inv = params.n_inventory_states();
  if (v.size() != static_cast<std::size_t>(n_price * n_inv))
    throw model_error("hjb_residual: value table size mismatch");

  const auto id = [&](int k, int y) {
    return (k - 1) * n_inv + (y + params.max_inventory);
  };

  double worst = 0.0;
  for (int k = 1; k <= n_price; ++k) {
    for (int y = -params.max_inventory; y <= params.max_inventory; ++y) {
      const State s{k, y};
      const double x = params.mid_price(k);
      double best = -std::numeric_limits<double>::infinity();
      for (const Action& a : available_actions(params, s)) {
        const RateMatrix& q =
            params.price_rates.rates(RateMatrixSpec::key_of(a));
        double val = expected_stage_rate(params, s, a);
        double outflow = 0.0;
        if (k > 1) {
          const double rate = q[k - 1][k - 2];
          val += rate * v[id(k - 1, y)];
          outflow += rate;
        }
        if (k < n_price) {
          const double rate = q[k - 1][k];
          val += rate * v[id(k + 1, y)];
          outflow += rate;
        }
        if (a.ask) {
          const double d = params.quote_price(*a.ask) - x;
          const double rate =
              params.fill_alpha * std::exp(-params.fill_kappa * d);
          val += rate * v[id(k, y - 1)];
          outflow += rate;
        }
        if (a.bid) {
          const double d = x - params.quote_price(*a.bid);
          const double rate =
              params.fill_alpha * std::exp(-params.fill_kappa * d);
          val += rate * v[id(k, y + 1)];
          outflow += rate;
        }
        val -= outflow * v[id(k, y)];
        best = std::max(best, val);
      }
      worst = std::max(worst, std::abs(params.discount_rate * v[id(k, y)] - best));
    }
  }
  return worst;
}

SweepReport delta_sweep(const ModelParams& params,
                        const std::vector<double>& dt_grid, double tol) {
  if (dt_grid.empty()) throw model_error("delta_sweep: empty dt grid");
  for (std::size_t i = 1; i < dt_grid.size(); ++i)
    if (dt_grid[i] > dt_grid[i - 1])
      throw model_error("delta_sweep: dt grid must be non-increasing");

  SweepReport report;
  report.rows.resize(dt_grid.size());
  for (std::size_t i = 0; i < dt_grid.size(); ++i) {
    SweepEntry& row = report.rows[i];
    row.dt = dt_grid[i];
    row.solution = value_iteration(build_discrete_model(params, dt_grid[i]),
                                   tol);
    row.hjb = hjb_residual(params, row.solution.v);
  }
  // Smallest dt is the reference; with a non-increasing grid it is the last.
  report.reference_index = static_cast<int>(dt_grid.size()) - 1;
  const SweepEntry& ref = report.rows[report.reference_index];
  for (SweepEntry& row : report.rows) {
    double dist = 0.0;
    for (std::size_t s = 0; s < row.solution.v.size(); ++s)
      dist = std::max(dist, std::abs(row.solution.v[s] - ref.solution.v[s]));
    row.sup_dist_to_ref = dist;
    row.policy_identical = row.solution.policy == ref.solution.policy;
  }
  return report;
}

}  // namespace mq
