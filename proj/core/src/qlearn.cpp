#include "mq/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mq {

void LearnerConfig::validate() const {
  if (!(omega > 0.5 && omega < 1.0))
    throw model_error("learner: omega must lie in (0.5, 1)");
  if (!(q_init > 0)) throw model_error("learner: q_init must be positive");
  if (!(eps_floor > 0 && eps_floor <= 1))
    throw model_error("learner: eps_floor must lie in (0, 1]");
  if (!(eps_rho0 > 0 && eps_rho0 <= 1))
    throw model_error("learner: eps_rho0 must lie in (0, 1]");
  if (!(eps_rho > 0 && eps_rho < 1))
    throw model_error("learner: eps_rho must lie in (0, 1)");
  if (eps_epoch < 1) throw model_error("learner: eps_epoch must be >= 1");
}

double epsilon_value(const LearnerConfig& config, std::int64_t state_visits) {
  if (state_visits < 0)
    throw model_error("epsilon_value: negative visit count");
  const double decayed =
      config.eps_rho0 *
      std::pow(config.eps_rho,
               static_cast<double>(state_visits / config.eps_epoch));
  return std::max(config.eps_floor, decayed);
}

double learning_rate(double omega, std::int64_t sa_visits) {
  if (sa_visits < 1)
    throw model_error("learning_rate: update count must be >= 1");
  return std::pow(static_cast<double>(sa_visits), -omega);
}

double q_update(QTable& q, int s, int a, double reward, int s_next,
                double beta, double discount) {
  if (!(beta >= 0 && beta <= 1))
    throw model_error("q_update: beta must lie in [0, 1]");
  if (beta == 0.0) return q[s][a];
  const double v_next =
      *std::max_element(q[s_next].begin(), q[s_next].end());
  q[s][a] += beta * (reward + discount * v_next - q[s][a]);
  return q[s][a];
}

namespace {

int greedy_action(const std::vector<double>& q_row) {
  int best = 0;
  for (std::size_t a = 1; a < q_row.size(); ++a)
    if (q_row[a] > q_row[best]) best = static_cast<int>(a);
  return best;
}

State start_state(const DiscreteModel& model) {
  // Middle of the price grid, flat inventory.
  return State{model.params.n_price_levels, 0};
}

// Shared interaction loop. When stop_threshold >= 0 the loop exits at the
// first step whose sup-norm error is <= stop_threshold; when curve logging
// is on, checkpoints are appended every `stride` steps.
struct LoopResult {
  QlearnResult out;
  std::uint64_t crossed_at = 0;
  bool crossed = false;
};

LoopResult run_loop(const DiscreteModel& model, const LearnerConfig& config,
                    std::uint64_t seed, const ValueTable* v_ref,
                    const Policy* policy_ref, double stop_threshold,
                    bool log_curve) {
  config.validate();
  const int ns = model.n_states();

  LoopResult lr;
  QlearnResult& res = lr.out;
  res.q.resize(ns);
  res.visits.state_visits.assign(ns, 0);
  res.visits.sa_updates.resize(ns);
  for (int s = 0; s < ns; ++s) {
    res.q[s].assign(model.actions[s].size(), config.q_init);
    res.visits.sa_updates[s].assign(model.actions[s].size(), 0);
  }

  // Tracked sup-norm error against the reference values, maintained
  // incrementally: one Q entry changes per step, so only one state's error
  // moves; the global max is rescanned only when the argmax state improves.
  std::vector<double> err(ns, 0.0);
  double max_err = 0.0;
  const bool track_err = v_ref != nullptr;
  if (track_err) {
    for (int s = 0; s < ns; ++s) {
      err[s] = std::abs(config.q_init - (*v_ref)[s]);
      max_err = std::max(max_err, err[s]);
    }
  }

  const std::uint64_t stride =
      std::max<std::uint64_t>(1, (config.step_budget + 999) / 1000);
  const auto greedy_matches = [&]() {
    for (int s = 0; s < ns; ++s)
      if (greedy_action(res.q[s]) != (*policy_ref)[s]) return false;
    return true;
  };
  const auto log_point = [&](std::uint64_t n) {
    res.curve.step.push_back(n);
    res.curve.sup_error.push_back(max_err);
    res.curve.policy_match.push_back(policy_ref ? greedy_matches() : false);
  };

  if (log_curve && track_err) log_point(0);
  if (stop_threshold >= 0 && track_err && max_err <= stop_threshold) {
    lr.crossed = true;
    lr.crossed_at = 0;
    return lr;
  }

  Environment env(model, seed, start_state(model));
  RngStream explore(seed, "explore");

  for (std::uint64_t n = 0; n < config.step_budget; ++n) {
    const int s = env.state_id();
    const std::size_t n_actions = res.q[s].size();
    const double eps = epsilon_value(config, res.visits.state_visits[s]);
    int a;
    if (explore.uniform() < eps)
      a = static_cast<int>(explore.uniform_below(n_actions));
    else
      a = greedy_action(res.q[s]);

    res.visits.state_visits[s] += 1;
    const StepRecord rec = env.step_index(a);
    const int s2 = model.state_id(rec.next);

    res.visits.sa_updates[s][a] += 1;
    const double beta = learning_rate(config.omega, res.visits.sa_updates[s][a]);
    q_update(res.q, s, a, rec.reward, s2, beta, model.discount);
    res.steps = n + 1;

    if (track_err) {
      const double new_err =
          std::abs(*std::max_element(res.q[s].begin(), res.q[s].end()) -
                   (*v_ref)[s]);
      const double old_err = err[s];
      err[s] = new_err;
      if (new_err >= max_err) {
        max_err = new_err;
      } else if (old_err >= max_err) {
        max_err = 0.0;
        for (int i = 0; i < ns; ++i) max_err = std::max(max_err, err[i]);
      }
      if (stop_threshold >= 0 && max_err <= stop_threshold) {
        lr.crossed = true;
        lr.crossed_at = n + 1;
        if (log_curve) log_point(n + 1);
        return lr;
      }
    }
    if (log_curve && track_err && (n + 1) % stride == 0) log_point(n + 1);
  }
  if (log_curve && track_err && config.step_budget % stride != 0)
    log_point(config.step_budget);
  return lr;
}

}  // namespace

QlearnResult run_qlearning(const DiscreteModel& model,
                           const LearnerConfig& config, std::uint64_t seed,
                           const ValueTable* v_ref, const Policy* policy_ref) {
  return run_loop(model, config, seed, v_ref, policy_ref,
                  /*stop_threshold=*/-1.0, /*log_curve=*/true)
      .out;
}

ComplexityResult measure_sample_complexity(const DiscreteModel& model,
                                           const LearnerConfig& config,
                                           std::uint64_t seed,
                                           const ValueTable& v_star,
                                           double threshold) {
  if (!(threshold > 0))
    throw model_error("measure_sample_complexity: threshold must be positive");
  const LoopResult lr = run_loop(model, config, seed, &v_star, nullptr,
                                 threshold, /*log_curve=*/false);
  ComplexityResult res;
  res.reached = lr.crossed;
  res.n_delta = lr.crossed ? lr.crossed_at : config.step_budget;
  return res;
}

std::pair<double, double> complexity_bound_exponents(const ModelParams& params,
                                                     double omega) {
  if (!(omega > 0.5 && omega < 1.0))
    throw model_error("complexity_bound: omega must lie in (0.5, 1)");
  const double dim = params.n_price_states() + params.n_inventory_states();
  const double e1 = 6.0 - 2.0 / omega - dim * (3.0 + 1.0 / omega);
  const double e2 = (1.0 - dim) / (1.0 - omega);
  return {e1, e2};
}

double complexity_bound(const ModelParams& params, double dt, double omega,
                        double eps_v, double eps_floor) {
  if (!(dt > 0 && eps_v > 0 && eps_floor > 0))
    throw model_error("complexity_bound: inputs must be positive");
  const auto [e1, e2] = complexity_bound_exponents(params, omega);
  const double dim = params.n_price_states() + params.n_inventory_states();
  const double n_actions =
      static_cast<double>(params.n_price_levels + 1) *
      static_cast<double>(params.n_price_levels + 1);
  const double base = dim * n_actions / eps_floor;
  const double gamma = params.discount_rate;
  const double term1 = std::pow(base, 3.0 + 1.0 / omega) *
                       std::pow(eps_v, -2.0 / omega) *
                       std::pow(gamma, -4.0 / omega) * std::pow(dt, e1);
  const double term2 = std::pow(base, 1.0 / (1.0 - omega)) *
                       std::pow(gamma, -1.0 / (1.0 - omega)) *
                       std::pow(dt, e2);
  return term1 + term2;
}

}  // namespace mq
