#include "mq/model.hpp"

#include <cmath>
#include <sstream>

namespace mq {

namespace {

std::string key_str(const RateMatrixSpec::Key& key) {
  std::ostringstream os;
  os << "(" << key[0] << "," << key[1] << "," << key[2] << "," << key[3]
     << ")";
  return os.str();
}

void validate_one_matrix(const RateMatrix& m, std::size_t expected_dim,
                         double rate_bound, const std::string& label) {
  if (m.size() != expected_dim)
    throw model_error("rate matrix " + label + ": expected dimension " +
                      std::to_string(expected_dim) + ", got " +
                      std::to_string(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != expected_dim)
      throw model_error("rate matrix " + label + ": row " + std::to_string(i) +
                        " has wrong length");
    double row_sum = 0.0;
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const double v = m[i][j];
      if (!std::isfinite(v))
        throw model_error("rate matrix " + label + ": non-finite entry");
      row_sum += v;
      const bool on_band = (j + 1 == i) || (j == i) || (j == i + 1);
      if (!on_band && v != 0.0)
        throw model_error("rate matrix " + label + ": entry (" +
                          std::to_string(i) + "," + std::to_string(j) +
                          ") lies outside the tridiagonal band");
      if (on_band && j != i) {
        if (v <= 0.0 || v >= rate_bound)
          throw model_error("rate matrix " + label + ": rate (" +
                            std::to_string(i) + "," + std::to_string(j) +
                            ") = " + std::to_string(v) +
                            " outside (0, rate_bound)");
      }
    }
    if (std::abs(row_sum) > 1e-9)
      throw model_error("rate matrix " + label + ": row " + std::to_string(i) +
                        " sums to " + std::to_string(row_sum) + ", not 0");
  }
}

}  // namespace

void RateMatrixSpec::validate(std::size_t expected_dim,
                              double rate_bound) const {
  validate_one_matrix(base_, expected_dim, rate_bound, "base");
  for (const auto& [key, m] : overrides_)
    validate_one_matrix(m, expected_dim, rate_bound, key_str(key));
}

void ModelParams::validate() const {
  if (n_price_levels < 1) throw model_error("n_price_levels must be >= 1");
  if (max_inventory < 0) throw model_error("max_inventory must be >= 0");
  if (tick <= 0) throw model_error("tick must be positive");
  if (discount_rate <= 0) throw model_error("discount_rate must be positive");
  if (fill_alpha <= 0) throw model_error("fill_alpha must be positive");
  if (fill_kappa <= 0) throw model_error("fill_kappa must be positive");
  if (inventory_penalty < 0)
    throw model_error("inventory_penalty must be non-negative");
  if (transaction_cost < 0)
    throw model_error("transaction_cost must be non-negative");
  if (rate_bound <= 0) throw model_error("rate_bound must be positive");
  price_rates.validate(static_cast<std::size_t>(n_price_states()), rate_bound);
}

std::vector<Action> available_actions(const ModelParams& params,
                                      const State& s) {
  const int k = s.price_index;
  // Level l is strictly above mid iff l*tick > k*tick/2, i.e. 2l > k;
  // integer comparisons keep the strictness exact.
  std::vector<std::optional<int>> asks, bids;
  if (s.inventory > -params.max_inventory) {
    for (int l = 0; l <= params.n_price_levels; ++l)
      if (2 * l > k) asks.emplace_back(l);
  } else {
    asks.emplace_back(std::nullopt);
  }
  if (s.inventory < params.max_inventory) {
    for (int l = 0; l <= params.n_price_levels; ++l)
      if (2 * l < k) bids.emplace_back(l);
  } else {
    bids.emplace_back(std::nullopt);
  }
  std::vector<Action> out;
  out.reserve(asks.size() * bids.size());
  for (const auto& a : asks)
    for (const auto& b : bids) out.push_back(Action{a, b});
  return out;
}

RateMatrix price_transition_matrix(const ModelParams& params, double dt,
                                   const Action& a) {
  if (!(dt >= 0))
    throw model_error("price_transition_matrix: dt must be non-negative");
  const RateMatrix& q = params.price_rates.rates(RateMatrixSpec::key_of(a));
  const std::size_t n = q.size();
  RateMatrix p(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (i == j ? 1.0 : 0.0) + q[i][j] * dt;
      if (v < 0.0 || v > 1.0)
        throw model_error(
            "price_transition_matrix: entry (" + std::to_string(i) + "," +
            std::to_string(j) + ") = " + std::to_string(v) +
            " outside [0,1]; dt too coarse for these rates");
      p[i][j] = v;
    }
  }
  return p;
}

double fill_probability(const ModelParams& params, double dt,
                        double distance) {
  if (!(dt > 0)) throw model_error("fill_probability: dt must be positive");
  if (distance < 0)
    throw model_error("fill_probability: distance must be non-negative");
  const double p = params.fill_alpha * std::exp(-params.fill_kappa * distance) * dt;
  if (p > 1.0)
    throw model_error("fill_probability: " + std::to_string(p) +
                      " exceeds 1; dt too coarse for this fill intensity");
  return p;
}

namespace {

// Drift of the mid-price under action a: (up rate - down rate) * tick / 2,
// with rates outside the chain (boundary rows) treated as zero.
double price_drift(const ModelParams& params, int k, const Action& a) {
  const RateMatrix& q = params.price_rates.rates(RateMatrixSpec::key_of(a));
  const int n = params.n_price_states();
  const double up = (k < n) ? q[k - 1][k] : 0.0;
  const double down = (k > 1) ? q[k - 1][k - 2] : 0.0;
  return (up - down) * params.tick / 2.0;
}

double intensity(const ModelParams& params, double distance) {
  return params.fill_alpha * std::exp(-params.fill_kappa * distance);
}

}  // namespace

double expected_stage_rate(const ModelParams& params, const State& s,
                           const Action& a) {
  const double x = params.mid_price(s.price_index);
  const double y = s.inventory;
  double f = -params.inventory_penalty * y * y + y * price_drift(params, s.price_index, a);
  if (a.ask) {
    const double d = params.quote_price(*a.ask) - x;
    f += (d - params.transaction_cost) * intensity(params, d);
  }
  if (a.bid) {
    const double d = x - params.quote_price(*a.bid);
    f += (d - params.transaction_cost) * intensity(params, d);
  }
  return f;
}

double reward_given_outcome(const ModelParams& params, const State& s,
                            const Action& a, int n_ask, int n_bid,
                            double x_next, double dt) {
  if (n_ask != 0 && n_ask != 1)
    throw model_error("reward_given_outcome: n_ask must be 0 or 1");
  if (n_bid != 0 && n_bid != 1)
    throw model_error("reward_given_outcome: n_bid must be 0 or 1");
  if (n_ask == 1 && !a.ask)
    throw model_error("reward_given_outcome: ask fill without an ask quote");
  if (n_bid == 1 && !a.bid)
    throw model_error("reward_given_outcome: bid fill without a bid quote");
  const double x = params.mid_price(s.price_index);
  const double y = s.inventory;
  double r = (x_next - x) * y - params.inventory_penalty * y * y * dt;
  if (a.ask && n_ask)
    r += params.quote_price(*a.ask) - x - params.transaction_cost;
  if (a.bid && n_bid)
    r += x - params.quote_price(*a.bid) - params.transaction_cost;
  return r;
}

std::vector<std::pair<int, double>> DiscreteModel::kernel_row(int s,
                                                              int a) const {
  std::vector<double> mass(states.size(), 0.0);
  for (const Outcome& o : outcomes[s][a]) mass[o.next_state] += o.prob;
  std::vector<std::pair<int, double>> row;
  for (std::size_t j = 0; j < mass.size(); ++j)
    if (mass[j] > 0.0) row.emplace_back(static_cast<int>(j), mass[j]);
  return row;
}

DiscreteModel build_discrete_model(const ModelParams& params, double dt) {
  params.validate();
  if (!(dt > 0)) throw model_error("build_discrete_model: dt must be positive");

  DiscreteModel m;
  m.params = params;
  m.dt = dt;
  m.discount = std::exp(-params.discount_rate * dt);

  for (int k = 1; k <= params.n_price_states(); ++k)
    for (int y = -params.max_inventory; y <= params.max_inventory; ++y)
      m.states.push_back(State{k, y});

  const int ns = m.n_states();
  m.actions.resize(ns);
  m.outcomes.resize(ns);
  m.stage_rate.resize(ns);
  m.expected_reward.resize(ns);
  m.fill_prob_ask.resize(ns);
  m.fill_prob_bid.resize(ns);
  m.price_next.resize(ns);
  m.price_cdf.resize(ns);

  for (int si = 0; si < ns; ++si) {
    const State s = m.states[si];
    const double x = params.mid_price(s.price_index);
    m.actions[si] = available_actions(params, s);
    const std::size_t na = m.actions[si].size();
    m.outcomes[si].resize(na);
    m.stage_rate[si].resize(na);
    m.expected_reward[si].resize(na);
    m.fill_prob_ask[si].assign(na, 0.0);
    m.fill_prob_bid[si].assign(na, 0.0);
    m.price_next[si].resize(na);
    m.price_cdf[si].resize(na);

    for (std::size_t ai = 0; ai < na; ++ai) {
      const Action& a = m.actions[si][ai];
      const RateMatrix p = price_transition_matrix(params, dt, a);
      const double pa =
          a.ask ? fill_probability(params, dt, params.quote_price(*a.ask) - x)
                : 0.0;
      const double pb =
          a.bid ? fill_probability(params, dt, x - params.quote_price(*a.bid))
                : 0.0;
      m.fill_prob_ask[si][ai] = pa;
      m.fill_prob_bid[si][ai] = pb;

      double cum = 0.0;
      for (int k2 = 1; k2 <= params.n_price_states(); ++k2) {
        const double pp = p[s.price_index - 1][k2 - 1];
        if (pp <= 0.0) continue;
        cum += pp;
        m.price_next[si][ai].push_back(k2);
        m.price_cdf[si][ai].push_back(cum);

        for (int na_fill = 0; na_fill <= (a.ask ? 1 : 0); ++na_fill) {
          for (int nb_fill = 0; nb_fill <= (a.bid ? 1 : 0); ++nb_fill) {
            double prob = pp;
            if (a.ask) prob *= na_fill ? pa : 1.0 - pa;
            if (a.bid) prob *= nb_fill ? pb : 1.0 - pb;
            if (prob <= 0.0) continue;
            const State next{k2, s.inventory - na_fill + nb_fill};
            Outcome o;
            o.next_state = m.state_id(next);
            o.prob = prob;
            o.reward = reward_given_outcome(params, s, a, na_fill, nb_fill,
                                            params.mid_price(k2), dt);
            m.outcomes[si][ai].push_back(o);
          }
        }
      }
      double total = 0.0;
      for (const Outcome& o : m.outcomes[si][ai]) total += o.prob;
      if (std::abs(total - 1.0) > 1e-12)
        throw model_error("build_discrete_model: outcome probabilities sum to " +
                          std::to_string(total) + " at state " +
                          std::to_string(si));
      // Pin the cumulative table's last entry to 1 so sampling can never fall
      // off the end of the row.
      m.price_cdf[si][ai].back() = 1.0;
      m.stage_rate[si][ai] = expected_stage_rate(params, s, a);
      m.expected_reward[si][ai] = m.stage_rate[si][ai] * dt;
    }
  }
  return m;
}

}  // namespace mq
