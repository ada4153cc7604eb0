#include "mq/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mq/errors.hpp"

namespace mq {

namespace {

// Grid of distances that actually occur between quotes and mid-prices:
// multiples of tick/2 up to the full quote range.
std::vector<double> distance_grid(const GameParams& params) {
  std::vector<double> grid;
  for (int m = 0; m <= 2 * params.n_price_levels; ++m) {
    grid.push_back(m * params.tick / 2.0);
  }
  return grid;
}

std::vector<double> kernel_row(const RateMatrix& q, int row, double dt,
                               double rate_bound) {
  const int n = static_cast<int>(q.size());
  std::vector<double> p(n, 0.0);
  for (int col = 0; col < n; ++col) {
    p[col] = (row == col ? 1.0 : 0.0) + q[row][col] * dt;
    if (p[col] < -1e-12 || p[col] > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "price kernel entry out of [0, 1]: row " << row + 1 << ", value "
          << p[col] << "; decrease dt or the rates (bound " << rate_bound
          << ")";
      throw model_error(msg.str());
    }
    p[col] = std::min(1.0, std::max(0.0, p[col]));
  }
  return p;
}

}  // namespace

double IntensityFn::eval(double d) const {
  switch (kind) {
    case IntensityKind::exp_decay:
      return alpha * std::exp(-kappa * d);
    case IntensityKind::sqrt_exp:
      return scale * std::sqrt(1.0 + weight * std::exp(-kappa * d));
    case IntensityKind::constant:
      return value;
  }
  throw model_error("unknown intensity kind");
}

void GameParams::validate() const {
  if (n_price_levels < 1) throw model_error("n_price_levels must be >= 1");
  if (!(tick > 0.0)) throw model_error("tick must be positive");
  if (!(discount_rate > 0.0)) throw model_error("discount_rate must be positive");
  if (transaction_cost < 0.0) throw model_error("transaction_cost must be non-negative");
  if (!(rate_bound > 0.0)) throw model_error("rate_bound must be positive");
  price_rates.validate(n_price_states(), rate_bound);
  // The building blocks must be positive and bounded on the realizable
  // distance grid, and plus must stay away from zero.
  for (double d : distance_grid(*this)) {
    const double lo = intensity.minus.eval(d);
    const double hi = intensity.plus.eval(d);
    if (!(lo > 0.0) || !std::isfinite(lo)) {
      throw model_error("intensity.minus must be positive and finite on the quote grid");
    }
    if (!(hi > 1e-9) || !std::isfinite(hi)) {
      throw model_error("intensity.plus must be bounded away from zero on the quote grid");
    }
  }
}

double execution_intensity(const IntensitySpec& spec, double x, Side side,
                           double own_price, double rival_price) {
  if (side == Side::ask) {
    if (!(own_price > x)) {
      throw model_error("ask quote must be strictly above the mid-price");
    }
    const double best = std::min(own_price, rival_price);
    return spec.minus.eval(own_price - x) / spec.plus.eval(own_price - best);
  }
  if (!(own_price < x)) {
    throw model_error("bid quote must be strictly below the mid-price");
  }
  const double best = std::max(own_price, rival_price);
  return spec.minus.eval(x - own_price) / spec.plus.eval(best - own_price);
}

double game_stage_rate(const GameParams& params, int price_index,
                       const Action& a1, const Action& a2, int player) {
  if (price_index < 1 || price_index > params.n_price_states()) {
    throw model_error("price_index out of range");
  }
  if (player != 1 && player != 2) throw model_error("player must be 1 or 2");
  const Action& own = (player == 1) ? a1 : a2;
  const Action& rival = (player == 1) ? a2 : a1;
  if (!own.ask || !own.bid || !rival.ask || !rival.bid) {
    throw model_error("game actions must quote both sides");
  }
  const double x = params.mid_price(price_index);
  const double own_ask = params.quote_price(*own.ask);
  const double own_bid = params.quote_price(*own.bid);
  const double rival_ask = params.quote_price(*rival.ask);
  const double rival_bid = params.quote_price(*rival.bid);
  const double gamma_ask =
      execution_intensity(params.intensity, x, Side::ask, own_ask, rival_ask);
  const double gamma_bid =
      execution_intensity(params.intensity, x, Side::bid, own_bid, rival_bid);
  const double c = params.transaction_cost;
  return (own_ask - x - c) * gamma_ask + (x - own_bid - c) * gamma_bid;
}

GameModel build_game_model(const GameParams& params, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw model_error("dt must be positive");

  GameModel model;
  model.params = params;
  model.dt = dt;
  model.discount = std::exp(-params.discount_rate * dt);

  // Monotonicity checks on the realizable distance grid. A decreasing plus
  // (as in the reference two-dealer configuration) breaks the monotone
  // equilibrium-intensity assumption, so flag it instead of failing.
  const auto grid = distance_grid(params);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (params.intensity.minus.eval(grid[i + 1]) >
        params.intensity.minus.eval(grid[i]) + 1e-12) {
      model.warnings.push_back(
          "intensity.minus is not non-increasing on the quote grid");
      break;
    }
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (params.intensity.plus.eval(grid[i + 1]) <
        params.intensity.plus.eval(grid[i]) - 1e-12) {
      model.warnings.push_back(
          "intensity.plus is decreasing on the quote grid; the monotone "
          "equilibrium-intensity assumption does not hold");
      break;
    }
  }

  const int n_states = params.n_price_states();
  model.actions.resize(n_states);
  model.cells.resize(n_states);
  for (int k = 1; k <= n_states; ++k) {
    auto& acts = model.actions[k - 1];
    for (int la = 0; la <= params.n_price_levels; ++la) {
      if (2 * la <= k) continue;  // ask strictly above the mid
      for (int lb = 0; lb <= params.n_price_levels; ++lb) {
        if (2 * lb >= k) continue;  // bid strictly below the mid
        acts.push_back(Action{la, lb});
      }
    }
    if (acts.empty()) {
      throw model_error("no admissible joint quotes at some price state");
    }
  }

  for (int k = 1; k <= n_states; ++k) {
    const auto& acts = model.actions[k - 1];
    const double x = params.mid_price(k);
    const int n = static_cast<int>(acts.size());
    auto& rows = model.cells[k - 1];
    rows.resize(n);
    for (int i = 0; i < n; ++i) {
      rows[i].resize(n);
      for (int j = 0; j < n; ++j) {
        const Action& a1 = acts[i];
        const Action& a2 = acts[j];
        JointCell cell;
        cell.reward1 = game_stage_rate(params, k, a1, a2, 1) * dt;
        cell.reward2 = game_stage_rate(params, k, a1, a2, 2) * dt;

        const auto fill = [&](const Action& own, const Action& rival,
                              Side side) {
          const double own_p =
              params.quote_price(side == Side::ask ? *own.ask : *own.bid);
          const double rival_p =
              params.quote_price(side == Side::ask ? *rival.ask : *rival.bid);
          const double rate =
              execution_intensity(params.intensity, x, side, own_p, rival_p);
          const double prob = rate * dt;
          if (prob > 1.0 + 1e-12) {
            std::ostringstream msg;
            msg << "fill probability " << prob
                << " exceeds 1; dt too coarse for the quoted intensities";
            throw model_error(msg.str());
          }
          return std::min(1.0, prob);
        };
        cell.fill_ask1 = fill(a1, a2, Side::ask);
        cell.fill_bid1 = fill(a1, a2, Side::bid);
        cell.fill_ask2 = fill(a2, a1, Side::ask);
        cell.fill_bid2 = fill(a2, a1, Side::bid);

        const RateMatrix& q = params.price_rates.rates(
            RateMatrixSpec::key_of(a1, a2));
        const auto row = kernel_row(q, k - 1, dt, params.rate_bound);
        double acc = 0.0;
        for (int col = 0; col < n_states; ++col) {
          if (row[col] <= 0.0) continue;
          cell.price_next.push_back(col + 1);
          acc += row[col];
          cell.price_cdf.push_back(acc);
        }
        if (std::abs(acc - 1.0) > 1e-9) {
          throw model_error("price kernel row does not sum to 1");
        }
        if (!cell.price_cdf.empty()) cell.price_cdf.back() = 1.0;
        rows[i][j] = std::move(cell);
      }
    }
  }
  return model;
}

}  // namespace mq
