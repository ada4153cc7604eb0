#include "mq/nash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mq/errors.hpp"
#include "mq/game_env.hpp"

namespace mq {

namespace {

void check_shape(const BimatrixGame& game) {
  if (game.a.empty() || game.a[0].empty()) {
    throw solver_error("empty payoff matrix", 0.0);
  }
  const std::size_t m = game.a.size();
  const std::size_t n = game.a[0].size();
  if (game.b.size() != m) throw solver_error("payoff shape mismatch", 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (game.a[i].size() != n || game.b[i].size() != n) {
      throw solver_error("payoff shape mismatch", 0.0);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(game.a[i][j]) || !std::isfinite(game.b[i][j])) {
        throw solver_error("payoff matrix has non-finite entries", 0.0);
      }
    }
  }
}

// In-place Gaussian elimination with partial pivoting; false if singular.
bool solve_linear(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
  const int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return false;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const double f = m[row][col] / m[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  for (int i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return true;
}

// Least-squares solve of an overdetermined system via normal equations;
// false if the normal matrix is singular or the residual is not tiny.
bool solve_least_squares(const std::vector<std::vector<double>>& m,
                         const std::vector<double>& rhs,
                         std::vector<double>& out) {
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  std::vector<std::vector<double>> mtm(cols, std::vector<double>(cols, 0.0));
  std::vector<double> mtb(cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      mtb[j] += m[i][j] * rhs[i];
      for (int k = 0; k < cols; ++k) mtm[j][k] += m[i][j] * m[i][k];
    }
  }
  if (!solve_linear(mtm, mtb)) return false;
  for (int i = 0; i < rows; ++i) {
    double acc = -rhs[i];
    for (int j = 0; j < cols; ++j) acc += m[i][j] * mtb[j];
    if (std::abs(acc) > 1e-8) return false;  // inconsistent system
  }
  out = mtb;
  return true;
}

// Solves the indifference system of one player's support: the opponent mix
// over `opp_support` makes every own action in `own_support` indifferent at
// the common value. payoff(i, j) must give the own player's payoff.
template <typename Payoff>
bool support_mix(const std::vector<int>& own_support,
                 const std::vector<int>& opp_support, Payoff payoff,
                 std::vector<double>& mix, double& value) {
  const int r = static_cast<int>(own_support.size());
  const int c = static_cast<int>(opp_support.size());
  // Unknowns: c mix weights + the common value.
  std::vector<std::vector<double>> m;
  std::vector<double> rhs;
  for (int i = 0; i < r; ++i) {
    std::vector<double> row(c + 1, 0.0);
    for (int j = 0; j < c; ++j) row[j] = payoff(own_support[i], opp_support[j]);
    row[c] = -1.0;
    m.push_back(std::move(row));
    rhs.push_back(0.0);
  }
  std::vector<double> norm(c + 1, 0.0);
  for (int j = 0; j < c; ++j) norm[j] = 1.0;
  m.push_back(std::move(norm));
  rhs.push_back(1.0);

  std::vector<double> sol;
  if (static_cast<int>(m.size()) == c + 1) {
    auto mm = m;
    auto rr = rhs;
    if (!solve_linear(mm, rr)) return false;
    sol = rr;
  } else {
    if (!solve_least_squares(m, rhs, sol)) return false;
  }
  for (int j = 0; j < c; ++j) {
    if (sol[j] < -1e-9) return false;
  }
  double total = 0.0;
  for (int j = 0; j < c; ++j) {
    sol[j] = std::max(0.0, sol[j]);
    total += sol[j];
  }
  if (total < 1e-12) return false;
  for (int j = 0; j < c; ++j) sol[j] /= total;
  mix = std::vector<double>(sol.begin(), sol.begin() + c);
  value = sol[c];
  return true;
}

EquilibriumProfile make_profile(const BimatrixGame& game, MixedStrategy row,
                                MixedStrategy col) {
  EquilibriumProfile prof;
  prof.row = std::move(row);
  prof.col = std::move(col);
  double v1 = 0.0, v2 = 0.0;
  for (int i = 0; i < game.rows(); ++i) {
    for (int j = 0; j < game.cols(); ++j) {
      const double w = prof.row[i] * prof.col[j];
      v1 += w * game.a[i][j];
      v2 += w * game.b[i][j];
    }
  }
  prof.value_row = v1;
  prof.value_col = v2;
  prof.certificate = best_response_gap(game, prof.row, prof.col);
  return prof;
}

MixedStrategy pure_strategy(int n, int idx) {
  MixedStrategy s(n, 0.0);
  s[idx] = 1.0;
  return s;
}

// All index subsets of {0..n-1} of the given size, lexicographic.
std::vector<std::vector<int>> subsets_of_size(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == n - size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int t = pos + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

// Visits candidate profiles in the selection order (pure lexicographic, then
// supports by increasing total size) and hands each certified equilibrium to
// the sink; stops early when the sink returns true.
template <typename Sink>
void visit_equilibria(const BimatrixGame& game, double tol, Sink sink) {
  check_shape(game);
  const int m = game.rows();
  const int n = game.cols();

  std::vector<double> col_max(n, -std::numeric_limits<double>::infinity());
  std::vector<double> row_max(m, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      col_max[j] = std::max(col_max[j], game.a[i][j]);
      row_max[i] = std::max(row_max[i], game.b[i][j]);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (col_max[j] - game.a[i][j] <= tol && row_max[i] - game.b[i][j] <= tol) {
        if (sink(make_profile(game, pure_strategy(m, i), pure_strategy(n, j)))) {
          return;
        }
      }
    }
  }

  for (int total = 3; total <= m + n; ++total) {
    for (int r1 = std::max(1, total - n); r1 <= std::min(m, total - 1); ++r1) {
      const int r2 = total - r1;
      if (r1 == 1 && r2 == 1) continue;  // pure pass covered these
      for (const auto& s1 : subsets_of_size(m, r1)) {
        for (const auto& s2 : subsets_of_size(n, r2)) {
          MixedStrategy col_mix, row_mix;
          double v1 = 0.0, v2 = 0.0;
          if (!support_mix(s1, s2,
                           [&](int i, int j) { return game.a[i][j]; },
                           col_mix, v1)) {
            continue;
          }
          if (!support_mix(s2, s1,
                           [&](int j, int i) { return game.b[i][j]; },
                           row_mix, v2)) {
            continue;
          }
          MixedStrategy row(m, 0.0), col(n, 0.0);
          for (int t = 0; t < r1; ++t) row[s1[t]] = row_mix[t];
          for (int t = 0; t < r2; ++t) col[s2[t]] = col_mix[t];
          auto prof = make_profile(game, std::move(row), std::move(col));
          if (prof.certificate <= tol) {
            if (sink(std::move(prof))) return;
          }
        }
      }
    }
  }
}

}  // namespace

double best_response_gap(const BimatrixGame& game, const MixedStrategy& row,
                         const MixedStrategy& col) {
  check_shape(game);
  const int m = game.rows();
  const int n = game.cols();
  if (static_cast<int>(row.size()) != m || static_cast<int>(col.size()) != n) {
    throw solver_error("strategy length mismatch", 0.0);
  }
  double v1 = 0.0, v2 = 0.0;
  double best1 = -std::numeric_limits<double>::infinity();
  double best2 = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double payoff_row_i = 0.0;
    for (int j = 0; j < n; ++j) payoff_row_i += col[j] * game.a[i][j];
    best1 = std::max(best1, payoff_row_i);
    v1 += row[i] * payoff_row_i;
  }
  for (int j = 0; j < n; ++j) {
    double payoff_col_j = 0.0;
    for (int i = 0; i < m; ++i) payoff_col_j += row[i] * game.b[i][j];
    best2 = std::max(best2, payoff_col_j);
    v2 += col[j] * payoff_col_j;
  }
  return std::max(best1 - v1, best2 - v2);
}

EquilibriumProfile solve_bimatrix(const BimatrixGame& game, double tol) {
  EquilibriumProfile found;
  bool have = false;
  visit_equilibria(game, tol, [&](EquilibriumProfile prof) {
    found = std::move(prof);
    have = true;
    return true;
  });
  if (!have) {
    throw solver_error(
        "no equilibrium passed the certificate at the requested tolerance",
        tol);
  }
  return found;
}

std::vector<EquilibriumProfile> enumerate_equilibria(const BimatrixGame& game,
                                                     double tol) {
  std::vector<EquilibriumProfile> out;
  visit_equilibria(game, tol, [&](EquilibriumProfile prof) {
    for (const auto& seen : out) {
      double dist = 0.0;
      for (std::size_t i = 0; i < prof.row.size(); ++i) {
        dist = std::max(dist, std::abs(prof.row[i] - seen.row[i]));
      }
      for (std::size_t j = 0; j < prof.col.size(); ++j) {
        dist = std::max(dist, std::abs(prof.col[j] - seen.col[j]));
      }
      if (dist < 1e-7) return false;  // duplicate
    }
    out.push_back(std::move(prof));
    return false;
  });
  return out;
}

BimatrixGame continuation_game(const GameModel& model, int state,
                               const std::vector<double>& v1,
                               const std::vector<double>& v2) {
  const auto& acts = model.actions[state - 1];
  const int n = static_cast<int>(acts.size());
  BimatrixGame game;
  game.a.assign(n, std::vector<double>(n, 0.0));
  game.b.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const JointCell& cell = model.cells[state - 1][i][j];
      double ev1 = 0.0, ev2 = 0.0;
      double prev = 0.0;
      for (std::size_t t = 0; t < cell.price_next.size(); ++t) {
        const double p = cell.price_cdf[t] - prev;
        prev = cell.price_cdf[t];
        ev1 += p * v1[cell.price_next[t] - 1];
        ev2 += p * v2[cell.price_next[t] - 1];
      }
      game.a[i][j] = cell.reward1 + model.discount * ev1;
      game.b[i][j] = cell.reward2 + model.discount * ev2;
    }
  }
  return game;
}

GameSolution game_value_iteration(const GameModel& model, double tol,
                                  int max_iter) {
  const int n = model.n_states();
  GameSolution sol;
  sol.v1.assign(n, 0.0);
  sol.v2.assign(n, 0.0);
  sol.profiles.resize(n);

  int calm_sweeps = 0;
  double last_move = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < max_iter; ++sweep) {
    std::vector<double> next1(n), next2(n);
    for (int s = 1; s <= n; ++s) {
      const auto prof =
          solve_bimatrix(continuation_game(model, s, sol.v1, sol.v2));
      next1[s - 1] = prof.value_row;
      next2[s - 1] = prof.value_col;
      sol.profiles[s - 1] = prof;
    }
    double move = 0.0;
    for (int s = 0; s < n; ++s) {
      move = std::max(move, std::abs(next1[s] - sol.v1[s]));
      move = std::max(move, std::abs(next2[s] - sol.v2[s]));
    }
    sol.v1 = std::move(next1);
    sol.v2 = std::move(next2);
    sol.iterations = sweep + 1;
    last_move = move;
    calm_sweeps = move < tol ? calm_sweeps + 1 : 0;
    if (calm_sweeps >= 3) break;
  }
  if (calm_sweeps < 3) {
    throw solver_error("game value iteration did not converge", last_move);
  }

  // Final pass: re-solve every state at the converged values so profiles and
  // values are mutually consistent, re-check the certificate independently,
  // and census the equilibria.
  sol.equilibrium_count.assign(n, 0);
  for (int s = 1; s <= n; ++s) {
    const auto game = continuation_game(model, s, sol.v1, sol.v2);
    const auto prof = solve_bimatrix(game);
    const double gap = best_response_gap(game, prof.row, prof.col);
    if (gap > 1e-6) {
      throw solver_error("converged profile failed the equilibrium certificate",
                         gap);
    }
    sol.equilibrium_count[s - 1] =
        static_cast<int>(enumerate_equilibria(game).size());
    sol.profiles[s - 1] = prof;
  }
  for (int s = 0; s < n; ++s) {
    sol.v1[s] = sol.profiles[s].value_row;
    sol.v2[s] = sol.profiles[s].value_col;
  }
  return sol;
}

std::array<double, 2> game_hjb_residual(const GameModel& model,
                                        const GameSolution& solution) {
  const GameParams& params = model.params;
  const int n = model.n_states();
  std::array<double, 2> residual{0.0, 0.0};
  for (int player = 1; player <= 2; ++player) {
    const auto& v = player == 1 ? solution.v1 : solution.v2;
    double worst = 0.0;
    for (int k = 1; k <= n; ++k) {
      const auto& acts = model.actions[k - 1];
      const MixedStrategy& rival_mix = player == 1
                                           ? solution.profiles[k - 1].col
                                           : solution.profiles[k - 1].row;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t own = 0; own < acts.size(); ++own) {
        double total = 0.0;
        for (std::size_t riv = 0; riv < acts.size(); ++riv) {
          const double w = rival_mix[riv];
          if (w == 0.0) continue;
          const Action& a1 = player == 1 ? acts[own] : acts[riv];
          const Action& a2 = player == 1 ? acts[riv] : acts[own];
          double cell = game_stage_rate(params, k, a1, a2, player);
          const RateMatrix& q =
              params.price_rates.rates(RateMatrixSpec::key_of(a1, a2));
          for (int col = 0; col < n; ++col) {
            cell += q[k - 1][col] * v[col];
          }
          total += w * cell;
        }
        best = std::max(best, total);
      }
      worst = std::max(worst,
                       std::abs(params.discount_rate * v[k - 1] - best));
    }
    residual[player - 1] = worst;
  }
  return residual;
}

void NashLearnerConfig::validate() const {
  if (!(eta0 >= 0.0) || eta0 > 1.0) {
    throw config_error("eta0 must lie in [0, 1]");
  }
  if (!(eta > 0.0) || eta > 1.0) throw config_error("eta must lie in (0, 1]");
  if (rate_epoch < 1) throw config_error("rate_epoch must be >= 1");
  if (!std::isfinite(q_init)) throw config_error("q_init must be finite");
  if (!(eps_floor >= 0.0) || eps_floor > 1.0) {
    throw config_error("eps_floor must lie in [0, 1]");
  }
  if (!(eps_rho0 >= 0.0) || eps_rho0 > 1.0) {
    throw config_error("eps_rho0 must lie in [0, 1]");
  }
  if (!(eps_rho > 0.0) || eps_rho > 1.0) {
    throw config_error("eps_rho must lie in (0, 1]");
  }
  if (eps_epoch < 1) throw config_error("eps_epoch must be >= 1");
  if (step_budget < 1) throw config_error("step_budget must be >= 1");
}

namespace {

// Per-state stage equilibrium of the learned Q tables, recomputed lazily.
class StageCache {
 public:
  StageCache(int n_states) : dirty_(n_states, true), profs_(n_states) {}

  const EquilibriumProfile& get(
      int state,
      const std::array<std::vector<std::vector<std::vector<double>>>, 2>& q) {
    if (dirty_[state - 1]) {
      BimatrixGame game{q[0][state - 1], q[1][state - 1]};
      profs_[state - 1] = solve_bimatrix(game);
      dirty_[state - 1] = false;
    }
    return profs_[state - 1];
  }

  void invalidate(int state) { dirty_[state - 1] = true; }

 private:
  std::vector<char> dirty_;
  std::vector<EquilibriumProfile> profs_;
};

int sample_mix(const MixedStrategy& mix, RngStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    acc += mix[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(mix.size()) - 1;
}

}  // namespace

NashQResult run_nash_qlearning(const GameModel& model,
                               const NashLearnerConfig& config,
                               std::uint64_t seed,
                               const GameSolution* reference,
                               const NashQTables* initial_q) {
  config.validate();
  const int n = model.n_states();

  NashQResult result;
  for (int k = 0; k < 2; ++k) {
    result.q[k].resize(n);
    for (int s = 0; s < n; ++s) {
      const int na = static_cast<int>(model.actions[s].size());
      result.q[k][s].assign(na, std::vector<double>(na, config.q_init));
    }
  }
  if (initial_q != nullptr) {
    for (int k = 0; k < 2; ++k) {
      if (static_cast<int>((*initial_q)[k].size()) != n) {
        throw model_error("initial_q table has the wrong number of states");
      }
      for (int s = 0; s < n; ++s) {
        const std::size_t na = model.actions[s].size();
        const auto& src = (*initial_q)[k][s];
        if (src.size() != na) {
          throw model_error("initial_q table has the wrong action count");
        }
        for (const auto& row : src) {
          if (row.size() != na) {
            throw model_error("initial_q table has the wrong action count");
          }
        }
        result.q[k][s] = src;
      }
    }
  }

  std::vector<std::uint64_t> state_visits(n, 0);
  std::vector<std::vector<std::vector<std::uint64_t>>> joint_updates(n);
  for (int s = 0; s < n; ++s) {
    const int na = static_cast<int>(model.actions[s].size());
    joint_updates[s].assign(na, std::vector<std::uint64_t>(na, 0));
  }

  StageCache cache(n);
  GameEnvironment env(model, seed);
  RngStream explore(seed, "explore");

  const std::uint64_t budget = config.step_budget;
  const std::uint64_t stride = std::max<std::uint64_t>(1, (budget + 999) / 1000);

  const auto log_point = [&](std::uint64_t step) {
    if (reference == nullptr) return;
    std::array<double, 2> value_err{0.0, 0.0};
    std::array<double, 2> policy_err{0.0, 0.0};
    for (int s = 1; s <= n; ++s) {
      const auto& prof = cache.get(s, result.q);
      const auto& ref = reference->profiles[s - 1];
      value_err[0] = std::max(value_err[0],
                              std::abs(prof.value_row - reference->v1[s - 1]));
      value_err[1] = std::max(value_err[1],
                              std::abs(prof.value_col - reference->v2[s - 1]));
      for (std::size_t a = 0; a < prof.row.size(); ++a) {
        policy_err[0] =
            std::max(policy_err[0], std::abs(prof.row[a] - ref.row[a]));
        policy_err[1] =
            std::max(policy_err[1], std::abs(prof.col[a] - ref.col[a]));
      }
    }
    result.curve.step.push_back(step);
    for (int k = 0; k < 2; ++k) {
      result.curve.value_error[k].push_back(value_err[k]);
      result.curve.policy_error[k].push_back(policy_err[k]);
    }
  };

  std::uint64_t last_logged = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t step = 0; step < budget; ++step) {
    if (step % stride == 0) {
      log_point(step);
      last_logged = step;
    }
    const int s = env.state();
    const auto& prof = cache.get(s, result.q);
    const int na = static_cast<int>(model.actions[s - 1].size());

    const double power =
        std::pow(config.eps_rho,
                 static_cast<double>(state_visits[s - 1] /
                                     static_cast<std::uint64_t>(config.eps_epoch)));
    const double eps = std::max(config.eps_floor, config.eps_rho0 * power);

    int i, j;
    if (explore.uniform() < eps) {
      const int joint = static_cast<int>(explore.uniform_below(
          static_cast<std::uint64_t>(na) * static_cast<std::uint64_t>(na)));
      i = joint / na;
      j = joint % na;
    } else {
      i = sample_mix(prof.row, explore);
      j = sample_mix(prof.col, explore);
    }
    ++state_visits[s - 1];

    const auto rec = env.step_index(i, j);
    const int s_next = rec.next_state;
    const auto& prof_next = cache.get(s_next, result.q);

    const double beta =
        config.eta0 *
        std::pow(config.eta,
                 static_cast<double>(joint_updates[s - 1][i][j] /
                                     static_cast<std::uint64_t>(config.rate_epoch)));
    ++joint_updates[s - 1][i][j];

    if (config.update_rule == NashLearnerConfig::UpdateRule::standard) {
      const double target1 = rec.reward1 + model.discount * prof_next.value_row;
      const double target2 = rec.reward2 + model.discount * prof_next.value_col;
      result.q[0][s - 1][i][j] += beta * (target1 - result.q[0][s - 1][i][j]);
      result.q[1][s - 1][i][j] += beta * (target2 - result.q[1][s - 1][i][j]);
    } else {
      const int ahat1 = sample_mix(prof_next.row, explore);
      const int ahat2 = sample_mix(prof_next.col, explore);
      const double q1_next = result.q[0][s_next - 1][ahat1][ahat2];
      const double q2_next = result.q[1][s_next - 1][ahat1][ahat2];
      result.q[0][s - 1][i][j] =
          rec.reward1 + beta * (q1_next - result.q[0][s - 1][i][j]);
      result.q[1][s - 1][i][j] =
          rec.reward2 + beta * (q2_next - result.q[1][s - 1][i][j]);
    }
    cache.invalidate(s);
  }

  if (last_logged != budget) log_point(budget);

  result.learned_profiles.resize(n);
  for (int k = 0; k < 2; ++k) result.learned_values[k].resize(n);
  for (int s = 1; s <= n; ++s) {
    const auto& prof = cache.get(s, result.q);
    result.learned_profiles[s - 1] = prof;
    result.learned_values[0][s - 1] = prof.value_row;
    result.learned_values[1][s - 1] = prof.value_col;
  }
  result.steps = budget;
  return result;
}

}  // namespace mq
