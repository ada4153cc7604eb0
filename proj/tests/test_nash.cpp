#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mq/nash.hpp"
#include "mq/rng.hpp"
#include "oracles.hpp"

using mq::BimatrixGame;
using mq::EquilibriumProfile;
using mq::GameSolution;
using mq::MixedStrategy;
using mq::NashLearnerConfig;

namespace {

// ---------------------------------------------------------------------------
// Independent verification helpers. These recompute everything from the raw
// payoff matrices with their own arithmetic (expectation loops and Cramer's
// rule), sharing no code with the production solver.

double expected_payoff(const std::vector<std::vector<double>>& m,
                       const MixedStrategy& row, const MixedStrategy& col) {
  double v = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i)
    for (std::size_t j = 0; j < col.size(); ++j)
      v += row[i] * col[j] * m[i][j];
  return v;
}

// Largest unilateral pure-deviation gain of either player.
double oracle_gap(const BimatrixGame& g, const MixedStrategy& row,
                  const MixedStrategy& col) {
  const double v1 = expected_payoff(g.a, row, col);
  const double v2 = expected_payoff(g.b, row, col);
  double gap = 0.0;
  for (int i = 0; i < g.rows(); ++i) {
    double dev = 0.0;
    for (int j = 0; j < g.cols(); ++j) dev += col[j] * g.a[i][j];
    gap = std::max(gap, dev - v1);
  }
  for (int j = 0; j < g.cols(); ++j) {
    double dev = 0.0;
    for (int i = 0; i < g.rows(); ++i) dev += row[i] * g.b[i][j];
    gap = std::max(gap, dev - v2);
  }
  return gap;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
         m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
         m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

// Solves M x = rhs by Cramer's rule for n in {1, 2, 3}. Returns false when
// the determinant is negligible.
bool cramer_solve(const std::vector<std::vector<double>>& m,
                  const std::vector<double>& rhs, std::vector<double>& x) {
  const std::size_t n = m.size();
  if (n == 1) {
    if (std::abs(m[0][0]) < 1e-12) return false;
    x = {rhs[0] / m[0][0]};
    return true;
  }
  if (n == 2) {
    const double d = det2(m[0][0], m[0][1], m[1][0], m[1][1]);
    if (std::abs(d) < 1e-12) return false;
    x = {det2(rhs[0], m[0][1], rhs[1], m[1][1]) / d,
         det2(m[0][0], rhs[0], m[1][0], rhs[1]) / d};
    return true;
  }
  std::array<std::array<double, 3>, 3> base{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) base[i][j] = m[i][j];
  const double d = det3(base);
  if (std::abs(d) < 1e-12) return false;
  x.assign(3, 0.0);
  for (int c = 0; c < 3; ++c) {
    auto mc = base;
    for (int i = 0; i < 3; ++i) mc[i][c] = rhs[i];
    x[c] = det3(mc) / d;
  }
  return true;
}

// Mixed strategy on `support` making the opponent indifferent across
// `opp_support` under payoff matrix m (opponent receives m, the mixing
// player owns the probabilities). transpose=false mixes over rows of m.
bool indifference_mix(const std::vector<std::vector<double>>& m,
                      const std::vector<int>& support,
                      const std::vector<int>& opp_support, bool transpose,
                      MixedStrategy& out, int full_dim) {
  const std::size_t k = support.size();
  // Equations: payoff(opp_support[t]) - payoff(opp_support[t+1]) = 0 for
  // t = 0..k-2, plus the normalization row of ones.
  std::vector<std::vector<double>> sys(k, std::vector<double>(k, 0.0));
  std::vector<double> rhs(k, 0.0);
  for (std::size_t t = 0; t + 1 < k; ++t) {
    for (std::size_t s = 0; s < k; ++s) {
      const double first = transpose ? m[opp_support[t]][support[s]]
                                     : m[support[s]][opp_support[t]];
      const double second = transpose ? m[opp_support[t + 1]][support[s]]
                                      : m[support[s]][opp_support[t + 1]];
      sys[t][s] = first - second;
    }
  }
  for (std::size_t s = 0; s < k; ++s) sys[k - 1][s] = 1.0;
  rhs[k - 1] = 1.0;

  std::vector<double> x;
  if (!cramer_solve(sys, rhs, x)) return false;
  out.assign(full_dim, 0.0);
  for (std::size_t s = 0; s < k; ++s) {
    if (x[s] < -1e-9) return false;
    out[support[s]] = std::max(0.0, x[s]);
  }
  double total = 0.0;
  for (double p : out) total += p;
  if (std::abs(total - 1.0) > 1e-9) return false;
  for (double& p : out) p /= total;
  return true;
}

// Exhaustive equal-size support enumeration; returns every certified
// equilibrium of a small bimatrix game. Random games from a continuous
// distribution are nondegenerate almost surely, so equal supports suffice.
std::vector<EquilibriumProfile> oracle_equilibria(const BimatrixGame& g,
                                                  double tol) {
  const int nr = g.rows();
  const int nc = g.cols();
  std::vector<std::vector<int>> supports_r, supports_c;
  for (int mask = 1; mask < (1 << nr); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < nr; ++i)
      if (mask & (1 << i)) s.push_back(i);
    supports_r.push_back(s);
  }
  for (int mask = 1; mask < (1 << nc); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < nc; ++j)
      if (mask & (1 << j)) s.push_back(j);
    supports_c.push_back(s);
  }

  std::vector<EquilibriumProfile> found;
  for (const auto& sr : supports_r) {
    for (const auto& sc : supports_c) {
      if (sr.size() != sc.size()) continue;
      MixedStrategy row, col;
      if (sr.size() == 1) {
        row.assign(nr, 0.0);
        col.assign(nc, 0.0);
        row[sr[0]] = 1.0;
        col[sc[0]] = 1.0;
      } else {
        // row mixes to equalize the column player's payoffs (matrix b) and
        // col mixes to equalize the row player's (matrix a).
        if (!indifference_mix(g.b, sr, sc, false, row, nr)) continue;
        if (!indifference_mix(g.a, sc, sr, true, col, nc)) continue;
      }
      if (oracle_gap(g, row, col) > tol) continue;
      EquilibriumProfile p;
      p.row = row;
      p.col = col;
      p.value_row = expected_payoff(g.a, row, col);
      p.value_col = expected_payoff(g.b, row, col);
      p.certificate = oracle_gap(g, row, col);
      bool duplicate = false;
      for (const auto& q : found) {
        double d = 0.0;
        for (int i = 0; i < nr; ++i) d = std::max(d, std::abs(q.row[i] - row[i]));
        for (int j = 0; j < nc; ++j) d = std::max(d, std::abs(q.col[j] - col[j]));
        if (d < 1e-7) duplicate = true;
      }
      if (!duplicate) found.push_back(std::move(p));
    }
  }
  return found;
}

BimatrixGame random_game(mq::RngStream& rng, int n) {
  BimatrixGame g;
  g.a.assign(n, std::vector<double>(n, 0.0));
  g.b.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.a[i][j] = 10.0 * rng.uniform() - 5.0;
      g.b[i][j] = 10.0 * rng.uniform() - 5.0;
    }
  return g;
}

}  // namespace

TEST_SUITE("nash") {

TEST_CASE("matching pennies selects the unique mixed equilibrium") {
  BimatrixGame g;
  g.a = {{1, -1}, {-1, 1}};
  g.b = {{-1, 1}, {1, -1}};
  const auto p = mq::solve_bimatrix(g);
  for (double v : p.row) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  for (double v : p.col) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.value_row == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.value_col == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.certificate <= 1e-9);
  CHECK(oracle_gap(g, p.row, p.col) <= 1e-9);
}

TEST_CASE("prisoner's dilemma selects mutual defection") {
  BimatrixGame g;
  g.a = {{-1, -3}, {0, -2}};
  g.b = {{-1, 0}, {-3, -2}};  // transpose of a
  const auto p = mq::solve_bimatrix(g);
  CHECK(p.row == MixedStrategy{0.0, 1.0});
  CHECK(p.col == MixedStrategy{0.0, 1.0});
  CHECK(p.value_row == doctest::Approx(-2.0));
  CHECK(p.value_col == doctest::Approx(-2.0));
  CHECK(mq::enumerate_equilibria(g).size() == 1);
}

TEST_CASE("battle of the sexes: pure-first lexicographic selection") {
  BimatrixGame g;
  g.a = {{3, 0}, {0, 2}};
  g.b = {{2, 0}, {0, 3}};
  const auto p = mq::solve_bimatrix(g);
  CHECK(p.row == MixedStrategy{1.0, 0.0});  // first pure equilibrium
  CHECK(p.col == MixedStrategy{1.0, 0.0});

  const auto all = mq::enumerate_equilibria(g);
  CHECK(all.size() == 3);
  bool found_mixed = false;
  for (const auto& e : all) {
    if (e.row[0] < 1.0 && e.row[0] > 0.0) {
      found_mixed = true;
      CHECK(e.row[0] == doctest::Approx(0.6).epsilon(1e-9));
      CHECK(e.col[0] == doctest::Approx(0.4).epsilon(1e-9));
    }
    CHECK(oracle_gap(g, e.row, e.col) <= 1e-8);
  }
  CHECK(found_mixed);
}

TEST_CASE("rock-paper-scissors mixes uniformly") {
  BimatrixGame g;
  g.a = {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
  g.b = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
  const auto p = mq::solve_bimatrix(g);
  for (double v : p.row)
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  for (double v : p.col)
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(oracle_gap(g, p.row, p.col) <= 1e-9);
}

TEST_CASE("constant games pick the first pure profile") {
  BimatrixGame g;
  g.a = {{1, 1}, {1, 1}};
  g.b = {{2, 2}, {2, 2}};
  const auto p = mq::solve_bimatrix(g);
  CHECK(p.row == MixedStrategy{1.0, 0.0});
  CHECK(p.col == MixedStrategy{1.0, 0.0});
}

TEST_CASE("selection is invariant to payoff shifts") {
  mq::RngStream rng(20240901, "shift");
  for (int t = 0; t < 50; ++t) {
    BimatrixGame g = random_game(rng, 3);
    BimatrixGame shifted = g;
    for (auto& row : shifted.a)
      for (double& v : row) v += 3.75;
    const auto p = mq::solve_bimatrix(g);
    const auto q = mq::solve_bimatrix(shifted);
    for (int i = 0; i < 3; ++i) {
      CHECK(p.row[i] == doctest::Approx(q.row[i]).epsilon(1e-9));
      CHECK(p.col[i] == doctest::Approx(q.col[i]).epsilon(1e-9));
    }
    CHECK(q.value_row == doctest::Approx(p.value_row + 3.75).epsilon(1e-9));
  }
}

TEST_CASE("200 random games agree with the exhaustive oracle") {
  mq::RngStream rng(777, "bimatrix");
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const BimatrixGame g = random_game(rng, 3);
    const auto p = mq::solve_bimatrix(g, 1e-9);

    // The selected profile certifies under independent arithmetic.
    CHECK(oracle_gap(g, p.row, p.col) <= 1e-8);

    // The oracle's enumeration contains the selected equilibrium.
    const auto all = oracle_equilibria(g, 1e-8);
    REQUIRE_FALSE(all.empty());
    bool matched = false;
    for (const auto& e : all) {
      double d = 0.0;
      for (int i = 0; i < 3; ++i) {
        d = std::max(d, std::abs(e.row[i] - p.row[i]));
        d = std::max(d, std::abs(e.col[i] - p.col[i]));
      }
      if (d <= 1e-6 && std::abs(e.value_row - p.value_row) <= 1e-8 &&
          std::abs(e.value_col - p.value_col) <= 1e-8)
        matched = true;
    }
    CHECK(matched);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("game value iteration reproduces the frozen equilibrium") {
  const auto model01 = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const auto sol01 = mq::game_value_iteration(model01, 1e-10);

  REQUIRE(sol01.v1.size() == 3);
  for (int s = 0; s < 3; ++s) {
    CHECK(std::abs(sol01.v1[s] - oracle::kGameValueDt01[s]) <= 1e-6);
    CHECK(std::abs(sol01.v1[s] - sol01.v2[s]) <= 1e-12);
    CHECK(sol01.equilibrium_count[s] == 1);
  }
  CHECK(sol01.iterations > 0);

  // Pure symmetric profile: widest ask, lowest bid at every state.
  REQUIRE(sol01.profiles.size() == 3);
  const auto is_pure_on = [](const MixedStrategy& m, int idx) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double want = (static_cast<int>(i) == idx) ? 1.0 : 0.0;
      if (std::abs(m[i] - want) > 1e-12) return false;
    }
    return true;
  };
  CHECK(is_pure_on(sol01.profiles[0].row, 1));  // actions[(1,0),(2,0)] -> (2,0)
  CHECK(is_pure_on(sol01.profiles[0].col, 1));
  CHECK(is_pure_on(sol01.profiles[1].row, 0));
  CHECK(is_pure_on(sol01.profiles[1].col, 0));
  CHECK(is_pure_on(sol01.profiles[2].row, 0));  // actions[(2,0),(2,1)] -> (2,0)
  CHECK(is_pure_on(sol01.profiles[2].col, 0));

  const auto model_fine =
      mq::build_game_model(oracle::desk_game_params(), 0.001);
  const auto sol_fine = mq::game_value_iteration(model_fine, 1e-10);
  for (int s = 0; s < 3; ++s) {
    CHECK(std::abs(sol_fine.v1[s] - oracle::kGameValueDt0001[s]) <= 1e-6);
    CHECK(is_pure_on(sol_fine.profiles[s].row,
                     s == 0 ? 1 : 0));  // same profile at the fine step
  }

  // Every profile certifies against an independently built continuation.
  for (int s = 1; s <= 3; ++s) {
    const auto stage = mq::continuation_game(model01, s, sol01.v1, sol01.v2);
    CHECK(oracle_gap(stage, sol01.profiles[s - 1].row,
                     sol01.profiles[s - 1].col) <= 1e-9);
  }
}

TEST_CASE("continuation game at zero values equals the stage rewards") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const std::vector<double> zeros(3, 0.0);
  for (int s = 1; s <= 3; ++s) {
    const auto g = mq::continuation_game(model, s, zeros, zeros);
    const auto& acts = model.actions[s - 1];
    for (std::size_t i = 0; i < acts.size(); ++i)
      for (std::size_t j = 0; j < acts.size(); ++j) {
        CHECK(g.a[i][j] ==
              doctest::Approx(model.cells[s - 1][i][j].reward1).epsilon(1e-14));
        CHECK(g.b[i][j] ==
              doctest::Approx(model.cells[s - 1][i][j].reward2).epsilon(1e-14));
      }
  }
}

TEST_CASE("zero-reward game solves to zero values") {
  auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  for (auto& state_cells : model.cells)
    for (auto& row : state_cells)
      for (auto& cell : row) {
        cell.reward1 = 0.0;
        cell.reward2 = 0.0;
      }
  const auto sol = mq::game_value_iteration(model, 1e-10);
  for (int s = 0; s < 3; ++s) {
    CHECK(std::abs(sol.v1[s]) <= 1e-9);
    CHECK(std::abs(sol.v2[s]) <= 1e-9);
    CHECK(sol.profiles[s].certificate <= 1e-9);
  }
}

TEST_CASE("iteration cap raises solver_error") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  CHECK_THROWS_AS(mq::game_value_iteration(model, 1e-10, 2),
                  mq::solver_error);
}

TEST_CASE("game optimality residuals match the frozen references") {
  const auto fine = mq::build_game_model(oracle::desk_game_params(), 0.001);
  const auto sol_fine = mq::game_value_iteration(fine, 1e-10);
  const auto res_fine = mq::game_hjb_residual(fine, sol_fine);
  CHECK(std::abs(res_fine[0] - oracle::kGameHjbDt0001) <= 1e-5);
  CHECK(std::abs(res_fine[1] - oracle::kGameHjbDt0001) <= 1e-5);
  CHECK(std::abs(res_fine[0] - res_fine[1]) <= 1e-9);

  const auto coarse = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const auto sol_coarse = mq::game_value_iteration(coarse, 1e-10);
  const auto res_coarse = mq::game_hjb_residual(coarse, sol_coarse);
  CHECK(std::abs(res_coarse[0] - oracle::kGameHjbDt01) <= 1e-5);

  // Perturbing the solution strictly increases the residual.
  GameSolution bent = sol_fine;
  bent.v1[1] += 0.05;
  const auto res_bent = mq::game_hjb_residual(fine, bent);
  CHECK(res_bent[0] > res_fine[0]);
}

TEST_CASE("single-state constant-rate game has zero residual at r/gamma") {
  mq::GameParams params = oracle::desk_game_params();
  params.n_price_levels = 1;
  params.price_rates = mq::RateMatrixSpec{{{0.0}}};
  params.intensity.minus.kind = mq::IntensityKind::constant;
  params.intensity.minus.value = 2.0;
  params.intensity.plus.kind = mq::IntensityKind::constant;
  params.intensity.plus.value = 1.0;

  const auto model = mq::build_game_model(params, 0.01);
  REQUIRE(model.n_states() == 1);
  REQUIRE(model.actions[0].size() == 1);

  // r = (1/6) * 2 + (1/6) * 2 = 2/3 per player.
  const double r = 2.0 / 3.0;
  GameSolution sol;
  sol.v1 = {r / params.discount_rate};
  sol.v2 = {r / params.discount_rate};
  EquilibriumProfile prof;
  prof.row = {1.0};
  prof.col = {1.0};
  prof.value_row = sol.v1[0];
  prof.value_col = sol.v2[0];
  sol.profiles = {prof};
  sol.equilibrium_count = {1};

  const auto res = mq::game_hjb_residual(model, sol);
  CHECK(std::abs(res[0]) <= 1e-12);
  CHECK(std::abs(res[1]) <= 1e-12);
}

TEST_CASE("nash learner config validation") {
  NashLearnerConfig c;
  CHECK_NOTHROW(c.validate());
  SUBCASE("eta0 zero is the frozen-learner debug preset") {
    c.eta0 = 0.0;
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("eta0 above one") {
    c.eta0 = 1.5;
    CHECK_THROWS_AS(c.validate(), mq::config_error);
  }
  SUBCASE("eta") {
    c.eta = 0.0;
    CHECK_THROWS_AS(c.validate(), mq::config_error);
  }
  SUBCASE("budget") {
    c.step_budget = 0;
    CHECK_THROWS_AS(c.validate(), mq::config_error);
  }
}

TEST_CASE("nash learner replays deterministically") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const auto reference = mq::game_value_iteration(model, 1e-10);
  NashLearnerConfig c;
  c.step_budget = 20000;
  const auto a = mq::run_nash_qlearning(model, c, 31, &reference);
  const auto b = mq::run_nash_qlearning(model, c, 31, &reference);
  const auto d = mq::run_nash_qlearning(model, c, 32, &reference);
  CHECK(a.q == b.q);
  CHECK(a.curve.step == b.curve.step);
  CHECK(a.curve.value_error[0] == b.curve.value_error[0]);
  CHECK(a.q != d.q);
}

TEST_CASE("frozen learner seeded with the reference stays exact") {
  // eta0 = 0 freezes every update; initializing the tables with the
  // reference continuation games pins both error curves at zero.
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const auto reference = mq::game_value_iteration(model, 1e-10);

  mq::NashQTables init;
  for (int k = 0; k < 2; ++k) init[k].resize(model.n_states());
  for (int s = 1; s <= model.n_states(); ++s) {
    const auto g = mq::continuation_game(model, s, reference.v1, reference.v2);
    init[0][s - 1] = g.a;
    init[1][s - 1] = g.b;
  }

  NashLearnerConfig c;
  c.eta0 = 0.0;
  c.step_budget = 5000;
  const auto res = mq::run_nash_qlearning(model, c, 77, &reference, &init);

  REQUIRE_FALSE(res.curve.step.empty());
  for (std::size_t i = 0; i < res.curve.step.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      CHECK(res.curve.policy_error[k][i] <= 1e-9);
      CHECK(res.curve.value_error[k][i] <= 1e-9);
    }
  }
  for (int s = 0; s < model.n_states(); ++s) {
    CHECK(std::abs(res.learned_values[0][s] - reference.v1[s]) <= 1e-9);
    CHECK(std::abs(res.learned_values[1][s] - reference.v2[s]) <= 1e-9);
  }
}

TEST_CASE("frozen learner keeps arbitrary tables flat") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const auto reference = mq::game_value_iteration(model, 1e-10);
  NashLearnerConfig c;
  c.eta0 = 0.0;
  c.q_init = 1.0;
  c.step_budget = 4000;
  const auto res = mq::run_nash_qlearning(model, c, 5, &reference);
  for (std::size_t i = 1; i < res.curve.step.size(); ++i)
    for (int k = 0; k < 2; ++k)
      CHECK(res.curve.value_error[k][i] == res.curve.value_error[k][0]);
}

TEST_CASE("learned stage profiles certify on the learned tables") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  NashLearnerConfig c;
  c.step_budget = 30000;
  const auto res = mq::run_nash_qlearning(model, c, 2024);
  for (int s = 0; s < model.n_states(); ++s) {
    BimatrixGame g{res.q[0][s], res.q[1][s]};
    CHECK(oracle_gap(g, res.learned_profiles[s].row,
                     res.learned_profiles[s].col) <= 1e-8);
  }
}

TEST_CASE("literal update rule runs and stays finite") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  NashLearnerConfig c;
  c.update_rule = NashLearnerConfig::UpdateRule::paper_literal;
  c.step_budget = 10000;
  const auto res = mq::run_nash_qlearning(model, c, 8);
  for (int k = 0; k < 2; ++k)
    for (const auto& state_q : res.q[k])
      for (const auto& row : state_q)
        for (const double v : row) CHECK(std::isfinite(v));
}

TEST_CASE("symmetric stage games select symmetric profiles") {
  const auto model = mq::build_game_model(oracle::desk_game_params(), 0.1);
  const auto sol = mq::game_value_iteration(model, 1e-10);
  for (int s = 1; s <= 3; ++s) {
    const auto g = mq::continuation_game(model, s, sol.v1, sol.v2);
    // Player symmetry of the game: b is the transpose of a.
    for (std::size_t i = 0; i < g.a.size(); ++i)
      for (std::size_t j = 0; j < g.a.size(); ++j)
        CHECK(g.a[i][j] == doctest::Approx(g.b[j][i]).epsilon(1e-12));
    const auto p = mq::solve_bimatrix(g);
    for (std::size_t i = 0; i < p.row.size(); ++i)
      CHECK(p.row[i] == doctest::Approx(p.col[i]).epsilon(1e-12));
  }
}

}  // TEST_SUITE
