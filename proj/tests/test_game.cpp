#include <doctest.h>

#include <cmath>
#include <vector>

#include "lawnsec/aoi.hpp"
#include "lawnsec/experiments.hpp"
#include "lawnsec/game.hpp"

using namespace lawnsec;

namespace {

QuadraticGame synthetic(double c) {
  return QuadraticGame(0.4, 0.3, 0.6, c, {0.0, 2.0}, {0.0, 1.0}, {0.0, 1.5});
}

bool accepted_monotone(const GameTrace& t) {
  UtilityTriple prev = t.initial.accepted;
  for (const TraceRow& r : t.rows) {
    if (r.accepted.u_bs < prev.u_bs || r.accepted.u_ris < prev.u_ris ||
        r.accepted.u_att < prev.u_att)
      return false;
    prev = r.accepted;
  }
  return true;
}

}  // namespace

TEST_CASE("utilities from metrics") {
  ScenarioConfig cfg;
  cfg.zeta1 = 1.0;
  cfg.zeta2 = 1.0;
  cfg.cost_bs = 1.0;
  cfg.cost_ris = 2.0;
  cfg.cost_att = 10.0;
  const Strategy s{0.5, 0.25, 0.0};
  const UtilityTriple u = utilities(s, 2.0, 1.0, {0.5, 1.5}, cfg);
  CHECK(u.u_bs == doctest::Approx(-1.5));
  CHECK(u.u_ris == doctest::Approx(-1.5));
  CHECK(u.u_att == doctest::Approx(1.0));

  cfg.sinr_penalty_weight = 2.0;
  cfg.sinr_thresh_db = 0.0;  // threshold 1
  const UtilityTriple p = utilities(s, 2.0, 1.0, {0.5, 1.5}, cfg);
  CHECK(p.u_bs == doctest::Approx(-1.5 - 2.0 * 0.5));
  CHECK(p.u_ris == doctest::Approx(-1.5 - 2.0 * 0.5));
  CHECK(p.u_att == doctest::Approx(1.0 - 2.0 * 0.5));
}

TEST_CASE("stale rollback is monotone from many starts") {
  for (double c : {0.0, 0.3, 0.5, -0.6}) {
    const QuadraticGame game = synthetic(c);
    for (double f : {0.0, 0.25, 0.9, 1.0}) {
      SolverOptions opt;
      opt.rollback = RollbackRule::Stale;
      opt.tol = 1e-9;
      opt.iter_max_outer = 60;
      opt.init_frac = {f, 1.0 - f, f};
      const GameTrace t = solve_stackelberg(game, opt);
      CHECK(accepted_monotone(t));
      CHECK(strategy_distance(t.final_row().strategy, game.fixed_point(), game) <= 1e-4);
    }
  }
}

TEST_CASE("synthetic game reaches its sequential equilibrium under both rollback rules") {
  const QuadraticGame game = synthetic(0.5);
  const Strategy fp = game.fixed_point();
  CHECK(fp.lambda_rate == doctest::Approx((0.4 + 0.5 * 0.3 + 0.25 * 0.6) / (1.0 - 0.125)));
  for (RollbackRule rule : {RollbackRule::Stale, RollbackRule::Incumbent}) {
    SolverOptions opt;
    opt.rollback = rule;
    opt.tol = 1e-9;
    opt.iter_max_outer = 60;
    const GameTrace t = solve_stackelberg(game, opt);
    const Strategy s = t.final_row().strategy;
    CHECK(std::abs(s.lambda_rate - fp.lambda_rate) <= 1e-4);
    CHECK(std::abs(s.g - fp.g) <= 1e-4);
    CHECK(std::abs(s.sigma_att_w - fp.sigma_att_w) <= 1e-4);
    if (rule == RollbackRule::Stale) CHECK(accepted_monotone(t));
    CHECK(t.termination == Termination::Converged);
  }
}

TEST_CASE("decoupled game: Nash equals Stackelberg equals the separate optima") {
  const QuadraticGame game = synthetic(0.0);
  SolverOptions opt;
  opt.tol = 1e-9;
  const Strategy st = solve_stackelberg(game, opt).final_row().strategy;
  const Strategy ne = solve_nash(game, opt).final_row().strategy;
  CHECK(st.lambda_rate == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(st.g == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(st.sigma_att_w == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(strategy_distance(st, ne, game) <= 1e-6);
}

TEST_CASE("optimum outside the box is clamped exactly to the bound") {
  const QuadraticGame game(3.0, -1.0, 0.6, 0.0, {0.0, 2.0}, {0.0, 1.0}, {0.0, 1.5});
  const Strategy s = solve_stackelberg(game, SolverOptions{}).final_row().strategy;
  CHECK(s.lambda_rate == 2.0);
  CHECK(s.g == 0.0);
}

TEST_CASE("strategy distance normalizes gain and attack by their boxes") {
  const QuadraticGame game(0, 0, 0, 0, {0.0, 2.0}, {0.0, 4.0}, {0.0, 1e-13});
  CHECK(strategy_distance({0.1, 0.0, 0.0}, {0.3, 0.0, 0.0}, game) == doctest::Approx(0.2));
  CHECK(strategy_distance({0.0, 1.0, 0.0}, {0.0, 2.0, 0.0}, game) == doctest::Approx(0.25));
  CHECK(strategy_distance({0.0, 0.0, 0.0}, {0.0, 0.0, 5e-14}, game) == doctest::Approx(0.5));
}

TEST_CASE("large service rate: the BS rate approaches the square-root rule") {
  ScenarioConfig cfg;
  const IsacGame game = make_game(cfg, cfg.seed);
  const double g = cfg.g_max;
  const Box box = game.lambda_box(g, 0.0);
  REQUIRE(box.hi >= 1e5);
  const ScalarMaximizer maximize = gsspi_maximizer(200);
  const double l = maximize(
      [&](double x) { return game.evaluate({x, g, 0.0}).u.u_bs; }, box, 1e-9);
  const double target = std::sqrt(cfg.zeta1 / cfg.cost_bs);
  CHECK(std::abs(l - target) <= 0.01 * target);
  CHECK(game.gamma_sense(g, 0.0) >= 1e5 * l);
}

TEST_CASE("unstable rates are charged the penalty instead of throwing") {
  const ScenarioConfig cfg;
  const IsacGame game = make_game(cfg, cfg.seed);
  const double gamma = game.gamma_sense(0.5, 0.0);
  CHECK(game.evaluate({gamma * 1.01, 0.5, 0.0}).aaoi_s == cfg.aoi_penalty_s);
  CHECK(game.evaluate({0.0, 0.5, 0.0}).aaoi_s == cfg.aoi_penalty_s);
  CHECK(game.evaluate({0.5, 0.5, 0.0}).aaoi_s ==
        doctest::Approx(aaoi({0.5, gamma, QueueModel::MM1}).aaoi_s));
}

TEST_CASE("default scenario: outputs stay in their boxes and runs repeat exactly") {
  const ScenarioConfig cfg;
  const IsacGame game = make_game(cfg, cfg.seed);
  const SolverOptions opt = solver_options(cfg);
  const GameTrace a = solve_stackelberg(game, opt);
  const GameTrace b = solve_stackelberg(game, opt);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const Strategy& s = a.rows[i].strategy;
    CHECK(s == b.rows[i].strategy);
    CHECK(game.g_box().contains(s.g));
    CHECK(game.sigma_box().contains(s.sigma_att_w));
    CHECK(s.lambda_rate >= 0.0);
    CHECK(s.lambda_rate <= game.lambda_box(s.g, s.sigma_att_w).hi);
  }
  CHECK(a.rows.size() <= 25);

  const GameTrace n1 = solve_nash(game, opt);
  const GameTrace n2 = solve_nash(game, opt);
  CHECK(n1.final_row().strategy == n2.final_row().strategy);
}

TEST_CASE("stale rollback keeps accepted utilities nondecreasing on the default scenario") {
  ScenarioConfig cfg;
  cfg.rollback = RollbackRule::Stale;
  const IsacGame game = make_game(cfg, cfg.seed);
  CHECK(accepted_monotone(solve_stackelberg(game, solver_options(cfg))));
}

TEST_CASE("uniqueness probe") {
  const QuadraticGame game = synthetic(0.5);
  SolverOptions opt;
  opt.tol = 1e-9;
  opt.iter_max_outer = 60;
  const UniquenessReport rep = uniqueness_probe(game, opt, 8, 3, Execution::Serial);
  CHECK(rep.starts.size() == 8);
  CHECK(rep.max_strategy_distance <= 1e-4);
  CHECK_FALSE(rep.multimodal);

  const UniquenessReport par = uniqueness_probe(game, opt, 8, 3, Execution::Parallel);
  for (int i = 0; i < 8; ++i) CHECK(par.finals[i] == rep.finals[i]);

  const UniquenessReport one = uniqueness_probe(game, opt, 1, 3);
  CHECK(one.max_strategy_distance == 0.0);
  CHECK(one.max_utility_distance == 0.0);
}
