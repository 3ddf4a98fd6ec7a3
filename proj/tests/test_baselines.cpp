#include <doctest.h>

#include <cmath>

#include "lawnsec/baselines.hpp"

using namespace lawnsec;

namespace {

// Rate box [0, 2]; gain box [0, 1]; attack box [0, 4e-14].
class FlatGame final : public GameModel {
 public:
  Outcome evaluate(const Strategy& s) const override {
    Outcome o;
    o.u = {-(s.lambda_rate - 1.2) * (s.lambda_rate - 1.2), -(s.g - 0.7) * (s.g - 0.7),
           -(s.sigma_att_w / 4e-14 - 0.1) * (s.sigma_att_w / 4e-14 - 0.1)};
    return o;
  }
  Box lambda_box(double, double) const override { return {0.0, 2.0}; }
  Box g_box() const override { return {0.0, 1.0}; }
  Box sigma_box() const override { return {0.0, 4e-14}; }
};

}  // namespace

TEST_CASE("average baseline takes box midpoints") {
  const FlatGame game;
  const BaselineResult r = solve_baseline(BaselineKind::Average, game, ScenarioConfig{}, 1);
  CHECK(r.strategy.lambda_rate == 1.0);
  CHECK(r.strategy.g == 0.5);
  CHECK(r.strategy.sigma_att_w == 2e-14);
}

TEST_CASE("random baseline is reproducible and inside the boxes") {
  const FlatGame game;
  const ScenarioConfig cfg;
  const BaselineResult a = solve_baseline(BaselineKind::Random, game, cfg, 17);
  const BaselineResult b = solve_baseline(BaselineKind::Random, game, cfg, 17);
  const BaselineResult c = solve_baseline(BaselineKind::Random, game, cfg, 18);
  CHECK(a.strategy == b.strategy);
  CHECK_FALSE(a.strategy == c.strategy);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Strategy s = solve_baseline(BaselineKind::Random, game, cfg, seed).strategy;
    CHECK(game.lambda_box(0, 0).contains(s.lambda_rate));
    CHECK(game.g_box().contains(s.g));
    CHECK(game.sigma_box().contains(s.sigma_att_w));
  }
}

TEST_CASE("GA finds a known optimum") {
  const GaResult r = ga_maximize([](double x) { return -(x - 2.0) * (x - 2.0); }, {0.0, 5.0},
                                 GaOptions{}, 5);
  CHECK(std::abs(r.x - 2.0) <= 1e-2);
  const GaResult p = ga_maximize([](double x) { return -(x - 2.0) * (x - 2.0); }, {0.0, 5.0},
                                 GaOptions{}, 5, Execution::Parallel);
  CHECK(p.x == r.x);
  CHECK(p.f == r.f);
}

TEST_CASE("GA baseline on a separable game") {
  const FlatGame game;
  const BaselineResult r = solve_baseline(BaselineKind::GA, game, ScenarioConfig{}, 9);
  CHECK(r.strategy.lambda_rate == doctest::Approx(1.2).epsilon(1e-2));
  CHECK(r.strategy.g == doctest::Approx(0.7).epsilon(1e-2));
  CHECK(std::abs(r.strategy.sigma_att_w / 4e-14 - 0.1) <= 1e-2);
  const BaselineResult again = solve_baseline(BaselineKind::GA, game, ScenarioConfig{}, 9);
  CHECK(again.strategy == r.strategy);
}
