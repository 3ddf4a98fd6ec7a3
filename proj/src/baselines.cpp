#include "lawnsec/baselines.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include "lawnsec/error.hpp"
#include "lawnsec/rng.hpp"

namespace lawnsec {

std::string_view to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::Average: return "average";
    case BaselineKind::Random: return "random";
    case BaselineKind::GA: return "ga";
  }
  return "?";
}

GaOptions ga_options(const ScenarioConfig& cfg) {
  GaOptions o;
  o.population = cfg.ga_population;
  o.generations = cfg.ga_generations;
  o.tournament = cfg.ga_tournament;
  o.crossover_rate = cfg.ga_crossover_rate;
  o.mutation_rate = cfg.ga_mutation_rate;
  o.mutation_scale = cfg.ga_mutation_scale;
  return o;
}

GaResult ga_maximize(const std::function<double(double)>& f, Box box, const GaOptions& opt,
                     std::uint64_t seed, Execution ex) {
  if (opt.population < 2 || opt.generations < 1 || opt.tournament < 1)
    throw DomainError("ga_maximize: invalid population settings");
  if (!(box.width() > 0.0)) return {box.lo, f(box.lo)};

  Rng rng(seed);
  const auto n = static_cast<std::size_t>(opt.population);
  std::vector<double> pop(n);
  std::vector<double> fit(n);
  for (auto& x : pop) x = box.at(uniform01(rng));

  auto evaluate = [&] { for_each_index(n, ex, [&](std::size_t i) { fit[i] = f(pop[i]); }); };
  auto pick = [&] {
    std::size_t best = static_cast<std::size_t>(uniform01(rng) * n);
    for (int k = 1; k < opt.tournament; ++k) {
      const auto c = static_cast<std::size_t>(uniform01(rng) * n);
      if (fit[c] > fit[best]) best = c;
    }
    return pop[best];
  };
  std::normal_distribution<double> gauss(0.0, opt.mutation_scale * box.width());

  evaluate();
  GaResult best{pop[0], fit[0]};
  for (std::size_t i = 1; i < n; ++i)
    if (fit[i] > best.f) best = {pop[i], fit[i]};

  std::vector<double> next(n);
  for (int gen = 0; gen < opt.generations; ++gen) {
    next[0] = best.x;
    for (std::size_t i = 1; i < n; ++i) {
      const double p1 = pick();
      const double p2 = pick();
      double child = p1;
      if (uniform01(rng) < opt.crossover_rate) {
        const double lo = std::min(p1, p2);
        const double hi = std::max(p1, p2);
        const double ext = opt.blend_alpha * (hi - lo);
        child = (lo - ext) + uniform01(rng) * (hi - lo + 2.0 * ext);
      }
      if (uniform01(rng) < opt.mutation_rate) child += gauss(rng);
      next[i] = box.clamp(child);
    }
    pop.swap(next);
    evaluate();
    for (std::size_t i = 0; i < n; ++i)
      if (fit[i] > best.f) best = {pop[i], fit[i]};
  }
  return best;
}

ScalarMaximizer ga_maximizer(const GaOptions& opt, std::uint64_t seed, Execution ex) {
  auto calls = std::make_shared<std::uint64_t>(0);
  return [opt, seed, ex, calls](const std::function<double(double)>& f, Box box, double) {
    return ga_maximize(f, box, opt, derive_seed(seed, 0x6761, (*calls)++), ex).x;
  };
}

BaselineResult solve_baseline(BaselineKind kind, const GameModel& game, const ScenarioConfig& cfg,
                              std::uint64_t seed, Execution ex) {
  BaselineResult r;
  switch (kind) {
    case BaselineKind::Average: {
      r.strategy.g = game.g_box().mid();
      r.strategy.sigma_att_w = game.sigma_box().mid();
      r.strategy.lambda_rate = game.lambda_box(r.strategy.g, r.strategy.sigma_att_w).mid();
      break;
    }
    case BaselineKind::Random: {
      Rng rng = make_rng(seed, 0x726e64);
      r.strategy.g = game.g_box().at(uniform01(rng));
      r.strategy.sigma_att_w = game.sigma_box().at(uniform01(rng));
      r.strategy.lambda_rate =
          game.lambda_box(r.strategy.g, r.strategy.sigma_att_w).at(uniform01(rng));
      break;
    }
    case BaselineKind::GA: {
      SolverOptions o = solver_options(cfg);
      o.iter_max_outer = cfg.ga_outer_iters;
      const GameTrace t = solve_stackelberg(game, o, ga_maximizer(ga_options(cfg), seed, ex));
      r.strategy = t.final_row().strategy;
      break;
    }
  }
  r.outcome = game.evaluate(r.strategy);
  return r;
}

}  // namespace lawnsec
