#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "lawnsec/game.hpp"

namespace lawnsec {

enum class BaselineKind { Average, Random, GA };

std::string_view to_string(BaselineKind k);

struct GaOptions {
  int population = 50;
  int generations = 100;
  int tournament = 3;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;
  double mutation_scale = 0.05;  // standard deviation as a fraction of the box width
  double blend_alpha = 0.5;      // BLX-alpha crossover
};

GaOptions ga_options(const ScenarioConfig& cfg);

struct GaResult {
  double x = 0.0;
  double f = 0.0;
};

/// Real-coded GA maximizing f on a box: tournament selection, BLX-alpha
/// crossover, Gaussian mutation, one elite carried over per generation.
/// Fitness evaluations within a generation may run in parallel; the random
/// stream is consumed serially, so results do not depend on `ex`.
GaResult ga_maximize(const std::function<double(double)>& f, Box box, const GaOptions& opt,
                     std::uint64_t seed, Execution ex = Execution::Serial);

/// ScalarMaximizer running ga_maximize with a fresh stream per call.
ScalarMaximizer ga_maximizer(const GaOptions& opt, std::uint64_t seed,
                             Execution ex = Execution::Serial);

struct BaselineResult {
  Strategy strategy;
  Outcome outcome;
};

/// Average: box midpoints, the rate box taken at the midpoint gain and attack.
/// Random: uniform gain and attack, then a uniform rate in the implied box.
/// GA: the backward-induction loop with GA best responses, cfg.ga_outer_iters
/// outer iterations.
BaselineResult solve_baseline(BaselineKind kind, const GameModel& game, const ScenarioConfig& cfg,
                              std::uint64_t seed, Execution ex = Execution::Serial);

}  // namespace lawnsec
