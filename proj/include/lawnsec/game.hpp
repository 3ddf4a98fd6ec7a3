#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lawnsec/channels.hpp"
#include "lawnsec/config.hpp"
#include "lawnsec/gsspi.hpp"
#include "lawnsec/isac.hpp"
#include "lawnsec/parallel.hpp"

namespace lawnsec {

struct Strategy {
  double lambda_rate = 0.0;
  double g = 0.0;
  double sigma_att_w = 0.0;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct UtilityTriple {
  double u_bs = 0.0;
  double u_ris = 0.0;
  double u_att = 0.0;

  friend bool operator==(const UtilityTriple&, const UtilityTriple&) = default;
};

struct Box {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double at(double frac) const { return lo + frac * (hi - lo); }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct Outcome {
  UtilityTriple u;
  double aaoi_s = 0.0;
  double asinr = 0.0;
  double gamma_sense = 0.0;
};

/// A three-player game with scalar actions: BS rate, RIS gain, attack power.
/// The BS box depends on the other two actions.
class GameModel {
 public:
  virtual ~GameModel() = default;
  virtual Outcome evaluate(const Strategy& s) const = 0;
  virtual Box lambda_box(double g, double sigma_att_w) const = 0;
  virtual Box g_box() const = 0;
  virtual Box sigma_box() const = 0;
};

/// The ISAC game over one or more channel realizations. Metrics are averaged
/// over realizations before utilities are formed; the BS box is bounded by the
/// smallest service rate. A rate outside (0, service rate) is charged
/// cfg.aoi_penalty_s instead of throwing, so line searches stay total.
class IsacGame final : public GameModel {
 public:
  IsacGame(ScenarioConfig cfg, std::vector<ChannelSet> realizations);

  Outcome evaluate(const Strategy& s) const override;
  Box lambda_box(double g, double sigma_att_w) const override;
  Box g_box() const override;
  Box sigma_box() const override;

  /// Smallest sensing service rate across realizations.
  double gamma_sense(double g, double sigma_att_w) const;

  const ScenarioConfig& config() const { return cfg_; }
  const std::vector<ChannelSet>& realizations() const { return channels_; }

 private:
  ScenarioConfig cfg_;
  std::vector<ChannelSet> channels_;
};

/// Utilities from metrics. The SINR penalty terms are zero unless
/// cfg.sinr_penalty_weight > 0: followers lose weight * sum(max(0, thr - sinr_i)),
/// the attacker loses weight * sum(max(0, sinr_i - thr)).
UtilityTriple utilities(const Strategy& s, double aaoi_s, double asinr,
                        const std::vector<double>& user_sinr, const ScenarioConfig& cfg);

/// u_bs = -(l - a1 - c g)^2, u_ris = -(g - a2 - c s)^2, u_att = -(s - a3 - c l)^2 on
/// fixed boxes. With |c| < 1 the sequential best responses converge to the
/// unique fixed point l = (a1 + c a2 + c^2 a3) / (1 - c^3), and so on cyclically.
class QuadraticGame final : public GameModel {
 public:
  QuadraticGame(double a1, double a2, double a3, double c, Box lambda, Box g, Box sigma);

  Outcome evaluate(const Strategy& s) const override;
  Box lambda_box(double, double) const override { return lambda_; }
  Box g_box() const override { return g_; }
  Box sigma_box() const override { return sigma_; }

  Strategy fixed_point() const;

 private:
  double a1_, a2_, a3_, c_;
  Box lambda_, g_, sigma_;
};

/// Maximizes f over a box to absolute accuracy abs_tol; returns the argmax.
using ScalarMaximizer =
    std::function<double(const std::function<double(double)>& f, Box box, double abs_tol)>;

struct SolverOptions {
  int iter_max_inner = 25;
  int iter_max_outer = 25;
  double tol = 1e-6;
  RollbackRule rollback = RollbackRule::Incumbent;
  Strategy init_frac{0.5, 0.5, 0.5};  // initial action as a fraction of each box
  std::optional<Strategy> init;         // explicit initial action, overrides init_frac
};

SolverOptions solver_options(const ScenarioConfig& cfg);

enum class Termination { Converged, IterationLimit };
std::string_view to_string(Termination t);

struct TraceRow {
  int iter = 0;
  Strategy strategy;
  UtilityTriple accepted;  // utilities kept by the rollback rule
  Outcome outcome;         // everything evaluated at `strategy`
};

struct GameTrace {
  TraceRow initial;
  std::vector<TraceRow> rows;
  Termination termination = Termination::IterationLimit;

  const TraceRow& final_row() const { return rows.empty() ? initial : rows.back(); }
};

/// Largest coordinate change, with lambda in absolute units, g relative to its
/// box width and the attack power relative to its box width.
double strategy_distance(const Strategy& a, const Strategy& b, const GameModel& game);

/// Backward induction: each outer iteration the BS, then the RIS, then the
/// attacker maximizes its own utility with the others fixed at their latest
/// actions. A new action is kept only if its utility is not below the
/// reference set by the rollback rule; differences within 64 ulps of the
/// reference count as ties and are accepted. Stops early once an iteration moves no
/// coordinate by more than tol (in strategy_distance units, which also set
/// the line-search tolerance). `maximize` defaults to the GSSPI line search.
GameTrace solve_stackelberg(const GameModel& game, const SolverOptions& opt,
                            const ScalarMaximizer& maximize = {});

/// Simultaneous best responses: all three players answer the previous iterate.
GameTrace solve_nash(const GameModel& game, const SolverOptions& opt);

/// Line-search maximizer built on gsspi_minimize.
ScalarMaximizer gsspi_maximizer(int iter_max);

struct UniquenessReport {
  std::vector<Strategy> starts;
  std::vector<Strategy> finals;
  std::vector<UtilityTriple> utilities;
  double max_strategy_distance = 0.0;
  double max_utility_distance = 0.0;
  std::pair<int, int> worst_pair{0, 0};
  bool multimodal = false;  // max_strategy_distance > 100 tol
};

/// Runs solve_stackelberg from n_starts uniform random initial strategies.
UniquenessReport uniqueness_probe(const GameModel& game, const SolverOptions& opt, int n_starts,
                                  std::uint64_t seed, Execution ex = Execution::Parallel);

}  // namespace lawnsec
