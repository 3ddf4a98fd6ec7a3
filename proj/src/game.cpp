#include "lawnsec/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lawnsec/aoi.hpp"
#include "lawnsec/error.hpp"
#include "lawnsec/rng.hpp"

namespace lawnsec {

// ---- IsacGame -------------------------------------------------------------

IsacGame::IsacGame(ScenarioConfig cfg, std::vector<ChannelSet> realizations)
    : cfg_(std::move(cfg)), channels_(std::move(realizations)) {
  if (channels_.empty()) throw DomainError("IsacGame: no channel realizations");
}

Box IsacGame::g_box() const { return {0.0, cfg_.g_max}; }

Box IsacGame::sigma_box() const { return {0.0, sigma_att_max_w(cfg_)}; }

double IsacGame::gamma_sense(double g, double sigma_att_w) const {
  double gamma = std::numeric_limits<double>::infinity();
  for (const auto& ch : channels_)
    gamma = std::min(gamma, evaluate_links(ch, g, sigma_att_w, cfg_).gamma_sense);
  return gamma;
}

Box IsacGame::lambda_box(double g, double sigma_att_w) const {
  return {0.0, gamma_sense(g, sigma_att_w)};
}

Outcome IsacGame::evaluate(const Strategy& s) const {
  const auto k = static_cast<double>(channels_.size());
  std::vector<double> user_sinr(cfg_.n_users, 0.0);
  double aaoi_sum = 0.0;
  double asinr_sum = 0.0;
  double gamma_min = std::numeric_limits<double>::infinity();
  for (const auto& ch : channels_) {
    const LinkMetrics m = evaluate_links(ch, s.g, s.sigma_att_w, cfg_);
    double age = cfg_.aoi_penalty_s;
    if (s.lambda_rate > 0.0 && s.lambda_rate < m.gamma_sense)
      age = std::min(aaoi({s.lambda_rate, m.gamma_sense, cfg_.aoi_model}).aaoi_s, cfg_.aoi_penalty_s);
    aaoi_sum += age;
    asinr_sum += m.asinr;
    gamma_min = std::min(gamma_min, m.gamma_sense);
    for (int i = 0; i < cfg_.n_users; ++i) user_sinr[i] += m.user_sinr[i] / k;
  }
  Outcome out;
  out.aaoi_s = aaoi_sum / k;
  out.asinr = asinr_sum / k;
  out.gamma_sense = gamma_min;
  out.u = utilities(s, out.aaoi_s, out.asinr, user_sinr, cfg_);
  return out;
}

UtilityTriple utilities(const Strategy& s, double aaoi_s, double asinr,
                        const std::vector<double>& user_sinr, const ScenarioConfig& cfg) {
  double below = 0.0;
  double above = 0.0;
  if (cfg.sinr_penalty_weight > 0.0) {
    const double thr = std::pow(10.0, cfg.sinr_thresh_db / 10.0);
    for (double x : user_sinr) {
      below += std::max(0.0, thr - x);
      above += std::max(0.0, x - thr);
    }
  }
  const double w = cfg.sinr_penalty_weight;
  const double common = -cfg.zeta1 * aaoi_s + cfg.zeta2 * asinr;
  return {common - cfg.cost_bs * s.lambda_rate - w * below,
          common - cfg.cost_ris * s.g - w * below,
          -common - cfg.cost_att * s.sigma_att_w - w * above};
}

// ---- QuadraticGame --------------------------------------------------------

QuadraticGame::QuadraticGame(double a1, double a2, double a3, double c, Box lambda, Box g,
                             Box sigma)
    : a1_(a1), a2_(a2), a3_(a3), c_(c), lambda_(lambda), g_(g), sigma_(sigma) {}

Outcome QuadraticGame::evaluate(const Strategy& s) const {
  Outcome out;
  const double dl = s.lambda_rate - a1_ - c_ * s.g;
  const double dg = s.g - a2_ - c_ * s.sigma_att_w;
  const double ds = s.sigma_att_w - a3_ - c_ * s.lambda_rate;
  out.u = {-dl * dl, -dg * dg, -ds * ds};
  return out;
}

Strategy QuadraticGame::fixed_point() const {
  const double d = 1.0 - c_ * c_ * c_;
  return {(a1_ + c_ * a2_ + c_ * c_ * a3_) / d, (a2_ + c_ * a3_ + c_ * c_ * a1_) / d,
          (a3_ + c_ * a1_ + c_ * c_ * a2_) / d};
}

// ---- solvers --------------------------------------------------------------

std::string_view to_string(Termination t) {
  return t == Termination::Converged ? "converged" : "iteration_limit";
}

SolverOptions solver_options(const ScenarioConfig& cfg) {
  SolverOptions o;
  o.iter_max_inner = cfg.iter_max_inner;
  o.iter_max_outer = cfg.iter_max_outer;
  o.tol = cfg.tol;
  o.rollback = cfg.rollback;
  o.init_frac = {cfg.init_lambda_frac, cfg.init_g_frac, cfg.init_sigma_frac};
  return o;
}

ScalarMaximizer gsspi_maximizer(int iter_max) {
  return [iter_max](const std::function<double(double)>& f, Box box, double abs_tol) {
    if (!(box.width() > 0.0)) return box.lo;
    GsspiOptions o;
    o.iter_max = iter_max;
    o.abs_tol = abs_tol;
    return gsspi_minimize([&](double x) { return -f(x); }, box.lo, box.hi, o).x;
  };
}

namespace {

constexpr double kTieUlps = 64.0;

double scaled(double d, double width) { return width > 0.0 ? d / width : d; }

// Absolute line-search tolerances matching strategy_distance.
struct Tolerances {
  double lambda, g, sigma;
};

Tolerances tolerances(const GameModel& game, double tol) {
  const double gw = game.g_box().width();
  const double sw = game.sigma_box().width();
  return {tol, tol * (gw > 0.0 ? gw : 1.0), tol * (sw > 0.0 ? sw : 1.0)};
}

Strategy initial_strategy(const GameModel& game, const SolverOptions& opt) {
  if (opt.init) return *opt.init;
  Strategy s;
  s.g = game.g_box().at(opt.init_frac.g);
  s.sigma_att_w = game.sigma_box().at(opt.init_frac.sigma_att_w);
  s.lambda_rate = game.lambda_box(s.g, s.sigma_att_w).at(opt.init_frac.lambda_rate);
  return s;
}

TraceRow make_row(int iter, const Strategy& s, const UtilityTriple& accepted, const GameModel& game) {
  return {iter, s, accepted, game.evaluate(s)};
}

}  // namespace

double strategy_distance(const Strategy& a, const Strategy& b, const GameModel& game) {
  return std::max({std::abs(a.lambda_rate - b.lambda_rate),
                   scaled(std::abs(a.g - b.g), game.g_box().width()),
                   scaled(std::abs(a.sigma_att_w - b.sigma_att_w), game.sigma_box().width())});
}

GameTrace solve_stackelberg(const GameModel& game, const SolverOptions& opt,
                            const ScalarMaximizer& maximize_in) {
  const ScalarMaximizer maximize = maximize_in ? maximize_in : gsspi_maximizer(opt.iter_max_inner);
  const Tolerances tol = tolerances(game, opt.tol);

  GameTrace trace;
  Strategy s = initial_strategy(game, opt);
  const Outcome first = game.evaluate(s);
  UtilityTriple acc = first.u;
  trace.initial = {0, s, acc, first};

  // One follower or leader stage: `coord` is the player's action, `util`
  // extracts its utility and `accepted` holds its rollback reference.
  auto stage = [&](double Strategy::*coord, double UtilityTriple::*util, double& accepted, Box box,
                   double abs_tol) {
    const double old = s.*coord;
    auto f = [&](double x) {
      Strategy t = s;
      t.*coord = x;
      return game.evaluate(t).u.*util;
    };
    const double cand = box.clamp(maximize(f, box, abs_tol));
    const double u_new = f(cand);
    const double reference = opt.rollback == RollbackRule::Stale ? accepted : f(old);
    // Differences at rounding level count as ties; otherwise a player sitting
    // at its optimum could never move again under the stale rule.
    const double tie = kTieUlps * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(reference));
    if (u_new < reference - tie) {
      s.*coord = box.clamp(old);
      if (opt.rollback == RollbackRule::Incumbent) accepted = reference;
    } else {
      s.*coord = cand;
      accepted = opt.rollback == RollbackRule::Stale ? std::max(u_new, accepted) : u_new;
    }
  };

  for (int it = 1; it <= opt.iter_max_outer; ++it) {
    const Strategy prev = s;
    stage(&Strategy::lambda_rate, &UtilityTriple::u_bs, acc.u_bs,
          game.lambda_box(s.g, s.sigma_att_w), tol.lambda);
    stage(&Strategy::g, &UtilityTriple::u_ris, acc.u_ris, game.g_box(), tol.g);
    stage(&Strategy::sigma_att_w, &UtilityTriple::u_att, acc.u_att, game.sigma_box(), tol.sigma);
    trace.rows.push_back(make_row(it, s, acc, game));
    if (strategy_distance(prev, s, game) <= opt.tol) {
      trace.termination = Termination::Converged;
      break;
    }
  }
  return trace;
}

GameTrace solve_nash(const GameModel& game, const SolverOptions& opt) {
  const ScalarMaximizer maximize = gsspi_maximizer(opt.iter_max_inner);
  const Tolerances tol = tolerances(game, opt.tol);

  GameTrace trace;
  Strategy s = initial_strategy(game, opt);
  const Outcome first = game.evaluate(s);
  trace.initial = {0, s, first.u, first};

  auto best = [&](const Strategy& base, double Strategy::*coord, double UtilityTriple::*util,
                  Box box, double abs_tol) {
    auto f = [&](double x) {
      Strategy t = base;
      t.*coord = x;
      return game.evaluate(t).u.*util;
    };
    return box.clamp(maximize(f, box, abs_tol));
  };

  for (int it = 1; it <= opt.iter_max_outer; ++it) {
    const Strategy prev = s;
    s.lambda_rate = best(prev, &Strategy::lambda_rate, &UtilityTriple::u_bs,
                         game.lambda_box(prev.g, prev.sigma_att_w), tol.lambda);
    s.g = best(prev, &Strategy::g, &UtilityTriple::u_ris, game.g_box(), tol.g);
    s.sigma_att_w = best(prev, &Strategy::sigma_att_w, &UtilityTriple::u_att, game.sigma_box(), tol.sigma);
    // The rate must respect the capacity implied by the new gain and attack.
    s.lambda_rate = game.lambda_box(s.g, s.sigma_att_w).clamp(s.lambda_rate);
    const Outcome o = game.evaluate(s);
    trace.rows.push_back({it, s, o.u, o});
    if (strategy_distance(prev, s, game) <= opt.tol) {
      trace.termination = Termination::Converged;
      break;
    }
  }
  return trace;
}

UniquenessReport uniqueness_probe(const GameModel& game, const SolverOptions& opt, int n_starts,
                                  std::uint64_t seed, Execution ex) {
  if (n_starts < 1) throw DomainError("uniqueness_probe: need at least one start");
  UniquenessReport rep;
  rep.starts.resize(n_starts);
  for (int k = 0; k < n_starts; ++k) {
    Rng rng = make_rng(seed, 0x756e, k);
    Strategy& s = rep.starts[k];
    s.g = game.g_box().at(uniform01(rng));
    s.sigma_att_w = game.sigma_box().at(uniform01(rng));
    s.lambda_rate = game.lambda_box(s.g, s.sigma_att_w).at(uniform01(rng));
  }

  rep.finals.resize(n_starts);
  rep.utilities.resize(n_starts);
  for_each_index(static_cast<std::size_t>(n_starts), ex, [&](std::size_t k) {
    SolverOptions o = opt;
    o.init = rep.starts[k];
    const GameTrace t = solve_stackelberg(game, o);
    rep.finals[k] = t.final_row().strategy;
    rep.utilities[k] = t.final_row().outcome.u;
  });

  for (int a = 0; a < n_starts; ++a) {
    for (int b = a + 1; b < n_starts; ++b) {
      const double d = strategy_distance(rep.finals[a], rep.finals[b], game);
      if (d > rep.max_strategy_distance) {
        rep.max_strategy_distance = d;
        rep.worst_pair = {a, b};
      }
      const UtilityTriple& x = rep.utilities[a];
      const UtilityTriple& y = rep.utilities[b];
      rep.max_utility_distance =
          std::max({rep.max_utility_distance, std::abs(x.u_bs - y.u_bs), std::abs(x.u_ris - y.u_ris),
                    std::abs(x.u_att - y.u_att)});
    }
  }
  rep.multimodal = rep.max_strategy_distance > 100.0 * opt.tol;
  return rep;
}

}  // namespace lawnsec
