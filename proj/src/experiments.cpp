#include "lawnsec/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lawnsec/aoi.hpp"
#include "lawnsec/rng.hpp"
#include "lawnsec/error.hpp"

#ifndef LAWNSEC_VERSION
#define LAWNSEC_VERSION "unknown"
#endif

namespace lawnsec {

std::string_view version() { return LAWNSEC_VERSION; }

namespace {

struct SchemeName {
  Scheme scheme;
  std::string_view name;
};
constexpr SchemeName kSchemes[] = {{Scheme::Stackelberg, "stackelberg"},
                                   {Scheme::Nash, "nash"},
                                   {Scheme::Average, "average"},
                                   {Scheme::Random, "random"},
                                   {Scheme::GA, "ga"}};

struct ParamName {
  SweepParam param;
  std::string_view name;
};
constexpr ParamName kParams[] = {{SweepParam::RisElements, "ris_elements"},
                                 {SweepParam::TxAntennas, "tx_antennas"},
                                 {SweepParam::EpsilonSi, "epsilon_si"},
                                 {SweepParam::UserRadius, "user_radius"},
                                 {SweepParam::SigmaAttBound, "sigma_att_bound"}};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int as_count(SweepParam p, double v) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 4096.0)
    throw ConfigError(std::string(to_string(p)), "value " + num(v) + " is not a positive integer");
  return static_cast<int>(v);
}

}  // namespace

std::string_view to_string(Scheme s) {
  for (const auto& e : kSchemes)
    if (e.scheme == s) return e.name;
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  for (const auto& e : kSchemes)
    if (e.name == s) return e.scheme;
  return std::nullopt;
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> v{Scheme::Stackelberg, Scheme::Nash, Scheme::Average,
                                     Scheme::Random, Scheme::GA};
  return v;
}

std::string_view to_string(SweepParam p) {
  for (const auto& e : kParams)
    if (e.param == p) return e.name;
  return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view s) {
  for (const auto& e : kParams)
    if (e.name == s) return e.param;
  return std::nullopt;
}

ScenarioConfig apply_sweep_value(ScenarioConfig cfg, SweepParam p, double value) {
  switch (p) {
    case SweepParam::RisElements: cfg.p_elements = as_count(p, value); break;
    case SweepParam::TxAntennas: cfg.m_antennas = as_count(p, value); break;
    case SweepParam::EpsilonSi: cfg.epsilon_si = value; break;
    case SweepParam::UserRadius: cfg.user_radius = value; break;
    case SweepParam::SigmaAttBound: cfg.nu = value; break;
  }
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(to_string(p)), "value " + num(value) + " rejected (" + e.what() + ")");
  }
  return cfg;
}

IsacGame make_game(const ScenarioConfig& cfg, std::uint64_t seed) {
  return IsacGame(cfg, draw_realizations(cfg, seed, cfg.channel_realizations));
}

SchemeResult run_scheme(const ScenarioConfig& cfg, Scheme scheme, std::uint64_t seed, Execution inner) {
  const IsacGame game = make_game(cfg, seed);
  SolverOptions opt = solver_options(cfg);
  switch (scheme) {
    case Scheme::Stackelberg: {
      const TraceRow& r = solve_stackelberg(game, opt).final_row();
      return {r.strategy, r.outcome};
    }
    case Scheme::Nash: {
      const GameTrace t = solve_nash(game, opt);
      return {t.final_row().strategy, t.final_row().outcome};
    }
    case Scheme::Average:
    case Scheme::Random:
    case Scheme::GA: {
      const BaselineKind k = scheme == Scheme::Average  ? BaselineKind::Average
                             : scheme == Scheme::Random ? BaselineKind::Random
                                                        : BaselineKind::GA;
      const BaselineResult b = solve_baseline(k, game, cfg, seed, inner);
      return {b.strategy, b.outcome};
    }
  }
  throw DomainError("run_scheme: unknown scheme");
}

namespace {

SchemeSummary summarize(Scheme scheme, const std::vector<SchemeResult>& runs) {
  SchemeSummary s;
  s.scheme = scheme;
  s.runs = static_cast<int>(runs.size());
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    s.strategy.lambda_rate += r.strategy.lambda_rate / n;
    s.strategy.g += r.strategy.g / n;
    s.strategy.sigma_att_w += r.strategy.sigma_att_w / n;
    s.u.u_bs += r.outcome.u.u_bs / n;
    s.u.u_ris += r.outcome.u.u_ris / n;
    s.u.u_att += r.outcome.u.u_att / n;
    s.aaoi_s += r.outcome.aaoi_s / n;
    s.asinr += r.outcome.asinr / n;
  }
  return s;
}

}  // namespace

GameTrace run_converge(const ScenarioConfig& cfg) {
  return solve_stackelberg(make_game(cfg, cfg.seed), solver_options(cfg));
}

std::vector<SchemeSummary> run_baselines(const ScenarioConfig& cfg, const std::vector<Scheme>& schemes,
                                         int runs, Execution ex) {
  const std::vector<SweepRow> rows = run_sweep(cfg, SweepParam::UserRadius, {cfg.user_radius}, runs,
                                               schemes, ex);
  std::vector<SchemeSummary> out;
  for (const auto& r : rows) out.push_back(r.summary);
  return out;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, SweepParam param,
                                const std::vector<double>& values, int runs,
                                const std::vector<Scheme>& schemes, Execution ex) {
  if (values.empty()) throw ConfigError(std::string(to_string(param)), "no sweep values");
  if (runs < 1) throw ConfigError("runs", "must be a positive integer");
  if (schemes.empty()) throw ConfigError("scheme", "no schemes selected");

  std::vector<ScenarioConfig> point_cfg;
  for (double v : values) point_cfg.push_back(apply_sweep_value(cfg, param, v));

  const std::size_t nv = values.size();
  const std::size_t ns = schemes.size();
  const auto nr = static_cast<std::size_t>(runs);
  std::vector<SchemeResult> results(nv * ns * nr);
  for_each_index(results.size(), ex, [&](std::size_t k) {
    const std::size_t r = k % nr;
    const std::size_t s = (k / nr) % ns;
    const std::size_t v = k / (nr * ns);
    results[k] = run_scheme(point_cfg[v], schemes[s], cfg.seed + r);
  });

  std::vector<SweepRow> rows;
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t s = 0; s < ns; ++s) {
      const auto first = results.begin() + static_cast<std::ptrdiff_t>((v * ns + s) * nr);
      rows.push_back({values[v], summarize(schemes[s], {first, first + static_cast<std::ptrdiff_t>(nr)})});
    }
  }
  return rows;
}

std::vector<AoiValidateRow> run_aoi_validate(const AoiValidateOptions& opt, Execution ex) {
  std::vector<AoiValidateRow> rows;
  for (QueueModel m : opt.models)
    for (double rho : opt.rhos) rows.push_back({m, rho});

  for_each_index(rows.size(), ex, [&](std::size_t k) {
    AoiValidateRow& row = rows[k];
    const double lambda = row.rho * opt.service_rate;
    row.closed_form = aaoi({lambda, opt.service_rate, row.model}).aaoi_s * (1.0 + opt.closed_form_bias);
    const SimResult sim = simulate_aoi(row.model, lambda, opt.service_rate, opt.n_deliveries,
                                       derive_seed(opt.seed, static_cast<std::uint64_t>(row.model), k));
    row.simulated = sim.aaoi_est_s;
    row.half_width = sim.half_width_95;
    row.rel_error = std::abs(row.closed_form - row.simulated) / row.simulated;
    row.tolerance = row.model == QueueModel::MD1 ? 0.03 : 0.02;
    row.pass = row.rel_error <= row.tolerance;
  });
  return rows;
}

void write_trace_csv(std::ostream& os, const GameTrace& trace) {
  os << "iter,lambda,g,sigma_att,u_bs,u_ris,u_att,aaoi,asinr\n";
  for (const auto& r : trace.rows) {
    os << r.iter << ',' << num(r.strategy.lambda_rate) << ',' << num(r.strategy.g) << ','
       << num(r.strategy.sigma_att_w) << ',' << num(r.outcome.u.u_bs) << ','
       << num(r.outcome.u.u_ris) << ',' << num(r.outcome.u.u_att) << ',' << num(r.outcome.aaoi_s)
       << ',' << num(r.outcome.asinr) << '\n';
  }
}

namespace {

void write_summary_fields(std::ostream& os, const SchemeSummary& s) {
  os << to_string(s.scheme) << ',' << num(s.strategy.lambda_rate) << ',' << num(s.strategy.g) << ','
     << num(s.strategy.sigma_att_w) << ',' << num(s.u.u_bs) << ',' << num(s.u.u_ris) << ','
     << num(s.u.u_att) << ',' << num(s.aaoi_s) << ',' << num(s.asinr) << ',' << s.runs;
}

constexpr const char* kSummaryHeader = "scheme,lambda,g,sigma_att,u_bs,u_ris,u_att,aaoi,asinr,runs";

}  // namespace

void write_baselines_csv(std::ostream& os, const std::vector<SchemeSummary>& rows) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    write_summary_fields(os, r);
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, SweepParam param, const std::vector<SweepRow>& rows) {
  os << to_string(param) << ',' << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    os << num(r.value) << ',';
    write_summary_fields(os, r.summary);
    os << '\n';
  }
}

void write_aoi_csv(std::ostream& os, const std::vector<AoiValidateRow>& rows) {
  os << "model,rho,closed_form,simulated,half_width,rel_error,tolerance,status\n";
  for (const auto& r : rows) {
    os << to_string(r.model) << ',' << num(r.rho) << ',' << num(r.closed_form) << ','
       << num(r.simulated) << ',' << num(r.half_width) << ',' << num(r.rel_error) << ','
       << num(r.tolerance) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

void write_uniqueness_csv(std::ostream& os, const UniquenessReport& rep) {
  os << "start,lambda0,g0,sigma_att0,lambda,g,sigma_att,u_bs,u_ris,u_att\n";
  for (std::size_t k = 0; k < rep.finals.size(); ++k) {
    const Strategy& a = rep.starts[k];
    const Strategy& b = rep.finals[k];
    const UtilityTriple& u = rep.utilities[k];
    os << k << ',' << num(a.lambda_rate) << ',' << num(a.g) << ',' << num(a.sigma_att_w) << ','
       << num(b.lambda_rate) << ',' << num(b.g) << ',' << num(b.sigma_att_w) << ',' << num(u.u_bs)
       << ',' << num(u.u_ris) << ',' << num(u.u_att) << '\n';
  }
}

std::string meta_json(const ScenarioConfig& cfg, std::string_view command,
                      const std::vector<std::pair<std::string, std::string>>& extra) {
  nlohmann::ordered_json doc;
  doc["version"] = std::string(version());
  doc["command"] = std::string(command);
  nlohmann::ordered_json echo = nlohmann::ordered_json::object();
  std::istringstream lines(serialize_config(cfg));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) echo[line.substr(0, eq)] = line.substr(eq + 3);
  }
  doc["config"] = std::move(echo);
  for (const auto& [k, v] : extra) doc[k] = v;
  return doc.dump(2) + "\n";
}

}  // namespace lawnsec
