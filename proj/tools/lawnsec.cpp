#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lawnsec/config.hpp"
#include "lawnsec/error.hpp"
#include "lawnsec/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
};

lawnsec::ScenarioConfig load(const Common& c) {
  lawnsec::ScenarioConfig cfg;
  if (!c.config_path.empty()) cfg = lawnsec::load_config_file(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

std::vector<lawnsec::Scheme> parse_schemes(const std::string& list) {
  if (list.empty() || list == "all") return lawnsec::all_schemes();
  std::vector<lawnsec::Scheme> out;
  std::istringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto s = lawnsec::parse_scheme(item);
    if (!s) throw lawnsec::ConfigError("scheme", "unknown scheme '" + item + "'");
    out.push_back(*s);
  }
  return out;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::istringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw lawnsec::ConfigError("values", "cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw lawnsec::ConfigError("values", "empty list");
  return out;
}

// Writes the table to --out plus a .meta.json sidecar, or to stdout.
void emit(const Common& c, const lawnsec::ScenarioConfig& cfg, std::string_view command,
          const std::string& table,
          const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  if (c.out.empty()) {
    std::cout << table;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + c.out + "'");
  f << table;
  std::ofstream m(c.out + ".meta.json", std::ios::binary);
  if (!m) throw std::runtime_error("cannot write '" + c.out + ".meta.json'");
  m << lawnsec::meta_json(cfg, command, extra);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-assisted ISAC network under channel-access attack: game solver and AoI tools"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "key = value scenario file");
  app.add_option("--seed", common.seed, "RNG seed, overrides the config file");
  app.add_option("--out", common.out, "output CSV; a .meta.json sidecar is written next to it");

  std::string param;
  std::string values;
  int runs = 1;
  int starts = 10;
  std::string scheme = "all";
  std::int64_t deliveries = 1'000'000;
  double bias = 0.0;

  auto* converge = app.add_subcommand("converge", "backward-induction trace on the configured scenario");
  auto* sweep = app.add_subcommand("sweep", "all schemes across one swept parameter");
  sweep->add_option("--param", param,
                    "ris_elements | tx_antennas | epsilon_si | user_radius | sigma_att_bound")
      ->required();
  sweep->add_option("--values", values, "comma-separated parameter values")->required();
  sweep->add_option("--runs", runs, "seeds averaged per point");
  sweep->add_option("--scheme", scheme, "comma-separated subset of stackelberg,nash,average,random,ga");
  auto* validate = app.add_subcommand("aoi-validate", "closed-form age against the queue simulator");
  validate->add_option("--deliveries", deliveries, "simulated deliveries per cell");
  validate->add_option("--closed-form-bias", bias, "scale the closed forms by 1 + bias (negative control)")
      ->group("");
  auto* baselines = app.add_subcommand("baselines", "every scheme on the configured scenario");
  baselines->add_option("--runs", runs, "seeds averaged per scheme");
  baselines->add_option("--scheme", scheme, "comma-separated subset of schemes");
  auto* unique = app.add_subcommand("uniqueness", "multi-start equilibrium probe");
  unique->add_option("--runs", starts, "number of random starts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const lawnsec::ScenarioConfig cfg = load(common);
    std::ostringstream table;

    if (*converge) {
      const lawnsec::GameTrace t = lawnsec::run_converge(cfg);
      lawnsec::write_trace_csv(table, t);
      emit(common, cfg, "converge", table.str(),
           {{"termination", std::string(lawnsec::to_string(t.termination))},
            {"rows", std::to_string(t.rows.size())}});
      std::cerr << "converge: " << t.rows.size() << " iterations, "
                << lawnsec::to_string(t.termination) << '\n';
      return kExitOk;
    }
    if (*sweep) {
      const auto p = lawnsec::parse_sweep_param(param);
      if (!p) throw lawnsec::ConfigError("param", "unknown sweep parameter '" + param + "'");
      const auto rows = lawnsec::run_sweep(cfg, *p, parse_values(values), runs, parse_schemes(scheme));
      lawnsec::write_sweep_csv(table, *p, rows);
      emit(common, cfg, "sweep", table.str(),
           {{"param", param}, {"values", values}, {"runs", std::to_string(runs)}, {"scheme", scheme}});
      return kExitOk;
    }
    if (*validate) {
      lawnsec::AoiValidateOptions opt;
      opt.n_deliveries = deliveries;
      opt.seed = cfg.seed;
      opt.closed_form_bias = bias;
      const auto rows = lawnsec::run_aoi_validate(opt);
      lawnsec::write_aoi_csv(table, rows);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.pass;
      emit(common, cfg, "aoi-validate", table.str(),
           {{"deliveries", std::to_string(deliveries)}, {"status", ok ? "PASS" : "FAIL"}});
      if (!ok) std::cerr << "aoi-validate: closed form and simulation disagree\n";
      return ok ? kExitOk : kExitValidation;
    }
    if (*baselines) {
      const auto rows = lawnsec::run_baselines(cfg, parse_schemes(scheme), runs);
      lawnsec::write_baselines_csv(table, rows);
      emit(common, cfg, "baselines", table.str(), {{"runs", std::to_string(runs)}, {"scheme", scheme}});
      return kExitOk;
    }
    if (*unique) {
      if (starts < 1) throw lawnsec::ConfigError("runs", "must be a positive integer");
      const lawnsec::IsacGame game = lawnsec::make_game(cfg, cfg.seed);
      const auto rep = lawnsec::uniqueness_probe(game, lawnsec::solver_options(cfg), starts, cfg.seed);
      lawnsec::write_uniqueness_csv(table, rep);
      char dist[64];
      std::snprintf(dist, sizeof dist, "%.6g", rep.max_strategy_distance);
      emit(common, cfg, "uniqueness", table.str(),
           {{"starts", std::to_string(starts)},
            {"max_strategy_distance", dist},
            {"worst_pair", std::to_string(rep.worst_pair.first) + "," +
                               std::to_string(rep.worst_pair.second)},
            {"status", rep.multimodal ? "MULTIMODAL" : "UNIQUE"}});
      if (rep.multimodal) {
        std::cerr << "uniqueness: starts " << rep.worst_pair.first << " and " << rep.worst_pair.second
                  << " end " << dist << " apart (limit " << 100.0 * cfg.tol << ")\n";
        return kExitValidation;
      }
      return kExitOk;
    }
  } catch (const lawnsec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
