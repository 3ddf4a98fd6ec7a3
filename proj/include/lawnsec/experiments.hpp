#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lawnsec/baselines.hpp"
#include "lawnsec/config.hpp"
#include "lawnsec/game.hpp"
#include "lawnsec/queue_sim.hpp"

namespace lawnsec {

/// Version string written into every metadata sidecar.
std::string_view version();

enum class Scheme { Stackelberg, Nash, Average, Random, GA };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view s);
const std::vector<Scheme>& all_schemes();

enum class SweepParam { RisElements, TxAntennas, EpsilonSi, UserRadius, SigmaAttBound };

std::string_view to_string(SweepParam p);
std::optional<SweepParam> parse_sweep_param(std::string_view s);

/// Copy of cfg with the swept field set. sigma_att_bound sets nu. Throws
/// ConfigError naming the parameter for invalid values (element counts must
/// be positive integers).
ScenarioConfig apply_sweep_value(ScenarioConfig cfg, SweepParam p, double value);

/// Game over cfg.channel_realizations realizations drawn from `seed`.
IsacGame make_game(const ScenarioConfig& cfg, std::uint64_t seed);

struct SchemeResult {
  Strategy strategy;
  Outcome outcome;
};

/// Solves one scheme on one seed.
SchemeResult run_scheme(const ScenarioConfig& cfg, Scheme scheme, std::uint64_t seed,
                        Execution inner = Execution::Serial);

/// Means over runs; run r uses seed cfg.seed + r.
struct SchemeSummary {
  Scheme scheme = Scheme::Stackelberg;
  Strategy strategy;
  UtilityTriple u;
  double aaoi_s = 0.0;
  double asinr = 0.0;
  int runs = 0;
};

struct SweepRow {
  double value = 0.0;
  SchemeSummary summary;
};

GameTrace run_converge(const ScenarioConfig& cfg);

std::vector<SchemeSummary> run_baselines(const ScenarioConfig& cfg, const std::vector<Scheme>& schemes,
                                         int runs, Execution ex = Execution::Parallel);

/// Rows ordered by value, then by scheme in `schemes` order.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, SweepParam param,
                                const std::vector<double>& values, int runs,
                                const std::vector<Scheme>& schemes,
                                Execution ex = Execution::Parallel);

struct AoiValidateOptions {
  std::vector<QueueModel> models{QueueModel::MM1, QueueModel::DM1, QueueModel::MD1};
  std::vector<double> rhos{0.2, 0.5, 0.8};
  double service_rate = 1.0;
  std::int64_t n_deliveries = 1'000'000;
  std::uint64_t seed = 1;
  double closed_form_bias = 0.0;  // test hook: closed form is scaled by 1 + bias
};

struct AoiValidateRow {
  QueueModel model = QueueModel::MM1;
  double rho = 0.0;
  double closed_form = 0.0;
  double simulated = 0.0;
  double half_width = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;  // 2% for M/M/1 and D/M/1, 3% for M/D/1
  bool pass = false;
};

std::vector<AoiValidateRow> run_aoi_validate(const AoiValidateOptions& opt,
                                             Execution ex = Execution::Parallel);

void write_trace_csv(std::ostream& os, const GameTrace& trace);
void write_baselines_csv(std::ostream& os, const std::vector<SchemeSummary>& rows);
void write_sweep_csv(std::ostream& os, SweepParam param, const std::vector<SweepRow>& rows);
void write_aoi_csv(std::ostream& os, const std::vector<AoiValidateRow>& rows);
void write_uniqueness_csv(std::ostream& os, const UniquenessReport& rep);

/// Metadata document: version, command, config echo and extra string fields.
std::string meta_json(const ScenarioConfig& cfg, std::string_view command,
                      const std::vector<std::pair<std::string, std::string>>& extra = {});

}  // namespace lawnsec
