#include "lawnsec/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lawnsec/error.hpp"

namespace lawnsec {

std::string_view to_string(QueueModel m) noexcept {
  switch (m) {
    case QueueModel::MM1: return "MM1";
    case QueueModel::DM1: return "DM1";
    case QueueModel::MD1: return "MD1";
  }
  return "?";
}

std::optional<QueueModel> parse_queue_model(std::string_view s) noexcept {
  if (s == "MM1" || s == "M/M/1") return QueueModel::MM1;
  if (s == "DM1" || s == "D/M/1") return QueueModel::DM1;
  if (s == "MD1" || s == "M/D/1") return QueueModel::MD1;
  return std::nullopt;
}

std::string_view to_string(RollbackRule r) noexcept {
  return r == RollbackRule::Stale ? "stale" : "incumbent";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is available in libstdc++ 11.
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError(std::string(key), "expected a real number, got '" + std::string(v) + "'");
  return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
  Int out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
  return out;
}

Vec3 parse_vec3(std::string_view key, std::string_view v) {
  Vec3 out{};
  std::size_t i = 0;
  while (true) {
    const auto comma = v.find(',');
    if (i >= 3) throw ConfigError(std::string(key), "expected three comma-separated values");
    out[i++] = parse_double(key, trim(v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  if (i != 3) throw ConfigError(std::string(key), "expected three comma-separated values");
  return out;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Calls f(name, ref) for every serializable field, in document order.
template <class Cfg, class F>
void visit_fields(Cfg& c, F&& f) {
  f("m_antennas", c.m_antennas);
  f("n_users", c.n_users);
  f("p_elements", c.p_elements);
  f("pos_bs", c.pos_bs);
  f("pos_ris", c.pos_ris);
  f("pos_target", c.pos_target);
  f("pos_user_centroid", c.pos_user_centroid);
  f("user_radius", c.user_radius);
  f("carrier_freq_hz", c.carrier_freq_hz);
  f("bandwidth_hz", c.bandwidth_hz);
  f("beta1", c.beta1);
  f("beta2_db", c.beta2_db);
  f("beta3", c.beta3);
  f("beta4_db_std", c.beta4_db_std);
  f("rician_k", c.rician_k);
  f("rcs_m2", c.rcs_m2);
  f("epsilon_si", c.epsilon_si);
  f("noise_psd_dbm_hz", c.noise_psd_dbm_hz);
  f("p_trans_w", c.p_trans_w);
  f("element_spacing", c.element_spacing);
  f("corr_bs", c.corr_bs);
  f("corr_ris", c.corr_ris);
  f("sensing_power_fraction", c.sensing_power_fraction);
  f("g_max", c.g_max);
  f("nu", c.nu);
  f("sinr_thresh_db", c.sinr_thresh_db);
  f("sinr_penalty_weight", c.sinr_penalty_weight);
  f("zeta1", c.zeta1);
  f("zeta2", c.zeta2);
  f("cost_bs", c.cost_bs);
  f("cost_ris", c.cost_ris);
  f("cost_att", c.cost_att);
  f("aoi_model", c.aoi_model);
  f("aoi_penalty_s", c.aoi_penalty_s);
  f("rollback", c.rollback);
  f("init_lambda_frac", c.init_lambda_frac);
  f("init_g_frac", c.init_g_frac);
  f("init_sigma_frac", c.init_sigma_frac);
  f("iter_max_inner", c.iter_max_inner);
  f("iter_max_outer", c.iter_max_outer);
  f("tol", c.tol);
  f("ga_population", c.ga_population);
  f("ga_generations", c.ga_generations);
  f("ga_tournament", c.ga_tournament);
  f("ga_crossover_rate", c.ga_crossover_rate);
  f("ga_mutation_rate", c.ga_mutation_rate);
  f("ga_mutation_scale", c.ga_mutation_scale);
  f("ga_outer_iters", c.ga_outer_iters);
  f("seed", c.seed);
  f("channel_realizations", c.channel_realizations);
}

void assign(std::string_view key, std::string_view v, int& dst) { dst = parse_int<int>(key, v); }
void assign(std::string_view key, std::string_view v, std::uint64_t& dst) {
  dst = parse_int<std::uint64_t>(key, v);
}
void assign(std::string_view key, std::string_view v, double& dst) { dst = parse_double(key, v); }
void assign(std::string_view key, std::string_view v, Vec3& dst) { dst = parse_vec3(key, v); }
void assign(std::string_view key, std::string_view v, QueueModel& dst) {
  auto m = parse_queue_model(v);
  if (!m) throw ConfigError(std::string(key), "expected MM1, DM1 or MD1");
  dst = *m;
}
void assign(std::string_view key, std::string_view v, RollbackRule& dst) {
  if (v == "stale")
    dst = RollbackRule::Stale;
  else if (v == "incumbent")
    dst = RollbackRule::Incumbent;
  else
    throw ConfigError(std::string(key), "expected 'stale' or 'incumbent'");
}

std::string render(int v) { return std::to_string(v); }
std::string render(std::uint64_t v) { return std::to_string(v); }
std::string render(double v) { return fmt_double(v); }
std::string render(const Vec3& v) {
  return fmt_double(v[0]) + ", " + fmt_double(v[1]) + ", " + fmt_double(v[2]);
}
std::string render(QueueModel m) { return std::string(to_string(m)); }
std::string render(RollbackRule r) { return std::string(to_string(r)); }

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }
bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

ScenarioConfig load_config(std::string_view document) {
  ScenarioConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!document.empty()) {
    ++line_no;
    const auto nl = document.find('\n');
    std::string_view line = document.substr(0, nl);
    document.remove_prefix(nl == std::string_view::npos ? document.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("", "line " + std::to_string(line_no) + ": empty key or value");
    if (!seen.emplace(key).second) throw ConfigError(std::string(key), "duplicate key");

    bool known = false;
    visit_fields(cfg, [&](std::string_view name, auto& field) {
      if (name == key) {
        assign(key, value, field);
        known = true;
      }
    });
    if (!known) throw ConfigError(std::string(key), "unknown key");
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::string out;
  visit_fields(cfg, [&](std::string_view name, const auto& field) {
    out.append(name);
    out.append(" = ");
    out.append(render(field));
    out.push_back('\n');
  });
  return out;
}

void validate(const ScenarioConfig& c) {
  require(c.m_antennas > 0, "m_antennas", "must be a positive integer");
  require(c.n_users > 0, "n_users", "must be a positive integer");
  require(c.p_elements > 0, "p_elements", "must be a positive integer");
  for (auto [name, v] : {std::pair{"pos_bs", &c.pos_bs}, std::pair{"pos_ris", &c.pos_ris},
                         std::pair{"pos_target", &c.pos_target},
                         std::pair{"pos_user_centroid", &c.pos_user_centroid}})
    for (double x : *v) require(std::isfinite(x), name, "coordinates must be finite");
  require(finite_pos(c.user_radius), "user_radius", "must be positive");
  require(finite_pos(c.carrier_freq_hz), "carrier_freq_hz", "must be positive");
  require(finite_pos(c.bandwidth_hz), "bandwidth_hz", "must be positive");
  require(std::isfinite(c.beta1), "beta1", "must be finite");
  require(std::isfinite(c.beta2_db), "beta2_db", "must be finite");
  require(std::isfinite(c.beta3), "beta3", "must be finite");
  require(std::isfinite(c.beta4_db_std) && c.beta4_db_std >= 0.0, "beta4_db_std",
          "must be nonnegative");
  require(std::isfinite(c.rician_k) && c.rician_k >= 0.0, "rician_k", "must be nonnegative");
  require(std::isfinite(c.rcs_m2) && c.rcs_m2 >= 0.0, "rcs_m2", "must be nonnegative");
  require(in_unit(c.epsilon_si), "epsilon_si", "must lie in [0, 1]");
  require(std::isfinite(c.noise_psd_dbm_hz), "noise_psd_dbm_hz", "must be finite");
  require(finite_pos(c.p_trans_w), "p_trans_w", "must be positive");
  require(finite_pos(c.element_spacing), "element_spacing", "must be positive");
  require(std::isfinite(c.corr_bs) && c.corr_bs >= 0.0 && c.corr_bs < 1.0, "corr_bs",
          "must lie in [0, 1)");
  require(std::isfinite(c.corr_ris) && c.corr_ris >= 0.0 && c.corr_ris < 1.0, "corr_ris",
          "must lie in [0, 1)");
  require(std::isfinite(c.sensing_power_fraction) && c.sensing_power_fraction > 0.0 &&
              c.sensing_power_fraction < 1.0,
          "sensing_power_fraction", "must lie in (0, 1)");
  require(finite_pos(c.g_max), "g_max", "must be positive");
  require(finite_pos(c.nu), "nu", "must be positive");
  require(std::isfinite(c.sinr_thresh_db), "sinr_thresh_db", "must be finite");
  require(std::isfinite(c.sinr_penalty_weight) && c.sinr_penalty_weight >= 0.0,
          "sinr_penalty_weight", "must be nonnegative");
  require(std::isfinite(c.zeta1), "zeta1", "must be finite");
  require(std::isfinite(c.zeta2), "zeta2", "must be finite");
  require(std::isfinite(c.cost_bs) && c.cost_bs >= 0.0, "cost_bs", "must be nonnegative");
  require(std::isfinite(c.cost_ris) && c.cost_ris >= 0.0, "cost_ris", "must be nonnegative");
  require(std::isfinite(c.cost_att) && c.cost_att >= 0.0, "cost_att", "must be nonnegative");
  require(finite_pos(c.aoi_penalty_s), "aoi_penalty_s", "must be positive");
  require(in_unit(c.init_lambda_frac), "init_lambda_frac", "must lie in [0, 1]");
  require(in_unit(c.init_g_frac), "init_g_frac", "must lie in [0, 1]");
  require(in_unit(c.init_sigma_frac), "init_sigma_frac", "must lie in [0, 1]");
  require(c.iter_max_inner > 0, "iter_max_inner", "must be a positive integer");
  require(c.iter_max_outer > 0, "iter_max_outer", "must be a positive integer");
  require(finite_pos(c.tol), "tol", "must be positive");
  require(c.ga_population >= 2, "ga_population", "must be at least 2");
  require(c.ga_generations > 0, "ga_generations", "must be a positive integer");
  require(c.ga_tournament > 0, "ga_tournament", "must be a positive integer");
  require(in_unit(c.ga_crossover_rate), "ga_crossover_rate", "must lie in [0, 1]");
  require(in_unit(c.ga_mutation_rate), "ga_mutation_rate", "must lie in [0, 1]");
  require(finite_pos(c.ga_mutation_scale), "ga_mutation_scale", "must be positive");
  require(c.ga_outer_iters > 0, "ga_outer_iters", "must be a positive integer");
  require(c.channel_realizations > 0, "channel_realizations", "must be a positive integer");

  const double n = noise_power_w(c);
  require(std::isfinite(n) && n > 0.0, "noise_psd_dbm_hz",
          "derived noise power is not a positive finite number");
}

double noise_power_w(const ScenarioConfig& cfg) {
  return std::pow(10.0, (cfg.noise_psd_dbm_hz - 30.0) / 10.0) * cfg.bandwidth_hz;
}

double wavelength_m(const ScenarioConfig& cfg) { return 299792458.0 / cfg.carrier_freq_hz; }

double sigma_att_max_w(const ScenarioConfig& cfg) { return cfg.nu * noise_power_w(cfg); }

}  // namespace lawnsec
