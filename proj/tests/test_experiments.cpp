#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lawnsec/error.hpp"
#include "lawnsec/experiments.hpp"

using namespace lawnsec;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string sweep_error_key(SweepParam p, double v) {
  try {
    apply_sweep_value(ScenarioConfig{}, p, v);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("scheme and parameter names") {
  for (Scheme s : all_schemes()) CHECK(parse_scheme(to_string(s)) == s);
  CHECK(!parse_scheme("greedy"));
  CHECK(parse_sweep_param("ris_elements") == SweepParam::RisElements);
  CHECK(parse_sweep_param("sigma_att_bound") == SweepParam::SigmaAttBound);
  CHECK(!parse_sweep_param("bandwidth"));
}

TEST_CASE("sweep values are validated against the swept key") {
  CHECK(apply_sweep_value(ScenarioConfig{}, SweepParam::RisElements, 8).p_elements == 8);
  CHECK(apply_sweep_value(ScenarioConfig{}, SweepParam::SigmaAttBound, 3).nu == 3.0);
  CHECK(sweep_error_key(SweepParam::RisElements, 2.5) == "ris_elements");
  CHECK(sweep_error_key(SweepParam::TxAntennas, 0) == "tx_antennas");
  CHECK(sweep_error_key(SweepParam::EpsilonSi, 1.5) == "epsilon_si");
  CHECK(sweep_error_key(SweepParam::UserRadius, -1) == "user_radius");
}

TEST_CASE("converge trace has a fixed schema and responds to the seed") {
  ScenarioConfig cfg;
  std::ostringstream a, b, c;
  write_trace_csv(a, run_converge(cfg));
  write_trace_csv(b, run_converge(cfg));
  cfg.seed += 1;
  write_trace_csv(c, run_converge(cfg));
  CHECK(a.str() == b.str());
  CHECK(a.str() != c.str());
  CHECK(first_line(a.str()) == "iter,lambda,g,sigma_att,u_bs,u_ris,u_att,aaoi,asinr");
  CHECK(first_line(c.str()) == first_line(a.str()));
  CHECK(line_count(a.str()) >= 2);
  CHECK(line_count(a.str()) <= 27);

  cfg.tol = 1e-3;
  CHECK(run_converge(cfg).rows.size() <= 25);
}

TEST_CASE("sweep: one row per value and scheme, serial equals parallel") {
  ScenarioConfig cfg;
  const std::vector<Scheme> schemes{Scheme::Stackelberg, Scheme::Nash, Scheme::Average,
                                    Scheme::Random};
  const std::vector<double> values{8, 12};
  const auto ser = run_sweep(cfg, SweepParam::RisElements, values, 2, schemes, Execution::Serial);
  const auto par = run_sweep(cfg, SweepParam::RisElements, values, 2, schemes, Execution::Parallel);
  REQUIRE(ser.size() == 8);
  std::ostringstream s1, s2;
  write_sweep_csv(s1, SweepParam::RisElements, ser);
  write_sweep_csv(s2, SweepParam::RisElements, par);
  CHECK(s1.str() == s2.str());
  CHECK(first_line(s1.str()) ==
        "ris_elements,scheme,lambda,g,sigma_att,u_bs,u_ris,u_att,aaoi,asinr,runs");
  CHECK(ser[0].value == 8.0);
  CHECK(ser[0].summary.scheme == Scheme::Stackelberg);
  CHECK(ser[7].value == 12.0);
  CHECK(ser[7].summary.scheme == Scheme::Random);
  CHECK(ser[3].summary.runs == 2);
}

TEST_CASE("baselines table") {
  const auto rows = run_baselines(ScenarioConfig{}, {Scheme::Average, Scheme::Stackelberg}, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scheme == Scheme::Average);
  std::ostringstream os;
  write_baselines_csv(os, rows);
  CHECK(first_line(os.str()) == "scheme,lambda,g,sigma_att,u_bs,u_ris,u_att,aaoi,asinr,runs");
  CHECK(line_count(os.str()) == 3);
}

TEST_CASE("age validation table and its negative control") {
  AoiValidateOptions opt;
  opt.n_deliveries = 200'000;
  opt.rhos = {0.5};
  const auto rows = run_aoi_validate(opt);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.pass);
  CHECK(rows[0].tolerance == 0.02);
  CHECK(rows[2].tolerance == 0.03);

  opt.closed_form_bias = 0.1;
  for (const auto& r : run_aoi_validate(opt)) CHECK_FALSE(r.pass);

  std::ostringstream os;
  write_aoi_csv(os, rows);
  CHECK(first_line(os.str()) ==
        "model,rho,closed_form,simulated,half_width,rel_error,tolerance,status");
}

TEST_CASE("uniqueness table") {
  const QuadraticGame game(0.4, 0.3, 0.6, 0.5, {0.0, 2.0}, {0.0, 1.0}, {0.0, 1.5});
  std::ostringstream os;
  write_uniqueness_csv(os, uniqueness_probe(game, SolverOptions{}, 3, 1));
  CHECK(first_line(os.str()) == "start,lambda0,g0,sigma_att0,lambda,g,sigma_att,u_bs,u_ris,u_att");
  CHECK(line_count(os.str()) == 4);
}

TEST_CASE("metadata sidecar") {
  ScenarioConfig cfg;
  cfg.seed = 123;
  const auto j = nlohmann::json::parse(meta_json(cfg, "converge", {{"rows", "4"}}));
  CHECK(j.at("version").get<std::string>() == std::string(version()));
  CHECK(j.at("command") == "converge");
  CHECK(j.at("rows") == "4");
  CHECK(j.at("config").at("seed") == "123");
  CHECK(j.at("config").contains("rcs_m2"));
  CHECK(load_config(serialize_config(cfg)) == cfg);
}
