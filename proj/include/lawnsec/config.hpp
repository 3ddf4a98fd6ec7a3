#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lawnsec/types.hpp"

namespace lawnsec {

/// What a new best response is compared against before it is accepted.
///  - Stale: against the utility accepted in the previous outer iteration
///    (accepted utilities are then nondecreasing by construction).
///  - Incumbent: against the player's previous action evaluated under the
///    current strategies of the other players.
enum class RollbackRule { Stale, Incumbent };

std::string_view to_string(RollbackRule r) noexcept;

/// Every physical, queueing and game parameter of one scenario.
///
/// Defaults follow the reference scenario; calibration choices are listed in
/// README.md.
/// Instances are immutable after load and may be shared across threads.
struct ScenarioConfig {
  // Geometry and array sizes.
  int m_antennas = 4;
  int n_users = 2;
  int p_elements = 16;
  Vec3 pos_bs{0.0, 0.0, 1.5};
  Vec3 pos_ris{5.0, 10.0, 1.5};
  Vec3 pos_target{0.0, 60.0, 1.5};
  Vec3 pos_user_centroid{30.0, 10.0, 1.5};
  double user_radius = 10.0;

  // Radio.
  double carrier_freq_hz = 3e9;
  double bandwidth_hz = 1e7;
  double beta1 = 2.2;
  double beta2_db = 32.45;
  double beta3 = 2.0;
  double beta4_db_std = 0.0;
  double rician_k = 10.0;
  double rcs_m2 = 1e11;
  double epsilon_si = 0.1;
  double noise_psd_dbm_hz = -174.0;
  double p_trans_w = 0.9;
  double element_spacing = 0.5;         // in wavelengths, both arrays
  double corr_bs = 0.0;                 // exponential spatial correlation at the BS
  double corr_ris = 0.0;                // ... and at the RIS; 0 gives identity
  double sensing_power_fraction = 0.5;  // share of P_trans on the sensing beams

  // Game.
  double g_max = 1.0;
  double nu = 1.0;
  double sinr_thresh_db = 5.0;
  double sinr_penalty_weight = 0.0;
  double zeta1 = 0.2;
  double zeta2 = 1.0;
  double cost_bs = 1.0;
  double cost_ris = 2.0;
  double cost_att = 1e13;
  QueueModel aoi_model = QueueModel::MM1;
  double aoi_penalty_s = 1e9;  // age charged when the queue is unstable
  RollbackRule rollback = RollbackRule::Incumbent;
  double init_lambda_frac = 0.5;  // initial strategy as fractions of each box
  double init_g_frac = 0.5;
  double init_sigma_frac = 0.5;

  // Solver.
  int iter_max_inner = 25;
  int iter_max_outer = 25;
  double tol = 1e-6;

  // Genetic-algorithm baseline.
  int ga_population = 50;
  int ga_generations = 100;
  int ga_tournament = 3;
  double ga_crossover_rate = 0.8;
  double ga_mutation_rate = 0.1;
  double ga_mutation_scale = 0.05;  // fraction of the box width
  int ga_outer_iters = 5;

  std::uint64_t seed = 20240601;
  int channel_realizations = 1;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses a flat `key = value` document. Blank lines and `#` comments are
/// ignored; absent keys keep their defaults; unknown keys are rejected.
/// Throws ConfigError naming the line or key.
ScenarioConfig load_config(std::string_view document);
ScenarioConfig load_config_file(const std::string& path);

/// Writes every key in the same format load_config reads. Doubles use
/// round-trip precision, so load_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// Throws ConfigError naming the first offending key.
void validate(const ScenarioConfig& cfg);

/// In-band noise power in watts: PSD (dBm/Hz) times bandwidth.
double noise_power_w(const ScenarioConfig& cfg);

/// Wavelength c / f_s in meters.
double wavelength_m(const ScenarioConfig& cfg);

/// Upper bound of the attacker's noise power, nu times the noise power.
double sigma_att_max_w(const ScenarioConfig& cfg);

}  // namespace lawnsec
