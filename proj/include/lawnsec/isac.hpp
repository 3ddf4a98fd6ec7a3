#pragma once

#include <span>
#include <vector>

#include "lawnsec/channels.hpp"
#include "lawnsec/config.hpp"

namespace lawnsec {

/// Transmit beamformer and the resulting signal covariance.
struct Beamformer {
  CMat B_r;  // M x M, sensing beams
  CMat B_c;  // M x N, one communication column per user
  CMat R;    // B_r B_r^H + B_c B_c^H, trace P_trans
};

/// Equivalent channel of user i as a column vector, g H^H h1_i + h2_i, so the
/// received signal is h^H s. The RIS response is g times the identity.
CVec equivalent_channel(const ChannelSet& ch, int user, double g);

/// Isotropic sensing beams plus maximum-ratio communication columns, split by
/// cfg.sensing_power_fraction. Throws DomainError naming a user whose
/// equivalent channel vanishes.
Beamformer build_beamformer(const ChannelSet& ch, double g, const ScenarioConfig& cfg);

/// Per-user SINR with the attack power added to every noise term.
std::vector<double> comm_sinr(const ChannelSet& ch, const Beamformer& bf, double g,
                              double sigma_att_w, const ScenarioConfig& cfg);

/// Arithmetic mean. Throws DomainError on an empty list.
double average_sinr(std::span<const double> sinrs);

/// Interference-plus-noise covariance at the BS sensing receiver (M x M,
/// Hermitian by construction).
CMat sensing_covariance_J(const ChannelSet& ch, const Beamformer& bf, double g,
                          double sigma_att_w, const ScenarioConfig& cfg);

struct SensingResult {
  double sinr = 0.0;
  double rate_bps = 0.0;
  double imag_residue = 0.0;  // |Im tr| / max(|Re tr|, tiny) before taking the real part
};

/// sinr = Re tr(F R F^H J^-1) with F = H^H T H g^2; rate = bandwidth log2(1 + sinr).
/// Throws ConvergenceError when J is not numerically positive definite.
SensingResult sensing_sinr_and_rate(const ChannelSet& ch, const Beamformer& bf, double g,
                                    double sigma_att_w, const ScenarioConfig& cfg);

/// Everything the game needs from one realization at (g, sigma_att).
struct LinkMetrics {
  std::vector<double> user_sinr;
  double asinr = 0.0;
  double sensing_sinr = 0.0;
  double gamma_sense = 0.0;  // service rate, bandwidth log2(1 + sensing sinr)
};

LinkMetrics evaluate_links(const ChannelSet& ch, double g, double sigma_att_w,
                           const ScenarioConfig& cfg);

}  // namespace lawnsec
