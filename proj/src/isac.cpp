#include "lawnsec/isac.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lawnsec/error.hpp"

namespace lawnsec {

CVec equivalent_channel(const ChannelSet& ch, int user, double g) {
  return g * (ch.H.adjoint() * ch.h1[user]) + ch.h2[user];
}

Beamformer build_beamformer(const ChannelSet& ch, double g, const ScenarioConfig& cfg) {
  const int m = ch.m();
  const int n = ch.n();
  const double rho_r = cfg.sensing_power_fraction;
  const double rho_c = 1.0 - rho_r;

  Beamformer bf;
  bf.B_r = std::sqrt(rho_r * cfg.p_trans_w / m) * CMat::Identity(m, m);
  bf.B_c.resize(m, n);
  const double amp = std::sqrt(rho_c * cfg.p_trans_w / n);
  for (int i = 0; i < n; ++i) {
    const CVec h = equivalent_channel(ch, i, g);
    const double norm = h.norm();
    if (!(norm > 0.0))
      throw DomainError("build_beamformer: equivalent channel of user " + std::to_string(i) +
                        " is zero");
    bf.B_c.col(i) = amp * h / norm;
  }
  bf.R = bf.B_r * bf.B_r.adjoint() + bf.B_c * bf.B_c.adjoint();
  return bf;
}

std::vector<double> comm_sinr(const ChannelSet& ch, const Beamformer& bf, double g,
                              double sigma_att_w, const ScenarioConfig& cfg) {
  const double noise = noise_power_w(cfg);
  std::vector<double> out(ch.n());
  for (int i = 0; i < ch.n(); ++i) {
    const CVec h = equivalent_channel(ch, i, g);
    const double signal = std::norm(h.dot(bf.B_c.col(i)));
    const double total = h.dot(bf.R * h).real();
    const double interference = std::max(total - signal, 0.0);
    const double forwarded = (noise + sigma_att_w) * g * g * ch.h1[i].squaredNorm();
    out[i] = signal / (interference + forwarded + sigma_att_w + noise);
  }
  return out;
}

double average_sinr(std::span<const double> sinrs) {
  if (sinrs.empty()) throw DomainError("average_sinr: empty list");
  return std::accumulate(sinrs.begin(), sinrs.end(), 0.0) / static_cast<double>(sinrs.size());
}

CMat sensing_covariance_J(const ChannelSet& ch, const Beamformer& bf, double g,
                          double sigma_att_w, const ScenarioConfig& cfg) {
  const int m = ch.m();
  const int p = ch.p();
  const double noise = noise_power_w(cfg);
  const double w_fwd = noise + sigma_att_w;
  const double w_rx = noise + sigma_att_w;

  const CMat phi = g * CMat::Identity(p, p);
  const CMat hh = ch.H.adjoint();
  const CMat x = hh * phi.adjoint() * ch.T * phi;
  const CMat c = cfg.epsilon_si * hh * phi * ch.H;

  CMat z = w_fwd * (hh * phi * phi.adjoint() * ch.T * phi * ch.H +
                    hh * phi.adjoint() * ch.T * phi * phi.adjoint() * ch.H) +
           w_fwd * x * x.adjoint() + 2.0 * w_fwd * hh * phi.adjoint() * phi * ch.H +
           w_rx * CMat::Identity(m, m);
  z = 0.5 * (z + z.adjoint()).eval();

  CMat j = z + c * bf.R * c.adjoint();
  return 0.5 * (j + j.adjoint());
}

SensingResult sensing_sinr_and_rate(const ChannelSet& ch, const Beamformer& bf, double g,
                                    double sigma_att_w, const ScenarioConfig& cfg) {
  SensingResult out;
  if (g == 0.0) return out;

  const CMat j = sensing_covariance_J(ch, bf, g, sigma_att_w, cfg);
  const CMat f = (g * g) * (ch.H.adjoint() * ch.T * ch.H);
  const Eigen::LLT<CMat> llt(j);
  if (llt.info() != Eigen::Success)
    throw ConvergenceError("sensing_sinr_and_rate: interference covariance is not positive definite");

  const CMat q = f * bf.R * f.adjoint();
  const std::complex<double> tr = llt.solve(q).trace();
  out.imag_residue = std::abs(tr.imag()) / std::max(std::abs(tr.real()), std::numeric_limits<double>::min());
  out.sinr = std::max(tr.real(), 0.0);
  out.rate_bps = cfg.bandwidth_hz * std::log2(1.0 + out.sinr);
  return out;
}

LinkMetrics evaluate_links(const ChannelSet& ch, double g, double sigma_att_w,
                           const ScenarioConfig& cfg) {
  const Beamformer bf = build_beamformer(ch, g, cfg);
  LinkMetrics out;
  out.user_sinr = comm_sinr(ch, bf, g, sigma_att_w, cfg);
  out.asinr = average_sinr(out.user_sinr);
  const SensingResult s = sensing_sinr_and_rate(ch, bf, g, sigma_att_w, cfg);
  out.sensing_sinr = s.sinr;
  out.gamma_sense = s.rate_bps;
  return out;
}

}  // namespace lawnsec
