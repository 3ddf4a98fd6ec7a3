#include "lawnsec/channels.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lawnsec/error.hpp"
#include "lawnsec/rng.hpp"

namespace lawnsec {

namespace {

// Stream ids for derive_seed(seed, realization, stream).
constexpr std::uint64_t kStreamH = 1;
constexpr std::uint64_t kStreamShadow = 2;
constexpr std::uint64_t kStreamUserPos = 0x100;
constexpr std::uint64_t kStreamH1 = 0x200;
constexpr std::uint64_t kStreamH2 = 0x300;

// Lower Cholesky factor of the exponential correlation matrix c^|i-j|.
Eigen::MatrixXd correlation_factor(int n, double c) {
  if (c == 0.0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = std::pow(c, std::abs(i - j));
  return s.llt().matrixL();
}

CVec rayleigh(Rng& rng, int n, double gain) {
  CVec v(n);
  const double a = std::sqrt(gain);
  for (int k = 0; k < n; ++k) v(k) = a * complex_normal(rng);
  return v;
}

}  // namespace

double path_loss_db(double distance_m, double freq_hz, const PathLossCoeffs& c,
                    double shadowing_db) {
  if (!(distance_m >= 1.0)) throw DomainError("path_loss_db: distance below the 1 m reference");
  if (!(freq_hz > 0.0)) throw DomainError("path_loss_db: frequency must be positive");
  return 10.0 * c.beta1 * std::log10(distance_m) + c.beta2_db +
         10.0 * c.beta3 * std::log10(freq_hz / 1e9) + shadowing_db;
}

double path_gain(double pl_db) { return std::pow(10.0, -pl_db / 10.0); }

CVec array_response(double angle_rad, int n, double spacing) {
  CVec a(n);
  const double phase = 2.0 * M_PI * spacing * std::sin(angle_rad);
  for (int k = 0; k < n; ++k) a(k) = std::polar(1.0, -phase * k);
  return a;
}

double sensing_amplitude(double wavelength_m, double rcs_m2, double range_m) {
  if (!(range_m > 0.0)) throw DomainError("sensing_amplitude: range must be positive");
  const double four_pi_cubed = std::pow(4.0 * M_PI, 3);
  return std::sqrt(wavelength_m * wavelength_m * rcs_m2 /
                   (four_pi_cubed * std::pow(range_m, 4)));
}

double distance(const Vec3& a, const Vec3& b) {
  return std::hypot(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
}

double broadside_angle(const Vec3& from, const Vec3& to) {
  const double dx = to[0] - from[0];
  const double dy = to[1] - from[1];
  if (dx == 0.0 && dy == 0.0) throw DomainError("broadside_angle: coincident horizontal positions");
  return std::atan2(dx, dy);
}

ChannelSet draw_channels(const ScenarioConfig& cfg, std::uint64_t seed, std::uint64_t realization) {
  const int m = cfg.m_antennas;
  const int p = cfg.p_elements;
  const int n = cfg.n_users;
  const double f = cfg.carrier_freq_hz;
  const PathLossCoeffs coeffs{cfg.beta1, cfg.beta2_db, cfg.beta3};

  // One shadowing draw per link, always consumed in the same order.
  Rng shadow_rng = make_rng(seed, realization, kStreamShadow);
  std::normal_distribution<double> shadow(0.0, 1.0);
  auto shadow_db = [&] { return cfg.beta4_db_std * shadow(shadow_rng); };

  ChannelSet ch;

  // BS to RIS, Rician.
  const double d_h = distance(cfg.pos_bs, cfg.pos_ris);
  const double gain_h = path_gain(path_loss_db(d_h, f, coeffs, shadow_db()));
  const CVec a1 = array_response(broadside_angle(cfg.pos_bs, cfg.pos_ris), m, cfg.element_spacing);
  const CVec a2 = array_response(broadside_angle(cfg.pos_ris, cfg.pos_bs), p, cfg.element_spacing);
  CMat w(p, m);
  Rng h_rng = make_rng(seed, realization, kStreamH);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < m; ++c) w(r, c) = complex_normal(h_rng);
  const Eigen::MatrixXd l_ris = correlation_factor(p, cfg.corr_ris);
  const Eigen::MatrixXd l_bs = correlation_factor(m, cfg.corr_bs);
  const CMat h_nlos = l_ris.cast<std::complex<double>>() * w * l_bs.transpose().cast<std::complex<double>>();
  const double k = cfg.rician_k;
  ch.H = std::sqrt(gain_h) * (std::sqrt(k / (1.0 + k)) * (a2 * a1.adjoint()) +
                              std::sqrt(1.0 / (1.0 + k)) * h_nlos);

  // Users, Rayleigh.
  ch.h1.reserve(n);
  ch.h2.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng pos_rng = make_rng(seed, realization, kStreamUserPos + i);
    const double r = cfg.user_radius * std::sqrt(uniform01(pos_rng));
    const double t = 2.0 * M_PI * uniform01(pos_rng);
    const Vec3 u{cfg.pos_user_centroid[0] + r * std::cos(t),
                 cfg.pos_user_centroid[1] + r * std::sin(t), cfg.pos_user_centroid[2]};
    const double g1 = path_gain(path_loss_db(distance(cfg.pos_ris, u), f, coeffs, shadow_db()));
    const double g2 = path_gain(path_loss_db(distance(cfg.pos_bs, u), f, coeffs, shadow_db()));
    Rng h1_rng = make_rng(seed, realization, kStreamH1 + i);
    Rng h2_rng = make_rng(seed, realization, kStreamH2 + i);
    ch.h1.push_back(rayleigh(h1_rng, p, g1));
    ch.h2.push_back(rayleigh(h2_rng, m, g2));
  }

  // Target echo, rank one.
  const double range = distance(cfg.pos_ris, cfg.pos_target);
  ch.beta5 = sensing_amplitude(wavelength_m(cfg), cfg.rcs_m2, range);
  const CVec a3 = array_response(broadside_angle(cfg.pos_ris, cfg.pos_target), p, cfg.element_spacing);
  ch.T = ch.beta5 * (a3 * a3.adjoint());
  return ch;
}

std::vector<ChannelSet> draw_realizations(const ScenarioConfig& cfg, std::uint64_t seed, int count) {
  std::vector<ChannelSet> out;
  out.reserve(count);
  for (int r = 0; r < count; ++r) out.push_back(draw_channels(cfg, seed, r));
  return out;
}

namespace {

void write_rows(std::ostream& os, const CMat& a) {
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c) os << ' ';
      os << a(r, c).real() << ' ' << a(r, c).imag();
    }
    os << '\n';
  }
}

std::string expect_line(std::istream& is, const char* what) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  throw DomainError(std::string("channel dump: missing ") + what);
}

CMat read_rows(std::istream& is, Eigen::Index rows, Eigen::Index cols, const char* what) {
  CMat a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    std::istringstream ss(expect_line(is, what));
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re = 0.0;
      double im = 0.0;
      if (!(ss >> re >> im)) throw DomainError(std::string("channel dump: short row in ") + what);
      a(r, c) = {re, im};
    }
  }
  return a;
}

void expect_header(std::istream& is, const std::string& header) {
  if (expect_line(is, header.c_str()) != header)
    throw DomainError("channel dump: expected section '" + header + "'");
}

}  // namespace

void write_channel_dump(std::ostream& os, const ChannelSet& ch) {
  const auto old_prec = os.precision(17);
  os << "dims " << ch.p() << ' ' << ch.m() << ' ' << ch.n() << '\n';
  os << "beta5 " << ch.beta5 << '\n';
  os << "H\n";
  write_rows(os, ch.H);
  for (int i = 0; i < ch.n(); ++i) {
    os << "h1 " << i << '\n';
    write_rows(os, ch.h1[i]);
  }
  for (int i = 0; i < ch.n(); ++i) {
    os << "h2 " << i << '\n';
    write_rows(os, ch.h2[i]);
  }
  os << "T\n";
  write_rows(os, ch.T);
  os.precision(old_prec);
}

ChannelSet read_channel_dump(std::istream& is) {
  std::istringstream dims(expect_line(is, "dims"));
  std::string tag;
  int p = 0;
  int m = 0;
  int n = 0;
  if (!(dims >> tag >> p >> m >> n) || tag != "dims" || p <= 0 || m <= 0 || n <= 0)
    throw DomainError("channel dump: bad dims line");
  std::istringstream b5(expect_line(is, "beta5"));
  ChannelSet ch;
  if (!(b5 >> tag >> ch.beta5) || tag != "beta5") throw DomainError("channel dump: bad beta5 line");
  expect_header(is, "H");
  ch.H = read_rows(is, p, m, "H");
  for (int i = 0; i < n; ++i) {
    expect_header(is, "h1 " + std::to_string(i));
    ch.h1.push_back(read_rows(is, p, 1, "h1"));
  }
  for (int i = 0; i < n; ++i) {
    expect_header(is, "h2 " + std::to_string(i));
    ch.h2.push_back(read_rows(is, m, 1, "h2"));
  }
  expect_header(is, "T");
  ch.T = read_rows(is, p, p, "T");
  return ch;
}

}  // namespace lawnsec
