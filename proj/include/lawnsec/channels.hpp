#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "lawnsec/config.hpp"

namespace lawnsec {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Large-scale path-loss coefficients; the shadowing term is passed per call.
struct PathLossCoeffs {
  double beta1 = 2.2;      // distance exponent
  double beta2_db = 32.45;  // offset
  double beta3 = 2.0;      // frequency exponent
};

/// Path loss in dB relative to r0 = 1 m and f0 = 1 GHz.
/// Throws DomainError when distance_m < 1 or freq_hz <= 0.
double path_loss_db(double distance_m, double freq_hz, const PathLossCoeffs& coeffs,
                    double shadowing_db = 0.0);

/// Linear power gain 10^(-pl/10).
double path_gain(double path_loss_db);

/// ULA response exp(-j 2 pi d k sin(angle)), k = 0..n-1, d in wavelengths.
CVec array_response(double angle_rad, int n_elements, double spacing_over_wavelength = 0.5);

/// Round-trip amplitude sqrt(w^2 S / ((4 pi)^3 R^4)). Throws DomainError for range <= 0.
double sensing_amplitude(double wavelength_m, double rcs_m2, double range_m);

/// Angle of `to` seen from `from`, measured from the broadside of an array
/// laid out along x. Throws DomainError when the horizontal offset is zero.
double broadside_angle(const Vec3& from, const Vec3& to);

double distance(const Vec3& a, const Vec3& b);

/// One realization of every link.
struct ChannelSet {
  CMat H;                // P x M, BS to RIS
  std::vector<CVec> h1;  // N vectors of length P, RIS to user
  std::vector<CVec> h2;  // N vectors of length M, BS to user
  CMat T;                // P x P, RIS to target to RIS
  double beta5 = 0.0;    // sensing-link amplitude

  int p() const { return static_cast<int>(H.rows()); }
  int m() const { return static_cast<int>(H.cols()); }
  int n() const { return static_cast<int>(h1.size()); }
};

/// Draws realization `realization` for `seed`. Every link has its own RNG
/// stream and H is filled row by row, so changing P or M keeps the shared
/// leading entries identical across configs.
ChannelSet draw_channels(const ScenarioConfig& cfg, std::uint64_t seed,
                         std::uint64_t realization = 0);

/// `count` consecutive realizations starting at 0.
std::vector<ChannelSet> draw_realizations(const ScenarioConfig& cfg, std::uint64_t seed, int count);

/// Plain-text dump: a `dims P M N` line, `beta5 v`, then sections `H`, `h1 i`,
/// `h2 i`, `T`, each row written as space-separated `re im` pairs.
void write_channel_dump(std::ostream& os, const ChannelSet& ch);
ChannelSet read_channel_dump(std::istream& is);

}  // namespace lawnsec
