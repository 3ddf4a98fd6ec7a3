#pragma once

#include <optional>

#include "lawnsec/types.hpp"

namespace lawnsec {

struct QueueParams {
  double lambda_rate = 0.0;   // arrivals per second
  double service_rate = 0.0;  // services per second
  QueueModel model = QueueModel::MM1;
};

struct AoiResult {
  double aaoi_s = 0.0;
  double rho = 0.0;
  std::optional<double> delta;  // D/M/1 only
  QueueModel model = QueueModel::MM1;
};

/// Principal branch of the Lambert W function for x >= -1/e.
/// Halley iteration started from the branch-point series near -1/e,
/// log1p(x) on [-1/e + 0.25, e] and log(x) - log(log(x)) beyond.
/// Throws DomainError for x < -1/e.
double lambert_w0(double x);

/// Root in (0, 1) of delta = exp(-(1 - delta) / rho) via Lambert W.
double dm1_delta(double rho);

/// Same root by plain fixed-point iteration from 0; an independent check.
double dm1_delta_fixed_point(double rho, double tol = 1e-15, int max_iter = 10'000'000);

/// Each closed form throws UtilizationError unless 0 < lambda < service rate,
/// and DomainError for non-finite or nonpositive rates.
AoiResult aaoi_mm1(const QueueParams& q);
AoiResult aaoi_dm1(const QueueParams& q);

/// Integrates the age against the stationary waiting-time distribution with
/// Gauss-Legendre on unit cells of the service time. The integration stops
/// once the waiting-time tail mass falls below 1e-13; ConvergenceError if that
/// takes more than 1e6 cells. Cost grows roughly like (1 - rho)^-3: tens of
/// milliseconds at rho = 0.8, seconds above rho = 0.95.
AoiResult aaoi_md1(const QueueParams& q);

/// Dispatches on q.model.
AoiResult aaoi(const QueueParams& q);

/// Stationary M/D/1 waiting-time CDF P(U <= u); 0 for u < 0.
double md1_waiting_cdf(double u, double lambda_rate, double service_rate);

/// Mean M/D/1 waiting time rho / (2 gamma (1 - rho)).
double md1_mean_wait(double lambda_rate, double service_rate);

}  // namespace lawnsec
