#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lawnsec/types.hpp"

namespace lawnsec {

enum class Process { Exponential, Deterministic };

struct SimResult {
  double aaoi_est_s = 0.0;
  std::int64_t deliveries = 0;  // deliveries after warm-up
  double half_width_95 = 0.0;   // batch-means confidence half-width
};

/// FCFS single-server age simulation. The first 1% of deliveries is warm-up;
/// the rest are split into 30 batches for the confidence interval.
/// Throws UtilizationError unless lambda < service rate, DomainError when
/// n_deliveries is outside [1e4, 1e9].
SimResult simulate_aoi(Process arrivals, Process service, double lambda_rate, double service_rate,
                       std::int64_t n_deliveries, std::uint64_t seed);

/// Same, with the arrival and service processes implied by the model.
SimResult simulate_aoi(QueueModel model, double lambda_rate, double service_rate,
                       std::int64_t n_deliveries, std::uint64_t seed);

/// Sorted Lindley-recursion samples of the waiting time U and the system time
/// U + service, taken after a 1% warm-up.
struct DelaySamples {
  std::vector<double> waiting;
  std::vector<double> system;
};

DelaySamples waiting_time_cdf_empirical(QueueModel model, double lambda_rate, double service_rate,
                                        std::int64_t n_samples, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between sorted samples and a CDF. Atoms in the
/// reference CDF (for example the empty-queue mass at 0) are handled by also
/// comparing left limits.
double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

}  // namespace lawnsec
