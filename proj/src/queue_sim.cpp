#include "lawnsec/queue_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lawnsec/error.hpp"
#include "lawnsec/rng.hpp"

namespace lawnsec {

namespace {

constexpr int kBatches = 30;
constexpr double kT975Df29 = 2.045;

void check_inputs(double lambda_rate, double service_rate, std::int64_t n, std::int64_t min_n) {
  if (!(lambda_rate > 0.0) || !(service_rate > 0.0) || !std::isfinite(lambda_rate) ||
      !std::isfinite(service_rate))
    throw DomainError("queue simulation: rates must be positive and finite");
  if (lambda_rate >= service_rate)
    throw UtilizationError("queue simulation: utilization must be below 1");
  if (n < min_n || n > 1'000'000'000)
    throw DomainError("queue simulation: sample count out of range");
}

std::pair<Process, Process> processes(QueueModel model) {
  switch (model) {
    case QueueModel::MM1: return {Process::Exponential, Process::Exponential};
    case QueueModel::DM1: return {Process::Deterministic, Process::Exponential};
    case QueueModel::MD1: return {Process::Exponential, Process::Deterministic};
  }
  throw DomainError("queue simulation: unknown model");
}

class Sampler {
 public:
  Sampler(Process kind, double rate, Rng& rng) : kind_(kind), mean_(1.0 / rate), rng_(rng) {}

  double operator()() {
    if (kind_ == Process::Deterministic) return mean_;
    double u = uniform01(rng_);
    while (u <= 0.0) u = uniform01(rng_);
    return -mean_ * std::log(u);
  }

 private:
  Process kind_;
  double mean_;
  Rng& rng_;
};

}  // namespace

// Update i arrives B_i after update i-1 and spends T_i in the system. Between
// deliveries i-1 and i the age traces a trapezoid of area B_i T_i + B_i^2 / 2,
// so the time-average age is sum(area) / sum(B).
SimResult simulate_aoi(Process arrivals, Process service, double lambda_rate, double service_rate,
                       std::int64_t n_deliveries, std::uint64_t seed) {
  check_inputs(lambda_rate, service_rate, n_deliveries, 10'000);
  Rng arr_rng = make_rng(seed, 1);
  Rng svc_rng = make_rng(seed, 2);
  Sampler next_gap(arrivals, lambda_rate, arr_rng);
  Sampler next_service(service, service_rate, svc_rng);

  const std::int64_t warmup = n_deliveries / 100;
  const std::int64_t kept = n_deliveries - warmup;
  const std::int64_t per_batch = kept / kBatches;

  double prev_system = 0.0;  // T_{i-1}
  double area[kBatches] = {};
  double span[kBatches] = {};
  for (std::int64_t i = 0; i < n_deliveries; ++i) {
    const double b = next_gap();
    const double wait = std::max(prev_system - b, 0.0);
    const double t = wait + next_service();
    if (i >= warmup) {
      const std::int64_t k = std::min<std::int64_t>((i - warmup) / per_batch, kBatches - 1);
      area[k] += b * t + 0.5 * b * b;
      span[k] += b;
    }
    prev_system = t;
  }

  double total_area = 0.0;
  double total_span = 0.0;
  double means[kBatches];
  for (int k = 0; k < kBatches; ++k) {
    total_area += area[k];
    total_span += span[k];
    means[k] = area[k] / span[k];
  }
  const double est = total_area / total_span;
  double ss = 0.0;
  for (double m : means) ss += (m - est) * (m - est);
  const double sd = std::sqrt(ss / (kBatches - 1));

  SimResult r;
  r.aaoi_est_s = est;
  r.deliveries = kept;
  r.half_width_95 = kT975Df29 * sd / std::sqrt(static_cast<double>(kBatches));
  return r;
}

SimResult simulate_aoi(QueueModel model, double lambda_rate, double service_rate,
                       std::int64_t n_deliveries, std::uint64_t seed) {
  const auto [a, s] = processes(model);
  return simulate_aoi(a, s, lambda_rate, service_rate, n_deliveries, seed);
}

DelaySamples waiting_time_cdf_empirical(QueueModel model, double lambda_rate, double service_rate,
                                        std::int64_t n_samples, std::uint64_t seed) {
  check_inputs(lambda_rate, service_rate, n_samples, 100);
  const auto [arrivals, service] = processes(model);
  Rng arr_rng = make_rng(seed, 1);
  Rng svc_rng = make_rng(seed, 2);
  Sampler next_gap(arrivals, lambda_rate, arr_rng);
  Sampler next_service(service, service_rate, svc_rng);

  const std::int64_t warmup = n_samples / 100;
  DelaySamples out;
  out.waiting.reserve(n_samples);
  out.system.reserve(n_samples);
  double prev_system = 0.0;
  for (std::int64_t i = 0; i < n_samples + warmup; ++i) {
    const double wait = std::max(prev_system - next_gap(), 0.0);
    const double t = wait + next_service();
    if (i >= warmup) {
      out.waiting.push_back(wait);
      out.system.push_back(t);
    }
    prev_system = t;
  }
  std::sort(out.waiting.begin(), out.waiting.end());
  std::sort(out.system.begin(), out.system.end());
  return out;
}

double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  const auto n = static_cast<double>(sorted.size());
  if (sorted.empty()) throw DomainError("ks_statistic: no samples");
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double x = sorted[i];
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == x) ++j;
    const double f_right = cdf(x);
    const double f_left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    d = std::max(d, std::abs(static_cast<double>(j) / n - f_right));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f_left));
    i = j;
  }
  return d;
}

}  // namespace lawnsec
