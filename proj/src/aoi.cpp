#include "lawnsec/aoi.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "lawnsec/error.hpp"

namespace lawnsec {

namespace {

void check_rates(const QueueParams& q) {
  if (!std::isfinite(q.lambda_rate) || !std::isfinite(q.service_rate) || q.lambda_rate <= 0.0 ||
      q.service_rate <= 0.0)
    throw DomainError("aaoi: rates must be positive and finite");
  if (q.lambda_rate >= q.service_rate)
    throw UtilizationError("aaoi: utilization lambda/gamma must be below 1");
}

// 20-point Gauss-Legendre on [-1, 1], nodes and weights for the positive half.
constexpr std::array<double, 10> kGlNodes{
    0.0765265211334973337546404, 0.2277858511416450780804962, 0.3737060887154195606725482,
    0.5108670019508270980043641, 0.6360536807265150254528367, 0.7463319064601507926143051,
    0.8391169718222188233945291, 0.9122344282513259058677524, 0.9639719272779137912676661,
    0.9931285991850949247861224};
constexpr std::array<double, 10> kGlWeights{
    0.1527533871307258506980843, 0.1491729864726037467878287, 0.1420961093183820513292983,
    0.1316886384491766268984945, 0.1181945319615184173123774, 0.1019301198172404350367501,
    0.0832767415767047487247581, 0.0626720483341090635695065, 0.0406014298003869413310400,
    0.0176140071391521183118620};

template <class F>
double gauss_legendre(double a, double b, F&& f) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < kGlNodes.size(); ++k)
    s += kGlWeights[k] * (f(mid - half * kGlNodes[k]) + f(mid + half * kGlNodes[k]));
  return half * s;
}

// Waiting-time CDF in units of the service time, direct Erlang sum.
double md1_cdf_direct(double x, double rho) {
  const auto top = static_cast<int>(std::floor(x));
  double s = 0.0;
  double fact = 1.0;
  for (int n = 0; n <= top; ++n) {
    if (n > 0) fact *= n;
    const double y = rho * (n - x);
    s += std::pow(y, n) * std::exp(-y) / fact;
  }
  return (1.0 - rho) * s;
}

// 1 - CDF as a series of positive terms; stable for large x.
double md1_tail_series(double x, double rho) {
  const double log_rho = std::log(rho);
  const auto first = static_cast<long>(std::floor(x)) + 1;
  double s = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  double log_fact = std::lgamma(first + 1.0);
  for (long n = first; n < first + 50'000'000; ++n) {
    if (n > first) log_fact += std::log(static_cast<double>(n));
    const double y = n - x;
    const double log_t = n * (log_rho + std::log(y)) - rho * y - log_fact;
    const double t = std::exp(log_t);
    s += t;
    if (t <= 1e-17 * s && t <= prev && n > first + 2) return (1.0 - rho) * s;
    prev = t;
  }
  throw ConvergenceError("md1_waiting_cdf: tail series did not converge");
}

double md1_tail(double x, double rho) {
  if (x < 0.0) return 1.0;
  if (x < 3.0) return 1.0 - md1_cdf_direct(x, rho);
  return md1_tail_series(x, rho);
}

// e^-t sum_{k >= n} t^k / k!, the regularized lower incomplete gamma P(n, t).
double lower_gamma_p(int n, double t) {
  if (t >= 1.0) {
    double partial = 0.0;
    double term = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k > 0) term *= t / k;
      partial += term;
    }
    return 1.0 - std::exp(-t) * partial;
  }
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= t / k;
  double s = 0.0;
  for (int k = n; k < n + 60 && term > 1e-300; ++k) {
    s += term;
    term *= t / (k + 1);
  }
  return std::exp(-t) * s;
}

}  // namespace

double lambert_w0(double x) {
  constexpr double kBranch = -0.36787944117144232159552377016146;  // -1/e
  if (std::isnan(x) || x < kBranch) throw DomainError("lambert_w0: argument below -1/e");
  if (x == kBranch) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(std::max(0.0, 2.0 * (M_E * x + 1.0)));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < M_E) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double r = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * r / (2.0 * wp1);
    const double step = r / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

double dm1_delta(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw UtilizationError("dm1_delta: rho must lie in (0, 1)");
  const double arg = -std::exp(-1.0 / rho) / rho;
  return -rho * lambert_w0(std::max(arg, -0.36787944117144232159552377016146));
}

double dm1_delta_fixed_point(double rho, double tol, int max_iter) {
  if (!(rho > 0.0 && rho < 1.0)) throw UtilizationError("dm1_delta_fixed_point: rho must lie in (0, 1)");
  double d = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double next = std::exp(-(1.0 - d) / rho);
    if (std::abs(next - d) <= tol) return next;
    d = next;
  }
  throw ConvergenceError("dm1_delta_fixed_point: iteration limit reached");
}

AoiResult aaoi_mm1(const QueueParams& q) {
  check_rates(q);
  const double l = q.lambda_rate;
  const double g = q.service_rate;
  AoiResult r;
  r.model = QueueModel::MM1;
  r.rho = l / g;
  r.aaoi_s = (1.0 / g) * (1.0 + g / l + l * l / (g * g - l * g));
  return r;
}

AoiResult aaoi_dm1(const QueueParams& q) {
  check_rates(q);
  AoiResult r;
  r.model = QueueModel::DM1;
  r.rho = q.lambda_rate / q.service_rate;
  const double d = dm1_delta(r.rho);
  r.delta = d;
  r.aaoi_s = (1.0 / q.service_rate) * (q.service_rate / (2.0 * q.lambda_rate) + 1.0 / (1.0 - d));
  return r;
}

double md1_waiting_cdf(double u, double lambda_rate, double service_rate) {
  check_rates({lambda_rate, service_rate, QueueModel::MD1});
  if (u < 0.0) return 0.0;
  const double rho = lambda_rate / service_rate;
  const double x = u * service_rate;
  if (x < 3.0) return md1_cdf_direct(x, rho);
  return 1.0 - md1_tail_series(x, rho);
}

double md1_mean_wait(double lambda_rate, double service_rate) {
  check_rates({lambda_rate, service_rate, QueueModel::MD1});
  const double rho = lambda_rate / service_rate;
  return rho / (2.0 * service_rate * (1.0 - rho));
}

// In service-time units (Cons = 1) the age is 1 + 1/rho + rho E[h(U + 1)],
// where h(s) = int_0^s rho b e^{-rho b} (s - b) db is the expected overlap of
// the next inter-arrival gap with the system time U + 1. Integrating by parts,
// E[h(U + 1)] = h(1) + int_0^inf h'(x + 1) P(U > x) dx.
AoiResult aaoi_md1(const QueueParams& q) {
  check_rates(q);
  const double rho = q.lambda_rate / q.service_rate;

  // h'(s) = P(2, rho s) / rho and h(s) = s h'(s) - 2 P(3, rho s) / rho^2.
  auto dh = [rho](double s) { return lower_gamma_p(2, rho * s) / rho; };
  const double h1 = dh(1.0) - 2.0 * lower_gamma_p(3, rho) / (rho * rho);

  double integral = 0.0;
  constexpr long kMaxCells = 1'000'000;
  long k = 0;
  for (; k < kMaxCells; ++k) {
    const double a = static_cast<double>(k);
    integral += gauss_legendre(a, a + 1.0, [&](double x) { return dh(x + 1.0) * md1_tail(x, rho); });
    if (md1_tail(a + 1.0, rho) < 1e-13) break;
  }
  if (k == kMaxCells) throw ConvergenceError("aaoi_md1: waiting-time tail did not decay");

  AoiResult r;
  r.model = QueueModel::MD1;
  r.rho = rho;
  r.aaoi_s = (1.0 + 1.0 / rho + rho * (h1 + integral)) / q.service_rate;
  return r;
}

AoiResult aaoi(const QueueParams& q) {
  switch (q.model) {
    case QueueModel::MM1: return aaoi_mm1(q);
    case QueueModel::DM1: return aaoi_dm1(q);
    case QueueModel::MD1: return aaoi_md1(q);
  }
  throw DomainError("aaoi: unknown queue model");
}

}  // namespace lawnsec
