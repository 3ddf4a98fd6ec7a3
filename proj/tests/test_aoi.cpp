#include <doctest.h>

#include <cmath>
#include <vector>

#include "lawnsec/aoi.hpp"
#include "lawnsec/error.hpp"

using namespace lawnsec;

namespace {

double mm1_oracle(double l, double g) {
  const double r = l / g;
  return (1.0 + 1.0 / r + r * r / (1.0 - r)) / g;
}

// Classical closed form for Poisson arrivals and deterministic service.
double md1_oracle(double l, double g) {
  const double r = l / g;
  return (0.5 / (1.0 - r) + 0.5 + (1.0 - r) * std::exp(r) / r) / g;
}

// Erlang's finite sum for the M/D/1 waiting-time CDF with unit service.
double md1_cdf_oracle(double u, double r) {
  double s = 0.0;
  for (int k = 0; k <= static_cast<int>(std::floor(u)); ++k) {
    const double x = u - k;
    s += std::pow(-r * x, k) / std::tgamma(k + 1.0) * std::exp(r * x);
  }
  return (1.0 - r) * s;
}

QueueParams q(double l, double g, QueueModel m) { return {l, g, m}; }

// First differences change sign exactly once, from negative to positive.
bool single_interior_minimum(const std::vector<double>& v) {
  int changes = 0;
  for (std::size_t i = 2; i < v.size(); ++i) {
    const bool down_before = v[i - 1] < v[i - 2];
    const bool down_now = v[i] < v[i - 1];
    if (down_before != down_now) {
      if (!down_before) return false;
      ++changes;
    }
  }
  return changes == 1 && v[1] < v[0] && v.back() > v[v.size() - 2];
}

}  // namespace

TEST_CASE("Lambert W on the principal branch") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-13));
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  for (double x : {-0.3678, -0.36, -0.2, -1e-6, 1e-6, 0.5, 2.0, 10.0, 1e3, 1e10, 1e100, 1e300}) {
    const double w = lambert_w0(x);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12));
    CHECK(w >= -1.0);
  }
  CHECK_THROWS_AS(lambert_w0(-0.4), DomainError);
  CHECK_THROWS_AS(lambert_w0(NAN), DomainError);
}

TEST_CASE("M/M/1 closed form") {
  CHECK(aaoi_mm1(q(0.5, 1.0, QueueModel::MM1)).aaoi_s == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(aaoi_mm1(q(0.447, 1e6, QueueModel::MM1)).aaoi_s ==
        doctest::Approx(mm1_oracle(0.447, 1e6)).epsilon(1e-12));
  CHECK(aaoi_mm1(q(0.447, 1e6, QueueModel::MM1)).aaoi_s ==
        doctest::Approx(1.0 / 0.447).epsilon(1e-5));
  CHECK(aaoi_mm1(q(0.999999, 1.0, QueueModel::MM1)).aaoi_s > 9e5);
  CHECK_THROWS_AS(aaoi_mm1(q(1.0, 1.0, QueueModel::MM1)), UtilizationError);
  CHECK_THROWS_AS(aaoi_mm1(q(2.0, 1.0, QueueModel::MM1)), UtilizationError);
  CHECK_THROWS_AS(aaoi_mm1(q(0.0, 1.0, QueueModel::MM1)), DomainError);
  CHECK_THROWS_AS(aaoi_mm1(q(0.5, INFINITY, QueueModel::MM1)), DomainError);
}

TEST_CASE("D/M/1 root and closed form") {
  CHECK(dm1_delta(0.5) == doctest::Approx(0.20318786997998).epsilon(1e-12));
  for (double r = 0.05; r < 0.99; r += 0.05) {
    const double d = dm1_delta(r);
    CHECK(d == doctest::Approx(std::exp(-(1.0 - d) / r)).epsilon(1e-13));
    CHECK(std::abs(d - dm1_delta_fixed_point(r)) <= 1e-10);
  }
  double prev = 0.0;
  for (double r = 0.02; r < 0.995; r += 0.01) {
    const double d = dm1_delta(r);
    CHECK(d >= prev);
    prev = d;
  }
  const AoiResult res = aaoi_dm1(q(0.5, 1.0, QueueModel::DM1));
  REQUIRE(res.delta);
  CHECK(*res.delta == doctest::Approx(0.20318786997998).epsilon(1e-12));
  CHECK(res.aaoi_s == doctest::Approx(1.0 + 1.0 / (1.0 - 0.20318786997998)).epsilon(1e-12));
  CHECK(aaoi_dm1(q(0.01, 1.0, QueueModel::DM1)).aaoi_s == doctest::Approx(50.0 + 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(aaoi_dm1(q(1.5, 1.0, QueueModel::DM1)), UtilizationError);
}

TEST_CASE("M/D/1 integral matches the classical closed form") {
  for (double r : {0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.85}) {
    for (double g : {1.0, 4e7}) {
      const double got = aaoi_md1(q(r * g, g, QueueModel::MD1)).aaoi_s;
      CHECK(got == doctest::Approx(md1_oracle(r * g, g)).epsilon(1e-10));
    }
  }
  // As rho -> 0 the age approaches one inter-arrival time plus one service.
  const double l = 1e-3;
  CHECK(aaoi_md1(q(l, 1.0, QueueModel::MD1)).aaoi_s - 1.0 / l - 1.0 == doctest::Approx(0.0).epsilon(2e-3));
  CHECK_THROWS_AS(aaoi_md1(q(1.0, 1.0, QueueModel::MD1)), UtilizationError);
}

TEST_CASE("M/D/1 waiting-time distribution") {
  CHECK(md1_waiting_cdf(-1.0, 0.5, 1.0) == 0.0);
  CHECK(md1_waiting_cdf(0.0, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(md1_mean_wait(0.5, 1.0) == doctest::Approx(0.5));
  for (double r : {0.2, 0.5}) {
    for (double u = 0.0; u < 8.0; u += 0.173) {
      CHECK(md1_waiting_cdf(u, r, 1.0) == doctest::Approx(md1_cdf_oracle(u, r)).epsilon(1e-9));
      CHECK(md1_waiting_cdf(u / 3.0, 3.0 * r, 3.0) ==
            doctest::Approx(md1_cdf_oracle(u, r)).epsilon(1e-9));
    }
  }
  double prev = 0.0;
  for (double u = 0.0; u < 150.0; u += 0.05) {
    const double c = md1_waiting_cdf(u, 0.9, 1.0);
    CHECK(c >= prev - 1e-14);
    CHECK(c <= 1.0);
    prev = c;
  }
  CHECK(prev > 1.0 - 1e-6);
  // Continuity across the switch between the two evaluation methods.
  CHECK(md1_waiting_cdf(std::nextafter(3.0, 0.0), 0.8, 1.0) ==
        doctest::Approx(md1_waiting_cdf(3.0, 0.8, 1.0)).epsilon(1e-12));
}

TEST_CASE("age is convex in the rate with a single interior minimum") {
  for (QueueModel m : {QueueModel::MM1, QueueModel::DM1, QueueModel::MD1}) {
    std::vector<double> v;
    for (int k = 0; k < 120; ++k) {
      const double r = 0.02 + 0.83 * k / 119.0;
      v.push_back(aaoi(q(r, 1.0, m)).aaoi_s);
    }
    CHECK(single_interior_minimum(v));
    for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(v[i - 1] + v[i + 1] - 2.0 * v[i] >= -1e-9);
  }
}

TEST_CASE("exponential service ages more than deterministic service or arrivals") {
  for (double r = 0.05; r < 0.9; r += 0.05) {
    const double mm1 = aaoi(q(r, 1.0, QueueModel::MM1)).aaoi_s;
    CHECK(mm1 >= aaoi(q(r, 1.0, QueueModel::MD1)).aaoi_s);
    CHECK(mm1 >= aaoi(q(r, 1.0, QueueModel::DM1)).aaoi_s);
  }
  const AoiResult r = aaoi(q(0.3, 2.0, QueueModel::DM1));
  CHECK(r.model == QueueModel::DM1);
  CHECK(r.rho == doctest::Approx(0.15));
}
