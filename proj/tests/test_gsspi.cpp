#include <doctest.h>

#include <cmath>

#include "lawnsec/error.hpp"
#include "lawnsec/gsspi.hpp"

using namespace lawnsec;

TEST_CASE("quadratic minimum") {
  const GsspiResult r = gsspi_minimize([](double x) { return (x - 2.0) * (x - 2.0); }, 0.0, 5.0);
  CHECK(r.x == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(r.converged);
  CHECK(r.iterations <= 25);
}

TEST_CASE("quartic minimum within the default budget") {
  auto f = [](double x) { return std::pow(x, 4) - 3.0 * x * x; };
  const GsspiResult r = gsspi_minimize(f, 0.0, 3.0);
  CHECK(std::abs(r.x - std::sqrt(1.5)) <= 1e-6);
  CHECK(r.iterations <= 25);
  CHECK(r.f <= f(0.0));
  CHECK(r.f <= f(3.0));
}

TEST_CASE("pure golden steps shrink the bracket by the golden ratio") {
  GsspiOptions opt;
  opt.allow_parabolic = false;
  opt.record_brackets = true;
  opt.abs_tol = 1e-12;
  opt.iter_max = 40;
  const GsspiResult r = gsspi_minimize([](double x) { return std::abs(x - 0.3); }, -1.0, 2.0, opt);
  REQUIRE(r.bracket_widths.size() >= 10);
  double prev = 3.0;
  for (double w : r.bracket_widths) {
    CHECK(w / prev <= 0.62);
    prev = w;
  }
  CHECK(r.x == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("monotone objective returns the endpoint") {
  const GsspiResult up = gsspi_minimize([](double x) { return x; }, 1.0, 4.0);
  CHECK(up.x == 1.0);
  const GsspiResult down = gsspi_minimize([](double x) { return -x; }, 1.0, 4.0);
  CHECK(down.x == 4.0);
  GsspiOptions no_ends;
  no_ends.check_endpoints = false;
  const GsspiResult inner = gsspi_minimize([](double x) { return x; }, 1.0, 4.0, no_ends);
  CHECK(inner.x > 1.0);
  CHECK(inner.x < 1.0 + 1e-4);
}

TEST_CASE("iterate stays inside the bracket") {
  int outside = 0;
  auto f = [&](double x) {
    if (x < -3.0 || x > 7.0) ++outside;
    return std::sin(x) + 0.1 * x * x;
  };
  const GsspiResult r = gsspi_minimize(f, -3.0, 7.0);
  CHECK(outside == 0);
  CHECK(r.x >= -3.0);
  CHECK(r.x <= 7.0);
}

TEST_CASE("invalid bracket") {
  CHECK_THROWS_AS(gsspi_minimize([](double x) { return x; }, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(gsspi_minimize([](double x) { return x; }, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(gsspi_minimize([](double x) { return x; }, 0.0, INFINITY), DomainError);
}
