#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "lawnsec/error.hpp"

namespace lawnsec {

struct GsspiOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1.4901161193847656e-08;  // sqrt(machine epsilon)
  int iter_max = 25;
  bool allow_parabolic = true;  // false gives pure golden-section steps
  bool check_endpoints = true;  // also compare f(lo) and f(hi) at the end
  bool record_brackets = false;
};

struct GsspiResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;              // bracket test met before iter_max
  std::vector<double> bracket_widths;  // width after each iteration, if recorded
};

/// Brent's derivative-free minimizer: golden-section steps, replaced by a
/// parabolic step whenever the fitted vertex falls inside the bracket and the
/// step is shorter than half the step before last. Stops when the bracket
/// around the incumbent is within 2 (rel_tol |x| + abs_tol) or after iter_max
/// iterations. Throws DomainError unless lo < hi.
template <class F>
GsspiResult gsspi_minimize(F&& f, double lo, double hi, const GsspiOptions& opt = {}) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("gsspi_minimize: need finite lo < hi");

  constexpr double kGold = 0.3819660112501051;  // (3 - sqrt 5) / 2
  GsspiResult res;
  double a = lo;
  double b = hi;
  double x = a + kGold * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  ++res.evaluations;
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  for (res.iterations = 0; res.iterations < opt.iter_max;) {
    const double m = 0.5 * (a + b);
    const double tol1 = opt.rel_tol * std::abs(x) + opt.abs_tol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
      res.converged = true;
      break;
    }
    ++res.iterations;

    bool golden = true;
    if (opt.allow_parabolic && std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        e = d;
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= m) ? a - x : b - x;
      d = kGold * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    ++res.evaluations;

    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
    if (opt.record_brackets) res.bracket_widths.push_back(b - a);
  }

  res.x = x;
  res.f = fx;
  if (opt.check_endpoints) {
    const double flo = f(lo);
    const double fhi = f(hi);
    res.evaluations += 2;
    if (flo < res.f) {
      res.x = lo;
      res.f = flo;
    }
    if (fhi < res.f) {
      res.x = hi;
      res.f = fhi;
    }
  }
  return res;
}

}  // namespace lawnsec
