#include "ovals/mathx.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ovals {

// ---------------------------------------------------------------------------
// regularized incomplete gamma, classic series / continued-fraction split
// ---------------------------------------------------------------------------

namespace {

// P(a,x) by the ascending series, valid and fast for x < a+1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_p_series: no convergence");
}

// Q(a,x) by modified Lentz continued fraction, for x >= a+1
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace ovals
