// Small self-contained numerics: compensated summation, the regularized
// incomplete gamma tail (chi-square p-values), and the zeta constant used by
// the m-series tail certificates. Kept in-repo so Eigen stays the only math
// dependency of the library.
#pragma once

#include <cmath>
#include <cstddef>

namespace ovals {

// zeta(3/2); normalizes the certified truncation bound of the 1/m^{3/2} series
inline constexpr double kZeta32 = 2.6123753486854883434;

// zeta(2) = pi^2/6 and the Siegel constants c1 = 1/zeta(2), c2 = c1^2
inline constexpr double kZeta2 = 1.6449340668482264365;

// Kahan-Neumaier compensated accumulator; used wherever a sum must be
// reproducible to ~1e-12 independent of partitioning order.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a).
// Series for x < a+1, Lentz continued fraction otherwise; absolute error
// below 1e-12 over the chi-square range we use.
double gamma_q(double a, double x);

// survival function of the chi-square distribution with k degrees of freedom
inline double chi_square_tail(double stat, int dof) {
  return gamma_q(0.5 * dof, 0.5 * stat);
}

}  // namespace ovals
