// Statistical plumbing shared by the experiments: empirical distributions,
// two-sample Kolmogorov-Smirnov distance, chi-square uniformity tests on
// [0,1) and [0,1)^2, empirical absolute moments, Wilson intervals, and a
// histogram writer.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ovals/mathx.hpp"

namespace ovals {

struct EmpiricalDistribution {
  std::vector<double> samples;  // sorted ascending
  std::vector<double> draws;    // the same values in draw order (for nested
                                // prefix subsamples of Monte Carlo runs)
  std::string metadata;         // provenance (JSON text), may be empty

  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> xs, std::string meta = "");

  std::size_t size() const { return samples.size(); }
  // empirical CDF, right-continuous
  double cdf(double x) const;
};

// sup-norm distance between the two empirical CDFs
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// chi-square goodness-of-fit p-value against the uniform law on [0,1);
// requires >= 5 expected counts per bin
double chi_square_uniform(const std::vector<double>& samples, int bins);

// same on the unit square with bins_per_dim^2 cells
double chi_square_uniform_2d(const std::vector<std::pair<double, double>>& samples,
                             int bins_per_dim);

// (1/n) sum |x_i|^p
double empirical_moment(const EmpiricalDistribution& d, double p);

// Wilson score interval for a binomial proportion (z = 1.96 by default)
struct Interval {
  double lo = 0, hi = 0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959964);

// equal-width histogram rows: bin_left, bin_right, count, cum_fraction
struct HistogramRow {
  double left, right;
  std::uint64_t count;
  double cum_fraction;
};
std::vector<HistogramRow> histogram(const EmpiricalDistribution& d, int bins);

// least-squares slope of y against x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ovals
