#include "ovals/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ovals {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> xs, std::string meta)
    : samples(std::move(xs)), metadata(std::move(meta)) {
  if (samples.empty()) throw std::domain_error("EmpiricalDistribution: no samples");
  draws = samples;
  std::sort(samples.begin(), samples.end());
}

double EmpiricalDistribution::cdf(double x) const {
  auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return double(it - samples.begin()) / double(samples.size());
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.samples.empty() || b.samples.empty())
    throw std::domain_error("ks_distance: empty distribution");
  // merge walk over both sorted sample sets, tracking the CDF gap
  const double na = double(a.samples.size()), nb = double(b.samples.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.samples.size() && j < b.samples.size()) {
    const double xa = a.samples[i], xb = b.samples[j];
    const double x = std::min(xa, xb);
    while (i < a.samples.size() && a.samples[i] <= x) ++i;
    while (j < b.samples.size() && b.samples[j] <= x) ++j;
    best = std::max(best, std::abs(double(i) / na - double(j) / nb));
  }
  best = std::max(best, std::abs(1.0 - double(j) / nb));
  best = std::max(best, std::abs(double(i) / na - 1.0));
  return best;
}

double chi_square_uniform(const std::vector<double>& samples, int bins) {
  if (bins < 2) throw std::domain_error("chi_square_uniform: need >= 2 bins");
  const double expected = double(samples.size()) / bins;
  if (expected < 5.0) throw std::domain_error("chi_square_uniform: < 5 expected per cell");
  std::vector<std::uint64_t> count(bins, 0);
  for (double x : samples) {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("chi_square_uniform: sample outside [0,1)");
    ++count[std::min<int>(int(x * bins), bins - 1)];
  }
  double stat = 0.0;
  for (auto c : count) {
    const double d = double(c) - expected;
    stat += d * d / expected;
  }
  return chi_square_tail(stat, bins - 1);
}

double chi_square_uniform_2d(const std::vector<std::pair<double, double>>& samples,
                             int bins_per_dim) {
  if (bins_per_dim < 2) throw std::domain_error("chi_square_uniform_2d: need >= 2 bins per dim");
  const int cells = bins_per_dim * bins_per_dim;
  const double expected = double(samples.size()) / cells;
  if (expected < 5.0) throw std::domain_error("chi_square_uniform_2d: < 5 expected per cell");
  std::vector<std::uint64_t> count(cells, 0);
  for (const auto& [x, y] : samples) {
    if (x < 0.0 || x >= 1.0 || y < 0.0 || y >= 1.0)
      throw std::domain_error("chi_square_uniform_2d: sample outside the unit square");
    const int bx = std::min<int>(int(x * bins_per_dim), bins_per_dim - 1);
    const int by = std::min<int>(int(y * bins_per_dim), bins_per_dim - 1);
    ++count[bx * bins_per_dim + by];
  }
  double stat = 0.0;
  for (auto c : count) {
    const double d = double(c) - expected;
    stat += d * d / expected;
  }
  return chi_square_tail(stat, cells - 1);
}

double empirical_moment(const EmpiricalDistribution& d, double p) {
  if (!(p > 0.0)) throw std::domain_error("empirical_moment: order must be positive");
  KahanSum acc;
  for (double x : d.samples) acc.add(std::pow(std::abs(x), p));
  return acc.value() / double(d.samples.size());
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) throw std::domain_error("wilson_interval: n = 0");
  const double p = double(successes) / double(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / double(n);
  const double center = (p + z2 / (2.0 * double(n))) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / double(n) + z2 / (4.0 * double(n) * double(n))) / denom;
  return {center - half, center + half};
}

std::vector<HistogramRow> histogram(const EmpiricalDistribution& d, int bins) {
  if (bins < 1) throw std::domain_error("histogram: need >= 1 bin");
  const double lo = d.samples.front(), hi = d.samples.back();
  const double width = (hi > lo) ? (hi - lo) / bins : 1.0;
  std::vector<HistogramRow> rows(bins);
  for (int b = 0; b < bins; ++b)
    rows[b] = {lo + b * width, lo + (b + 1) * width, 0, 0.0};
  for (double x : d.samples) {
    int b = std::min<int>(int((x - lo) / width), bins - 1);
    ++rows[b].count;
  }
  std::uint64_t cum = 0;
  for (auto& r : rows) {
    cum += r.count;
    r.cum_fraction = double(cum) / double(d.samples.size());
  }
  return rows;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::domain_error("ls_slope: bad input");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ovals
