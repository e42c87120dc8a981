#include "ovals/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ovals/mathx.hpp"

namespace ovals {

// ---------------------------------------------------------------------------
// the phi series
// ---------------------------------------------------------------------------

PhiSeries::PhiSeries(int m_max) {
  if (m_max < 1) throw std::domain_error("PhiSeries: m_max must be positive");
  w_.resize(std::size_t(m_max));
  for (int m = 1; m <= m_max; ++m) w_[std::size_t(m) - 1] = 1.0 / (double(m) * std::sqrt(double(m)));
}

double PhiSeries::tail_bound() const {
  // sum_{m > M} m^{-3/2} <= integral_{M}^{inf} x^{-3/2} dx = 2 / sqrt(M)
  return 2.0 / std::sqrt(double(w_.size()));
}

double PhiSeries::operator()(double theta) const {
  // cos(2 pi m theta - 3 pi/4) = (sqrt2/2) (sin(2 pi m theta) - cos(2 pi m theta));
  // iterate z_m = exp(2 pi i m theta) by one rotation per term
  const double c = std::cos(kTwoPi * theta), s = std::sin(kTwoPi * theta);
  const double half_sqrt2 = std::sqrt(0.5);
  double zr = c, zi = s;
  KahanSum acc;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    acc.add(w_[i] * half_sqrt2 * (zi - zr));
    const double nr = zr * c - zi * s;
    zi = zr * s + zi * c;
    zr = nr;
    if ((i & 1023u) == 1023u) {  // undo the slow drift of |z| from rounding
      const double n = std::sqrt(zr * zr + zi * zi);
      zr /= n;
      zi /= n;
    }
  }
  return acc.value();
}

double phi(double theta, int m_max) { return PhiSeries(m_max)(theta); }

double phi_alpha(double theta, const Vec2& v, const Vec2& alpha, int m_max) {
  // the shift 2 pi m <alpha, v> is linear in m, so it folds into the angle
  return phi(frac(theta + alpha.dot(v)), m_max);
}

double phi_gamma2(const OvalCurve& curve, double theta1, double theta2, const Vec2& v,
                  const Vec2& alpha, int m_max) {
  if (v.norm() == 0.0) throw std::domain_error("phi_gamma2: zero vector");
  const PhiSeries series(m_max);
  const double av = alpha.dot(v);
  const double w_pos = std::sqrt(curve.curvature_radius(v));
  const double w_neg = std::sqrt(curve.curvature_radius(-v));
  return w_pos * series(frac(theta1 + av)) + w_neg * series(frac(theta2 - av));
}

// ---------------------------------------------------------------------------
// the truncated limit series
// ---------------------------------------------------------------------------

void LimitConfig::validate() const {
  if (!(A > 0.0)) throw std::domain_error("LimitConfig: cutoff A must be positive");
  if (m_max < 1) throw std::domain_error("LimitConfig: m_max must be positive");
  if (n_theta < 1 || n_lattice < 1)
    throw std::domain_error("LimitConfig: sample counts must be positive");
  // the shortest vector of a unimodular plane lattice never exceeds (2/sqrt3)^{1/2}
  if (min_norm < 0.0 || min_norm > 1.05)
    throw std::domain_error("LimitConfig: min_norm conditioning must lie in [0, 1.05]");
}

double limit_series_with_phases(const OvalCurve& curve, const std::vector<PrimitiveVec>& prims,
                                const Vec2& alpha, const PhiSeries& series,
                                const PhaseFn& phases) {
  const bool sym = curve.symmetric();
  KahanSum acc;
  for (const auto& pv : prims) {
    const auto [th1, th2] = phases(pv.k);
    const double n32 = std::pow(pv.v.norm(), 1.5);
    const double av = alpha.dot(pv.v);
    if (sym) {
      const double w = std::sqrt(curve.curvature_radius(pv.v));
      // one equidistributing phase serves +-v: a translation shifts the two
      // opposite tangent-point phases in opposite directions, so the pair
      // stays phase-locked instead of averaging out
      const double s = (av == 0.0) ? 2.0 * series(frac(th1))
                                   : series(frac(th1 + av)) + series(frac(th1 - av));
      acc.add(w * s / n32);
    } else {
      const double w_pos = std::sqrt(curve.curvature_radius(pv.v));
      const double w_neg = std::sqrt(curve.curvature_radius(-pv.v));
      acc.add((w_pos * series(frac(th1 + av)) + w_neg * series(frac(th2 - av))) / n32);
    }
  }
  return acc.value() / kPi;
}

double sample_limit_series(const OvalCurve& curve, const ReducedBasis& rb, const Vec2& alpha,
                           const LimitConfig& cfg, Rng& rng, const PhiSeries& series) {
  cfg.validate();
  const auto prims = enumerate_primitive(rb, cfg.A);
  // two fresh uniforms per index regardless of branch keeps the stream layout
  // independent of the curve's symmetry
  const PhaseFn draw = [&rng](const PrimitiveIndex&) {
    const double a = rng.uniform();
    const double b = rng.uniform();
    return std::make_pair(a, b);
  };
  return limit_series_with_phases(curve, prims, alpha, series, draw);
}

double sample_limit_series(const OvalCurve& curve, const ReducedBasis& rb, const Vec2& alpha,
                           const LimitConfig& cfg, Rng& rng) {
  const PhiSeries series(cfg.m_max);
  return sample_limit_series(curve, rb, alpha, cfg, rng, series);
}

EmpiricalDistribution estimate_cdf(const OvalCurve& curve, const Vec2& alpha,
                                   const LimitConfig& cfg) {
  cfg.validate();
  const PhiSeries series(cfg.m_max);
  std::vector<double> xs;
  xs.reserve(cfg.n_lattice * cfg.n_theta);
  for (std::uint64_t i = 0; i < cfg.n_lattice; ++i) {
    Rng rng(derive_seed(cfg.seed, i));  // per-lattice stream: order-insensitive
    ReducedBasis rb;
    do {
      rb = reduce(sample_haar(rng));
    } while (rb.nongeneric || rb.norm1 < cfg.min_norm);
    for (std::uint64_t j = 0; j < cfg.n_theta; ++j)
      xs.push_back(sample_limit_series(curve, rb, alpha, cfg, rng, series));
  }
  char meta[256];
  std::snprintf(meta, sizeof meta,
                "{\"kind\":\"limit-series\",\"curve\":\"%s\",\"alpha\":[%.17g,%.17g],"
                "\"A\":%.17g,\"m_max\":%d,\"n_lattice\":%llu,\"n_theta\":%llu,"
                "\"seed\":%llu,\"min_norm\":%.17g}",
                curve.preset().c_str(), alpha.x(), alpha.y(), cfg.A, cfg.m_max,
                static_cast<unsigned long long>(cfg.n_lattice),
                static_cast<unsigned long long>(cfg.n_theta),
                static_cast<unsigned long long>(cfg.seed), cfg.min_norm);
  return EmpiricalDistribution(std::move(xs), meta);
}

// ---------------------------------------------------------------------------
// certified truncation bounds
// ---------------------------------------------------------------------------

namespace {

// shared shape of both bounds: (1/pi) sum (w(e) + w(-e)) |e|^{-3/2} * factor;
// in the symmetric branch w(e) = w(-e), matching the 2/pi prefactor exactly
double weighted_norm_sum(const OvalCurve& curve, const std::vector<PrimitiveVec>& prims,
                         double skip_below_sq) {
  KahanSum acc;
  for (const auto& pv : prims) {
    if (pv.v.squaredNorm() <= skip_below_sq) continue;
    const double w2 = std::sqrt(curve.curvature_radius(pv.v)) +
                      std::sqrt(curve.curvature_radius(-pv.v));
    acc.add(w2 / std::pow(pv.v.norm(), 1.5));
  }
  return acc.value() / kPi;
}

}  // namespace

double limit_series_m_tail_bound(const OvalCurve& curve, const ReducedBasis& rb, double A,
                                 int m_max) {
  const auto prims = enumerate_primitive(rb, A);
  return weighted_norm_sum(curve, prims, -1.0) * (2.0 / std::sqrt(double(m_max)));
}

double limit_series_annulus_bound(const OvalCurve& curve, const ReducedBasis& rb, double A_lo,
                                  double A_hi) {
  if (!(A_hi >= A_lo)) throw std::domain_error("limit_series_annulus_bound: A_hi < A_lo");
  const auto prims = enumerate_primitive(rb, A_hi);
  // mirror the boundary-inclusion rule of enumerate_primitive so the annulus
  // is exactly the set difference of the two enumerations
  const double skip_sq = A_lo * A_lo * (1.0 + 1e-12);
  return weighted_norm_sum(curve, prims, skip_sq) * kZeta32;
}

// ---------------------------------------------------------------------------
// moment and tail diagnostics
// ---------------------------------------------------------------------------

MomentReport moment_diagnostics(const EmpiricalDistribution& dist,
                                const std::vector<double>& orders) {
  const auto& xs = dist.draws;
  if (xs.size() < 1000)
    throw std::domain_error("moment_diagnostics: need at least 10^3 samples");
  for (double p : orders)
    if (!(p > 0.0 && p < 3.0))
      throw std::domain_error("moment_diagnostics: orders must lie in (0, 3)");

  MomentReport rep;
  rep.n = xs.size();

  auto prefix_moment = [&](std::size_t n, double p) {
    KahanSum acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(std::pow(std::abs(xs[i]), p));
    return acc.value() / double(n);
  };
  for (double p : orders) {
    MomentRow row;
    row.order = p;
    row.quarter = prefix_moment(xs.size() / 4, p);
    row.half = prefix_moment(xs.size() / 2, p);
    row.full = prefix_moment(xs.size(), p);
    const double hi = std::max({row.quarter, row.half, row.full});
    const double lo = std::min({row.quarter, row.half, row.full});
    row.rel_spread = (hi > 0.0) ? (hi - lo) / hi : 0.0;
    row.stable = row.rel_spread < 0.10;
    rep.rows.push_back(row);
  }

  KahanSum sum, sum_sq;
  for (double x : xs) {
    sum.add(x);
    sum_sq.add(x * x);
  }
  const double n = double(xs.size());
  rep.mean = sum.value() / n;
  const double var = std::max(0.0, (sum_sq.value() / n - rep.mean * rep.mean) * n / (n - 1.0));
  rep.mean_se = std::sqrt(var / n);

  // survival-slope fit over the top decade of |x| order statistics
  std::vector<double> abs_sorted(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) abs_sorted[i] = std::abs(xs[i]);
  std::sort(abs_sorted.begin(), abs_sorted.end());
  const std::size_t n_sz = abs_sorted.size();
  const std::size_t i0 = n_sz - n_sz / 10;
  std::vector<double> lx, ls;
  for (std::size_t i = i0; i + 1 < n_sz; ++i) {  // drop the max (survival 0)
    if (!(abs_sorted[i] > 0.0)) continue;
    lx.push_back(std::log(abs_sorted[i]));
    ls.push_back(std::log(double(n_sz - 1 - i) / double(n_sz)));
  }
  rep.tail_slope = (lx.size() >= 2) ? ls_slope(lx, ls) : 0.0;
  return rep;
}

}  // namespace ovals
