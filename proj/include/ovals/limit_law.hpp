// The limit random series of the normalized counting error and its
// diagnostics.
//
// Over a Haar-random lattice the normalized error R / sqrt(t) converges in
// law, as t grows, to a random series indexed by the primitive vectors e of
// the lattice (in the half-plane convention), with one uniform torus phase
// per index (a pair of phases when the oval lacks central symmetry):
//
//   symmetric:   S = (2/pi) sum_e  w(e)   phi(theta_e)               / |e|^{3/2}
//   general:     S = (1/pi) sum_e [w(e)  phi(theta_{1,e} + <a,e>)
//                                + w(-e) phi(theta_{2,e} - <a,e>)]   / |e|^{3/2}
//
// where w(e) = sqrt(rho_gamma(e)) is the stationary-phase curvature weight
// and phi is the m-multiplicity series
//
//   phi(x) = sum_{m >= 1} cos(2 pi m x - 3 pi / 4) / m^{3/2}.
//
// The translation alpha only shifts phases that are already uniform, so the
// limit law is translation-invariant; the shifts are kept literal anyway so
// finite-truncation comparisons stay faithful.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ovals/common.hpp"
#include "ovals/geometry.hpp"
#include "ovals/lattice.hpp"
#include "ovals/rng.hpp"
#include "ovals/stats.hpp"

namespace ovals {

// precomputed m^{-3/2} weights; evaluation is a single complex-rotation pass
class PhiSeries {
 public:
  explicit PhiSeries(int m_max);
  int m_max() const { return int(w_.size()); }
  double tail_bound() const;  // sum_{m > m_max} m^{-3/2} <= 2 / sqrt(m_max)
  double operator()(double theta) const;

 private:
  std::vector<double> w_;
};

// truncated phi and its translated/weighted variants
double phi(double theta, int m_max);
double phi_alpha(double theta, const Vec2& v, const Vec2& alpha, int m_max);
double phi_gamma2(const OvalCurve& curve, double theta1, double theta2, const Vec2& v,
                  const Vec2& alpha, int m_max);

struct LimitConfig {
  double A = 40.0;                 // primitive-vector cutoff length
  int m_max = 4096;                // phi truncation
  std::uint64_t n_theta = 1;       // phase draws per lattice
  std::uint64_t n_lattice = 10000; // Haar lattice draws
  std::uint64_t seed = 1;
  double min_norm = 0.0;           // resample lattices while |L|_1 < min_norm

  void validate() const;           // throws std::domain_error
};

// phases for one primitive index: first drives +e, second drives -e
using PhaseFn = std::function<std::pair<double, double>(const PrimitiveIndex&)>;

// deterministic core: evaluate the truncated series with caller-supplied
// phases (lets experiments keep phases fixed while A or m_max change)
double limit_series_with_phases(const OvalCurve& curve, const std::vector<PrimitiveVec>& prims,
                                const Vec2& alpha, const PhiSeries& series,
                                const PhaseFn& phases);

// one draw: fresh i.i.d. uniform phases for every primitive index
double sample_limit_series(const OvalCurve& curve, const ReducedBasis& rb, const Vec2& alpha,
                           const LimitConfig& cfg, Rng& rng);
double sample_limit_series(const OvalCurve& curve, const ReducedBasis& rb, const Vec2& alpha,
                           const LimitConfig& cfg, Rng& rng, const PhiSeries& series);

// n_lattice x n_theta Monte Carlo; metadata records the configuration
EmpiricalDistribution estimate_cdf(const OvalCurve& curve, const Vec2& alpha,
                                   const LimitConfig& cfg);

// certified change bounds for the truncation experiments: growing m_max past
// cfg.m_max (phases fixed) moves the series by at most the m-tail bound;
// growing A moves it by at most the annulus bound
double limit_series_m_tail_bound(const OvalCurve& curve, const ReducedBasis& rb, double A,
                                 int m_max);
double limit_series_annulus_bound(const OvalCurve& curve, const ReducedBasis& rb, double A_lo,
                                  double A_hi);

struct MomentRow {
  double order = 0;
  double quarter = 0, half = 0, full = 0;  // E|S|^p on draw-order prefixes
  double rel_spread = 0;                   // (max - min) / max of the three
  bool stable = false;                     // rel_spread < 0.10
};

struct MomentReport {
  std::vector<MomentRow> rows;
  double tail_slope = 0;  // log-log LS slope of the top-decade survival
  std::uint64_t n = 0;
  double mean = 0, mean_se = 0;
};

// orders must lie in (0, 3); needs at least 10^3 samples
MomentReport moment_diagnostics(const EmpiricalDistribution& dist,
                                const std::vector<double>& orders);

}  // namespace ovals
