#include "ovals/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "ovals/limit_law.hpp"
#include "ovals/mathx.hpp"

namespace ovals {

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

ApproximantConfig ApproximantConfig::certified(double A, double tolerance,
                                               const OvalCurve& curve) {
  if (!(A > 0.0) || !(tolerance > 0.0))
    throw std::domain_error("ApproximantConfig: cutoff and tolerance must be positive");
  const double w_max = std::sqrt(curve.rho_max());
  // tail sum_{m > M} m^{-3/2} <= 2/sqrt(M); demand w_max zeta(3/2) 2/sqrt(M) <= tol
  const double m = 4.0 * w_max * w_max * kZeta32 * kZeta32 / (tolerance * tolerance);
  ApproximantConfig cfg;
  cfg.A = A;
  cfg.m_max = std::max(1, int(std::ceil(m)));
  cfg.tolerance = tolerance;
  return cfg;
}

void ApproximantConfig::validate() const {
  if (!(A > 0.0)) throw std::domain_error("ApproximantConfig: cutoff A must be positive");
  if (m_max < 1) throw std::domain_error("ApproximantConfig: m_max must be positive");
}

// ---------------------------------------------------------------------------
// the oscillating weight and the dual sums
// ---------------------------------------------------------------------------

double nu(const OvalCurve& curve, const Vec2& l, double t) {
  if (l.norm() == 0.0) throw std::domain_error("nu: zero vector");
  const double w = std::sqrt(curve.curvature_radius(l));
  return w * std::cos(kTwoPi * t * curve.y_gamma(l) - 0.75 * kPi);
}

double h_A(const OvalCurve& curve, const UnimodularLattice& L, double t,
           const ApproximantConfig& cfg) {
  cfg.validate();
  const UnimodularLattice D = dual(L);
  KahanSum acc;
  if (curve.symmetric()) {
    // nu(-l) = nu(l), so the pair term collapses and the prefactor doubles
    for (const Vec2& l : enumerate_ball(D.basis, cfg.A))
      acc.add(nu(curve, l, t) / std::pow(l.norm(), 1.5));
    return acc.value() / kPi;
  }
  for (const Vec2& l : enumerate_ball(D.basis, cfg.A))
    acc.add((nu(curve, l, t) + nu(curve, -l, t)) / std::pow(l.norm(), 1.5));
  return acc.value() / kTwoPi;
}

double s_A_prime(const OvalCurve& curve, const UnimodularLattice& L, double t,
                 const Vec2& alpha, const ApproximantConfig& cfg) {
  cfg.validate();
  const ReducedBasis rb = reduce(dual(L));
  const PhiSeries series(cfg.m_max);
  KahanSum acc;
  for (const auto& pv : enumerate_primitive(rb, cfg.A)) {
    const Vec2& l = pv.v;
    const double av = alpha.dot(l);
    // the m-series over multiples of l folds into phi at the mod-1 phase
    const double plus = std::sqrt(curve.curvature_radius(l)) *
                        series(frac(t * curve.y_gamma(l) + av));
    const double minus = std::sqrt(curve.curvature_radius(-l)) *
                         series(frac(t * curve.y_gamma(-l) - av));
    acc.add((plus + minus) / std::pow(l.norm(), 1.5));
  }
  return acc.value() / kPi;
}

double delta_A_prime(const OvalCurve& curve, const UnimodularLattice& L, double t,
                     const ApproximantConfig& cfg, std::uint64_t cap) {
  const double normalized = error_normalized(curve, L, t, Vec2::Zero(), cap).normalized;
  return std::abs(normalized - s_A_prime(curve, L, t, Vec2::Zero(), cfg));
}

namespace {

double dual_weighted_norm_sum(const OvalCurve& curve, const UnimodularLattice& L, double A,
                              double skip_below_sq) {
  const ReducedBasis rb = reduce(dual(L));
  KahanSum acc;
  for (const auto& pv : enumerate_primitive(rb, A)) {
    if (pv.v.squaredNorm() <= skip_below_sq) continue;
    const double w2 = std::sqrt(curve.curvature_radius(pv.v)) +
                      std::sqrt(curve.curvature_radius(-pv.v));
    acc.add(w2 / std::pow(pv.v.norm(), 1.5));
  }
  return acc.value() / kPi;
}

}  // namespace

double s_A_prime_m_tail_bound(const OvalCurve& curve, const UnimodularLattice& L, double A,
                              int m_max) {
  return dual_weighted_norm_sum(curve, L, A, -1.0) * (2.0 / std::sqrt(double(m_max)));
}

double s_A_prime_annulus_bound(const OvalCurve& curve, const UnimodularLattice& L, double A_lo,
                               double A_hi) {
  if (!(A_hi >= A_lo)) throw std::domain_error("s_A_prime_annulus_bound: A_hi < A_lo");
  // mirror enumerate_primitive's boundary-inclusion rule exactly
  const double skip_sq = A_lo * A_lo * (1.0 + 1e-12);
  return dual_weighted_norm_sum(curve, L, A_hi, skip_sq) * kZeta32;
}

// ---------------------------------------------------------------------------
// phases and the geodesic derivative
// ---------------------------------------------------------------------------

double theta_k(const OvalCurve& curve, const ReducedBasis& rb, const PrimitiveIndex& k,
               double t) {
  if (t < 0.0) throw std::domain_error("theta_k: negative dilation");
  if (t == 0.0) return 0.0;
  const Vec2 v = double(k.k1) * rb.e1 + double(k.k2) * rb.e2;
  return frac(t * curve.y_gamma(v));
}

double theta_k_mirror(const OvalCurve& curve, const ReducedBasis& rb, const PrimitiveIndex& k,
                      double t) {
  if (t < 0.0) throw std::domain_error("theta_k: negative dilation");
  if (t == 0.0) return 0.0;
  const Vec2 v = double(k.k1) * rb.e1 + double(k.k2) * rb.e2;
  return frac(t * curve.y_gamma(-v));
}

double w_k(const OvalCurve& curve, const ReducedBasis& rb, const PrimitiveIndex& k) {
  const Vec2 v = double(k.k1) * rb.e1 + double(k.k2) * rb.e2;
  if (v.norm() == 0.0) throw std::domain_error("w_k: zero vector");
  return mirror(v).dot(curve.support_point(v));
}

}  // namespace ovals
