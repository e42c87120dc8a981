// The Fourier-side approximants of the normalized counting error.
//
// Stationary-phase analysis of the oval indicator's transform attaches to
// each dual-lattice vector l an oscillating term with curvature weight
// w(l) = sqrt(rho_gamma(l)), phase 2 pi t Y_gamma(l) - 3 pi / 4, and decay
// |l|^{-3/2}. Summing over all dual vectors up to length A gives H_A, and
// re-grouping multiples m.l of prime vectors gives the m-series form
// S_{A,prime}, the object whose phases drive the limit law. The mod-1
// phases theta_k and the geodesic derivative w_k support the
// equidistribution experiments.
#pragma once

#include <cstdint>

#include "ovals/common.hpp"
#include "ovals/counting.hpp"
#include "ovals/geometry.hpp"
#include "ovals/lattice.hpp"

namespace ovals {

struct ApproximantConfig {
  double A = 10.0;        // dual-vector cutoff length
  int m_max = 256;        // terms of the multiplicity series
  double tolerance = 0.0; // certified m-tail bound carried with the config

  // smallest m_max with  w_max * zeta(3/2) * 2/sqrt(m_max) <= tolerance,
  // where w_max is the curve's largest curvature weight
  static ApproximantConfig certified(double A, double tolerance, const OvalCurve& curve);

  void validate() const;  // throws std::domain_error
};

// w(l) cos(2 pi t Y(l) - 3 pi/4); |nu| <= w_max
double nu(const OvalCurve& curve, const Vec2& l, double t);

// (1/2pi) sum over dual vectors 0 < |l| <= A of |l|^{-3/2} (nu(l) + nu(-l));
// collapses to (1/pi) sum of |l|^{-3/2} nu(l) for symmetric curves
double h_A(const OvalCurve& curve, const UnimodularLattice& L, double t,
           const ApproximantConfig& cfg);

// prime-vector form with the m-multiplicity series and translation phases
// +-2 pi m <alpha, l>; one term per half-plane representative
double s_A_prime(const OvalCurve& curve, const UnimodularLattice& L, double t,
                 const Vec2& alpha, const ApproximantConfig& cfg);

// |R/sqrt(t) - S_{A,prime}| at alpha = 0
double delta_A_prime(const OvalCurve& curve, const UnimodularLattice& L, double t,
                     const ApproximantConfig& cfg, std::uint64_t cap = kCandidateCap);

// certified bounds for the truncation experiments (phases fixed):
// growing m_max changes s_A_prime by at most the m-tail bound, growing A by
// at most the annulus bound
double s_A_prime_m_tail_bound(const OvalCurve& curve, const UnimodularLattice& L, double A,
                              int m_max);
double s_A_prime_annulus_bound(const OvalCurve& curve, const UnimodularLattice& L, double A_lo,
                               double A_hi);

// frac(t Y(k1 e1 + k2 e2)) in [0,1), and the mirrored phase frac(t Y(-v))
double theta_k(const OvalCurve& curve, const ReducedBasis& rb, const PrimitiveIndex& k,
               double t);
double theta_k_mirror(const OvalCurve& curve, const ReducedBasis& rb, const PrimitiveIndex& k,
                      double t);

// derivative of Y(k1 e1 + k2 e2) along the diagonal geodesic flow at the
// identity: <s(v), x_gamma(v)> with s(x, y) = (x, -y), via grad Y = x_gamma
double w_k(const OvalCurve& curve, const ReducedBasis& rb, const PrimitiveIndex& k);

}  // namespace ovals
