// Exact lattice-point counting in the dilated translated oval t.Omega + alpha,
// the counting error R = N - t^2 Area and its normalization R / sqrt(t), and
// the Gaussian-regularized count
//
//     N_reg(t, M) = sum_n chi(n; t),   chi = (indicator of t.Omega) * kernel,
//
// with kernel (t^2 / 4 pi) exp(-(t^2/4) |x|^2). The regularized count agrees
// with the exact one up to O(t^{-1/4}) after normalization, which is probed
// by regularization_gap.
//
// Counting walks the lattice row by row: each basis-aligned line is clipped
// against the oval once, certified interior runs are counted in bulk, and
// only the handful of points near the two crossings (or near a tangency) are
// membership-tested individually. This keeps the cost at O(t) line clips
// instead of O(t^2) point tests.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ovals/common.hpp"
#include "ovals/geometry.hpp"
#include "ovals/lattice.hpp"

namespace ovals {

struct ErrorSample {
  double t = 0;
  Vec2 alpha = Vec2::Zero();
  std::uint64_t count = 0;
  double error = 0;       // count - t^2 Area
  double normalized = 0;  // error / sqrt(t)
  std::map<std::string, double> approximants;  // optional named companions
};

// bound on the candidate grid (bounding box mapped through basis^{-1})
inline constexpr std::uint64_t kCandidateCap = 1'000'000'000;

// exact |L cap (t.Omega + alpha)|; throws ResourceError past the cap
std::uint64_t count_points(const OvalCurve& curve, const UnimodularLattice& L, double t,
                           const Vec2& alpha = Vec2::Zero(),
                           std::uint64_t cap = kCandidateCap);

ErrorSample error_normalized(const OvalCurve& curve, const UnimodularLattice& L, double t,
                             const Vec2& alpha = Vec2::Zero(),
                             std::uint64_t cap = kCandidateCap);

// mass of the Gaussian kernel centred at p over t.Omega, in [0,1]; the
// radial integral is exact and the angular one is adaptive to abs tol 1e-8
double gaussian_mass(const OvalCurve& curve, const Vec2& p, double t);

// N_reg over the reduced representative basis of L; the chi sum is cut off
// where the certified per-point error drops below 1e-14
double count_regularized(const OvalCurve& curve, const UnimodularLattice& L, double t,
                         std::uint64_t cap = kCandidateCap);

// F(M, t) = (N_reg - t^2 Area) / sqrt(t)
double f_poisson(const OvalCurve& curve, const UnimodularLattice& L, double t,
                 std::uint64_t cap = kCandidateCap);

// |R/sqrt(t) - F(M,t)|, evaluated in one pass so both terms share the same
// enumeration; decays like t^{-1/4}
double regularization_gap(const OvalCurve& curve, const UnimodularLattice& L, double t,
                          std::uint64_t cap = kCandidateCap);

}  // namespace ovals
