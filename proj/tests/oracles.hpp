// Independent reference implementations used only by the tests. Everything
// here deliberately avoids the library's own algorithms:
//
//   * hurwitz_zeta       Euler-Maclaurin continuation; yields a closed form
//                        for the oscillatory series phi via the Hurwitz
//                        functional equation, phi(x) = 2 sqrt(2) pi
//                        zeta_H(-1/2, x) for x in (0, 1]
//   * naive_phi          term-by-term cosine sum, no recurrences
//   * brute counters     full box scans with closed-form (ellipse) or
//                        gauge membership, no row slicing
//   * box enumerations   primitive / nonzero vectors by brute box scan
//   * simpson            plain composite quadrature
//   * random curves / unimodular matrices for property sweeps
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "ovals/common.hpp"
#include "ovals/geometry.hpp"
#include "ovals/lattice.hpp"
#include "ovals/rng.hpp"

namespace oracle {

using ovals::Mat2;
using ovals::OvalCurve;
using ovals::Vec2;

// reference constants (truncated, not computed here)
inline constexpr double kZeta32 = 2.6123753486854883434;  // zeta(3/2)
inline constexpr double kZeta2 = 1.6449340668482264365;   // zeta(2) = pi^2/6
inline constexpr double kZeta3 = 1.2020569031595942854;   // zeta(3)

// ---------------------------------------------------------------------------
// Hurwitz zeta by Euler-Maclaurin (good to ~1e-13 for s near -1/2, x in (0,2])
// ---------------------------------------------------------------------------

inline double hurwitz_zeta(double s, double x) {
  const int N = 24, J = 8;
  static const double B[J] = {1.0 / 6,  -1.0 / 30,       1.0 / 42, -1.0 / 30,
                              5.0 / 66, -691.0 / 2730.0, 7.0 / 6,  -3617.0 / 510.0};
  double sum = 0.0;
  for (int k = 0; k < N; ++k) sum += std::pow(x + k, -s);
  const double y = x + N;
  sum += std::pow(y, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(y, -s);
  double rising = s;                       // s (s+1) ... (s+2j-2)
  double power = std::pow(y, -s - 1.0);    // y^{-s-2j+1}
  double factorial = 2.0;                  // (2j)!
  for (int j = 1; j <= J; ++j) {
    sum += B[j - 1] / factorial * rising * power;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    power /= y * y;
    factorial *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

// closed form of the full (untruncated) oscillatory series
// sum_{m>=1} cos(2 pi m x - 3 pi/4) / m^{3/2}
inline double phi_closed(double x) {
  double y = x - std::floor(x);
  if (y == 0.0) y = 1.0;  // periodic; the Hurwitz form wants (0, 1]
  return 2.0 * std::sqrt(2.0) * ovals::kPi * hurwitz_zeta(-0.5, y);
}

// the truncated series summed term by term
inline double naive_phi(double theta, int m_max) {
  long double acc = 0.0L;
  for (int m = 1; m <= m_max; ++m)
    acc += std::cos(2.0 * ovals::kPi * m * theta - 0.75 * ovals::kPi) /
           (double(m) * std::sqrt(double(m)));
  return double(acc);
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

template <class F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / (2.0 * panels);
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// ---------------------------------------------------------------------------
// brute-force counting (independent of the row-slicing counter)
// ---------------------------------------------------------------------------

struct Box {
  std::int64_t lo1, hi1, lo2, hi2;
};

// integer box certainly covering  { k : B k in alpha + ball(R) }
inline Box cover_box(const Mat2& B, double R, const Vec2& alpha) {
  const Mat2 inv = B.inverse();
  const Vec2 center = inv * alpha;
  Box box;
  const double r1 = inv.row(0).norm() * R, r2 = inv.row(1).norm() * R;
  box.lo1 = std::int64_t(std::ceil(center.x() - r1 - 1e-9));
  box.hi1 = std::int64_t(std::floor(center.x() + r1 + 1e-9));
  box.lo2 = std::int64_t(std::ceil(center.y() - r2 - 1e-9));
  box.hi2 = std::int64_t(std::floor(center.y() + r2 + 1e-9));
  return box;
}

// membership via the curve's gauge (same rule the library uses, so this
// checks the slicing logic, not the membership primitive)
inline std::uint64_t brute_count_gauge(const OvalCurve& curve, const Mat2& B, double t,
                                       const Vec2& alpha = Vec2::Zero()) {
  const Box box = cover_box(B, t * curve.support_max(), alpha);
  std::uint64_t n = 0;
  for (std::int64_t k1 = box.lo1; k1 <= box.hi1; ++k1)
    for (std::int64_t k2 = box.lo2; k2 <= box.hi2; ++k2)
      n += curve.contains(double(k1) * B.col(0) + double(k2) * B.col(1), t, alpha);
  return n;
}

// fully independent membership for axis-aligned ellipses:
// (x/a)^2 + (y/b)^2 <= t^2 (with the same 1e-12 relative boundary slack)
inline std::uint64_t brute_count_ellipse(double a, double b, const Mat2& B, double t,
                                         const Vec2& alpha = Vec2::Zero()) {
  const Box box = cover_box(B, t * std::max(a, b), alpha);
  const double t2 = t * t * (1.0 + 2e-12);
  std::uint64_t n = 0;
  for (std::int64_t k1 = box.lo1; k1 <= box.hi1; ++k1)
    for (std::int64_t k2 = box.lo2; k2 <= box.hi2; ++k2) {
      const Vec2 p = double(k1) * B.col(0) + double(k2) * B.col(1) - alpha;
      const double q = (p.x() / a) * (p.x() / a) + (p.y() / b) * (p.y() / b);
      n += (q <= t2);
    }
  return n;
}

// ---------------------------------------------------------------------------
// brute-force enumerations
// ---------------------------------------------------------------------------

// primitive representatives { k1 > 0 } U { (0,1) } with |k1 e1 + k2 e2| <= A,
// mirroring the library's boundary-inclusive cutoff A^2 (1 + 1e-12)
inline std::set<std::pair<std::int64_t, std::int64_t>> brute_primitive(const Vec2& e1,
                                                                      const Vec2& e2, double A) {
  Mat2 B;
  B.col(0) = e1;
  B.col(1) = e2;
  const Box box = cover_box(B, A, Vec2::Zero());
  const double A2 = A * A * (1.0 + 1e-12);
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t k1 = box.lo1; k1 <= box.hi1; ++k1)
    for (std::int64_t k2 = box.lo2; k2 <= box.hi2; ++k2) {
      if (k1 < 0 || (k1 == 0 && k2 != 1)) continue;
      if (std::gcd(std::abs(k1), std::abs(k2)) != 1) continue;
      if ((double(k1) * e1 + double(k2) * e2).squaredNorm() > A2) continue;
      out.insert({k1, k2});
    }
  return out;
}

inline std::set<std::pair<std::int64_t, std::int64_t>> brute_nonzero(const Mat2& B, double R) {
  const Box box = cover_box(B, R, Vec2::Zero());
  const double R2 = R * R * (1.0 + 1e-12);
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t k1 = box.lo1; k1 <= box.hi1; ++k1)
    for (std::int64_t k2 = box.lo2; k2 <= box.hi2; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      if ((double(k1) * B.col(0) + double(k2) * B.col(1)).squaredNorm() > R2) continue;
      out.insert({k1, k2});
    }
  return out;
}

// ---------------------------------------------------------------------------
// random test inputs
// ---------------------------------------------------------------------------

// random oval with bounded Fourier data; coefficient budget keeps
// rho = h + h'' >= 1 - 1.81 r > 0 for r <= 0.25
inline OvalCurve random_curve(ovals::Rng& rng, double r = 0.2) {
  std::vector<double> ca(4), cb(4);
  for (int n = 1; n <= 4; ++n) {
    const double scale = r / double(n * n * n);
    ca[n - 1] = rng.uniform(-scale, scale);
    cb[n - 1] = rng.uniform(-scale, scale);
  }
  return OvalCurve(1.0, ca, cb);
}

inline Mat2 random_unimodular(ovals::Rng& rng) { return ovals::sample_haar(rng).basis; }

}  // namespace oracle
