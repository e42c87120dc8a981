#include "ovals/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ovals {

// ---------------------------------------------------------------------------
// Haar sampling
// ---------------------------------------------------------------------------

UnimodularLattice sample_haar(Rng& rng) {
  const double y_floor = std::sqrt(3.0) / 2.0;
  double x, y;
  do {
    x = rng.uniform(-0.5, 0.5);
    // density ~ 1/y^2 on [y_floor, inf): P(Y > y) = y_floor / y
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    y = y_floor / u;
  } while (x * x + y * y < 1.0);  // clip the box to the fundamental domain

  const double theta = rng.uniform(0.0, kTwoPi);
  const double c = std::cos(theta), s = std::sin(theta);
  const double ry = std::sqrt(y);

  // the lattice Z + (x + iy) Z scaled to covolume one: generators
  // (1/sqrt y, 0) and (x/sqrt y, sqrt y), Gram form ((k1 + k2 x)^2 + k2^2 y^2)/y
  Mat2 shape;
  shape << 1.0 / ry, x / ry, 0.0, ry;
  Mat2 rot;
  rot << c, -s, s, c;

  UnimodularLattice L;
  L.basis = rot * shape;
  return L;
}

UnimodularLattice integer_lattice() {
  UnimodularLattice L;
  L.basis = Mat2::Identity();
  return L;
}

UnimodularLattice lattice_from_basis(const Mat2& B) {
  UnimodularLattice L;
  L.basis = B;
  if (!L.valid()) throw std::domain_error("lattice basis must have determinant 1");
  return L;
}

// ---------------------------------------------------------------------------
// Lagrange-Gauss reduction
// ---------------------------------------------------------------------------

namespace {

// polar angle in (-pi/2, pi/2] after the positive-first-coordinate
// normalization; used only to break measure-zero ties deterministically
double tie_angle(const Vec2& v) { return std::atan2(v.y(), v.x()); }

// flip sign so the first coordinate is positive; when it vanishes (up to
// relative 1e-12) normalize the second positive instead and flag the caller
Vec2 normalize_sign(const Vec2& v, bool& degenerate) {
  const double tol = 1e-12 * v.norm();
  if (v.x() > tol) return v;
  if (v.x() < -tol) return -v;
  degenerate = true;
  return (v.y() >= 0.0) ? v : -v;
}

}  // namespace

ReducedBasis reduce(const UnimodularLattice& L) {
  Vec2 b1 = L.basis.col(0), b2 = L.basis.col(1);

  // classic two-dimensional reduction: swap-shortest, then shear by the
  // rounded Gram quotient until it vanishes
  for (int iter = 0; iter < 64; ++iter) {
    if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);
    const double mu = std::round(b1.dot(b2) / b1.squaredNorm());
    if (mu == 0.0) break;
    b2 -= mu * b1;
  }
  if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);

  ReducedBasis rb;
  bool degenerate = false;
  Vec2 e1 = normalize_sign(b1, degenerate);
  Vec2 e2 = normalize_sign(b2, degenerate);

  // tied minima leave the order ambiguous: fall back to polar angle
  if (std::abs(e1.norm() - e2.norm()) <= 1e-12 * e2.norm()) {
    degenerate = true;
    if (tie_angle(e2) < tie_angle(e1)) std::swap(e1, e2);
  }

  rb.e1 = e1;
  rb.e2 = e2;
  rb.norm1 = e1.norm();
  rb.norm2 = e2.norm();
  rb.nongeneric = degenerate;
  return rb;
}

Mat2 reduced_matrix(const ReducedBasis& rb) {
  Mat2 M;
  M.col(0) = rb.e1;
  M.col(1) = rb.e2;
  if (M.determinant() < 0.0) {
    M.col(0) = rb.e2;
    M.col(1) = rb.e1;
  }
  return M;
}

// ---------------------------------------------------------------------------
// duality, enumeration, geodesic flow
// ---------------------------------------------------------------------------

UnimodularLattice dual(const UnimodularLattice& L) {
  UnimodularLattice D;
  D.basis = L.basis.inverse().transpose();
  return D;
}

std::vector<PrimitiveVec> enumerate_primitive(const ReducedBasis& rb, double A) {
  if (!(A > 0.0)) throw std::domain_error("enumerate_primitive: cutoff must be positive");
  std::vector<PrimitiveVec> out;

  // |k1| <= A |e2| and |k2| <= A |e1|: the rows of [e1 e2]^{-1} are the dual
  // pair rotated, so their norms are |e2| and |e1| (det = +-1)
  const double n1s = rb.e1.squaredNorm(), n2s = rb.e2.squaredNorm();
  const double dot12 = rb.e1.dot(rb.e2);
  const double A2 = A * A * (1.0 + 1e-12);  // boundary-inclusive
  const auto k1_hi = std::int64_t(std::floor(A * rb.norm2 + 1e-9));

  for (std::int64_t k1 = 0; k1 <= k1_hi; ++k1) {
    // solve |k1 e1 + k2 e2|^2 <= A^2 for k2
    const double a = n2s, b = double(k1) * dot12, c = double(k1) * double(k1) * n1s - A2;
    const double disc = b * b - a * c;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    auto k2_lo = std::int64_t(std::ceil((-b - root) / a - 1e-9));
    auto k2_hi = std::int64_t(std::floor((-b + root) / a + 1e-9));
    for (std::int64_t k2 = k2_lo; k2 <= k2_hi; ++k2) {
      if (k1 == 0 && k2 != 1) continue;  // half-line convention at k1 = 0
      if (std::gcd(std::abs(k1), std::abs(k2)) != 1) continue;
      const Vec2 v = double(k1) * rb.e1 + double(k2) * rb.e2;
      if (v.squaredNorm() > A2) continue;
      out.push_back({{k1, k2}, v});
    }
  }
  return out;
}

std::vector<LatticePoint> enumerate_ball_indexed(const Mat2& basis, double R) {
  if (!(R > 0.0)) throw std::domain_error("enumerate_ball: radius must be positive");
  std::vector<LatticePoint> out;
  const Vec2 b1 = basis.col(0), b2 = basis.col(1);
  const double det = std::abs(cross(b1, b2));
  if (det < 1e-14) throw std::domain_error("enumerate_ball: singular basis");

  // k1 = cross(v, b2)/det, k2 = cross(b1, v)/det, so |k_i| <= R |b_(3-i)| / det
  const auto k1_hi = std::int64_t(std::floor(R * b2.norm() / det + 1e-9));
  const double n2s = b2.squaredNorm(), dot12 = b1.dot(b2), n1s = b1.squaredNorm();
  const double R2 = R * R * (1.0 + 1e-12);
  for (std::int64_t k1 = -k1_hi; k1 <= k1_hi; ++k1) {
    const double a = n2s, b = double(k1) * dot12, c = double(k1) * double(k1) * n1s - R2;
    const double disc = b * b - a * c;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    auto k2_lo = std::int64_t(std::ceil((-b - root) / a - 1e-9));
    auto k2_hi = std::int64_t(std::floor((-b + root) / a + 1e-9));
    for (std::int64_t k2 = k2_lo; k2 <= k2_hi; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const Vec2 v = double(k1) * b1 + double(k2) * b2;
      if (v.squaredNorm() > R2) continue;
      out.push_back({k1, k2, v});
    }
  }
  return out;
}

std::vector<Vec2> enumerate_ball(const Mat2& basis, double R) {
  std::vector<Vec2> out;
  for (const auto& p : enumerate_ball_indexed(basis, R)) out.push_back(p.v);
  return out;
}

UnimodularLattice geodesic_apply(const UnimodularLattice& L, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("geodesic_apply: lambda must be positive");
  Mat2 d;
  d << lambda, 0.0, 0.0, 1.0 / lambda;
  UnimodularLattice out;
  out.basis = d * L.basis;
  return out;
}

}  // namespace ovals
