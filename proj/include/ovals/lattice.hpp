// Unimodular lattices of the plane: Haar sampling on SL(2,R)/SL(2,Z),
// Lagrange-Gauss reduction to the successive-minima basis (e1, e2),
// duality, primitive-vector enumeration, and the diagonal geodesic flow.
//
// A Haar-random lattice is drawn through the Iwasawa picture: the shape
// (x + iy) is sampled from the hyperbolic measure dx dy / y^2 on the modular
// fundamental domain {|x| <= 1/2, x^2 + y^2 >= 1} by rejection from the box
// {|x| <= 1/2, y >= sqrt(3)/2}, and an independent uniform rotation is
// applied. The y-marginal is inverted exactly (P(Y > y) ~ 1/y on the box).
#pragma once

#include <cstdint>
#include <vector>

#include "ovals/common.hpp"
#include "ovals/rng.hpp"

namespace ovals {

struct UnimodularLattice {
  Mat2 basis;  // columns are basis vectors, det = 1 up to 1e-10

  bool valid() const { return std::abs(basis.determinant() - 1.0) < 1e-10; }
};

// Successive-minima basis with both first coordinates normalized positive.
// The normalization is undefined on a measure-zero set (a first coordinate
// exactly zero, or tied minima); such inputs are flagged nongeneric and
// resolved deterministically (prefer the smaller polar angle), so Monte
// Carlo drivers can resample while direct callers still get a stable answer.
struct ReducedBasis {
  Vec2 e1, e2;
  double norm1 = 0, norm2 = 0;
  bool nongeneric = false;
};

struct PrimitiveIndex {
  std::int64_t k1 = 0, k2 = 0;  // gcd(k1,k2) = 1, k1 >= 0; k1 = 0 => k2 = 1
};

struct PrimitiveVec {
  PrimitiveIndex k;
  Vec2 v;  // k1 e1 + k2 e2
};

UnimodularLattice sample_haar(Rng& rng);

// standard lattice and direct construction helpers
UnimodularLattice integer_lattice();
UnimodularLattice lattice_from_basis(const Mat2& B);

ReducedBasis reduce(const UnimodularLattice& L);

// matrix [e1 e2] or [e2 e1], whichever has positive determinant; the
// canonical representative used by the regularized-count reduction
Mat2 reduced_matrix(const ReducedBasis& rb);

UnimodularLattice dual(const UnimodularLattice& L);

// all (k, v) with k primitive in the half-plane convention and |v| <= A,
// in lexicographic (k1, k2) order
std::vector<PrimitiveVec> enumerate_primitive(const ReducedBasis& rb, double A);

// every nonzero lattice vector with |v| <= R (both signs); used by the
// Siegel sums and by direct dual-sum oracles
std::vector<Vec2> enumerate_ball(const Mat2& basis, double R);

struct LatticePoint {
  std::int64_t k1 = 0, k2 = 0;  // integer coordinates in the supplied basis
  Vec2 v;
};

// enumerate_ball with the integer coordinates attached (for primitivity tests)
std::vector<LatticePoint> enumerate_ball_indexed(const Mat2& basis, double R);

UnimodularLattice geodesic_apply(const UnimodularLattice& L, double lambda);

}  // namespace ovals
