// Siegel transforms over the space of unimodular lattices and Monte Carlo
// validation of the mean-value formula, the second-moment inequality, and
// the quadratic small-ball probability of the shortest vector.
//
// Two summation modes are provided because the mean-value constant differs:
// summing over all nonzero vectors gives E[S(f)] = Int f (classical), while
// summing over primitive vectors only gives E[S(f)] = Int f / zeta(2).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ovals/common.hpp"
#include "ovals/lattice.hpp"

namespace ovals {

// compactly supported radial test functions with closed-form plane integrals
struct TestFunction {
  enum class Kind { BallIndicator, SmoothBump, Annulus };

  Kind kind;
  double r0 = 0.0;  // inner radius (annulus only)
  double r1 = 0.0;  // support radius

  static TestFunction ball(double radius);
  static TestFunction smooth_bump(double radius);        // (1 - (r/R)^2)^2 on r <= R
  static TestFunction annulus(double inner, double outer);

  double operator()(const Vec2& x) const { return eval_radial(x.norm()); }
  double eval_radial(double r) const;
  double support_radius() const { return r1; }
  double integral() const;         // closed-form Int_{R^2} f
  double square_integral() const;  // closed-form Int_{R^2} f^2
  bool even() const { return true; }  // radial by construction
  std::string describe() const;
};

enum class SiegelMode { AllNonzero, Primitive };

// sum of f over the selected vectors of L (exact enumeration)
double siegel_transform(const TestFunction& f, const UnimodularLattice& L, SiegelMode mode);

struct SiegelReport {
  std::string formula;   // which statement was probed
  std::string mode;      // "primitive" | "all-nonzero"
  std::uint64_t n = 0;
  double predicted = 0;
  double estimate = 0;
  double std_error = 0;
  double z = 0;
  bool verdict = false;  // |z| < 3
};

SiegelReport validate_mean(const TestFunction& f, std::uint64_t n_samples, std::uint64_t seed,
                           SiegelMode mode);

struct VarianceReport {
  std::string mode;
  std::uint64_t n = 0;
  double second_moment = 0;
  double c_hat = 0;  // (E[S^2] - c2 (Int f)^2) / Int f^2, the implied constant
};

// primitive-mode second moment with the implied constant of the inequality
// E[S^2] <= C Int f^2 + c2 (Int f)^2, c2 = zeta(2)^{-2}; requires even f
VarianceReport validate_variance(const TestFunction& f, std::uint64_t n_samples,
                                 std::uint64_t seed);

struct SmallBallRow {
  double epsilon = 0;
  std::uint64_t hits = 0;
  double probability = 0;
  double ratio = 0;  // P / eps^2
  double wilson_lo = 0, wilson_hi = 0;
};

std::vector<SmallBallRow> small_ball_probability(const std::vector<double>& epsilons,
                                                std::uint64_t n_samples, std::uint64_t seed);

}  // namespace ovals
