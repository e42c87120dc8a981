#include "ovals/siegel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ovals/mathx.hpp"
#include "ovals/stats.hpp"

namespace ovals {

// ---------------------------------------------------------------------------
// test functions
// ---------------------------------------------------------------------------

namespace {

// composite Simpson for 2*pi*r*g(r) on [a,b]; only used to cross-check the
// stored closed forms at construction (the profiles are low-degree
// polynomials, so 1<<12 panels leave error far below the 1e-8 gate)
template <typename G>
double radial_quadrature(double a, double b, G g) {
  const int n = 1 << 12;
  const double h = (b - a) / n;
  KahanSum acc;
  for (int i = 0; i <= n; ++i) {
    const double r = a + h * i;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc.add(w * kTwoPi * r * g(r));
  }
  return acc.value() * h / 3.0;
}

void check_integral(const TestFunction& f) {
  double lo = 0.0;
  if (f.kind == TestFunction::Kind::Annulus) lo = f.r0;
  const double quad = radial_quadrature(lo, f.r1, [&](double r) {
    // sample strictly inside the support piece so indicator jumps at the
    // endpoints do not bias the panel sums
    if (f.kind != TestFunction::Kind::SmoothBump) return 1.0;
    return f.eval_radial(r);
  });
  if (std::abs(quad - f.integral()) > 1e-8 * std::max(1.0, std::abs(f.integral())))
    throw NumericError("test function integral does not match quadrature");
}

}  // namespace

TestFunction TestFunction::ball(double radius) {
  if (!(radius > 0.0)) throw std::domain_error("test function: radius must be positive");
  TestFunction f;
  f.kind = Kind::BallIndicator;
  f.r1 = radius;
  check_integral(f);
  return f;
}

TestFunction TestFunction::smooth_bump(double radius) {
  if (!(radius > 0.0)) throw std::domain_error("test function: radius must be positive");
  TestFunction f;
  f.kind = Kind::SmoothBump;
  f.r1 = radius;
  check_integral(f);
  return f;
}

TestFunction TestFunction::annulus(double inner, double outer) {
  if (!(inner >= 0.0) || !(outer > inner))
    throw std::domain_error("test function: need 0 <= inner < outer");
  TestFunction f;
  f.kind = Kind::Annulus;
  f.r0 = inner;
  f.r1 = outer;
  check_integral(f);
  return f;
}

double TestFunction::eval_radial(double r) const {
  switch (kind) {
    case Kind::BallIndicator:
      return r <= r1 ? 1.0 : 0.0;
    case Kind::SmoothBump: {
      if (r > r1) return 0.0;
      const double u = 1.0 - (r / r1) * (r / r1);
      return u * u;
    }
    case Kind::Annulus:
      return (r >= r0 && r <= r1) ? 1.0 : 0.0;
  }
  return 0.0;
}

double TestFunction::integral() const {
  switch (kind) {
    case Kind::BallIndicator:
      return kPi * r1 * r1;
    case Kind::SmoothBump:
      // 2 pi R^2 Int_0^1 (1-u^2)^2 u du = pi R^2 / 3
      return kPi * r1 * r1 / 3.0;
    case Kind::Annulus:
      return kPi * (r1 * r1 - r0 * r0);
  }
  return 0.0;
}

double TestFunction::square_integral() const {
  switch (kind) {
    case Kind::BallIndicator:
      return kPi * r1 * r1;
    case Kind::SmoothBump:
      // 2 pi R^2 Int_0^1 (1-u^2)^4 u du = pi R^2 / 5
      return kPi * r1 * r1 / 5.0;
    case Kind::Annulus:
      return kPi * (r1 * r1 - r0 * r0);
  }
  return 0.0;
}

std::string TestFunction::describe() const {
  char buf[96];
  switch (kind) {
    case Kind::BallIndicator:
      std::snprintf(buf, sizeof buf, "ball(%g)", r1);
      break;
    case Kind::SmoothBump:
      std::snprintf(buf, sizeof buf, "smooth-bump(%g)", r1);
      break;
    case Kind::Annulus:
      std::snprintf(buf, sizeof buf, "annulus(%g,%g)", r0, r1);
      break;
  }
  return buf;
}

// ---------------------------------------------------------------------------
// transforms and Monte Carlo validation
// ---------------------------------------------------------------------------

double siegel_transform(const TestFunction& f, const UnimodularLattice& L, SiegelMode mode) {
  // reduce first: the reduced basis keeps the enumeration window tight even
  // for very skew inputs, and primitivity is basis-independent
  const Mat2 B = reduced_matrix(reduce(L));
  KahanSum acc;
  for (const auto& p : enumerate_ball_indexed(B, f.support_radius())) {
    if (mode == SiegelMode::Primitive &&
        std::gcd(std::abs(p.k1), std::abs(p.k2)) != 1)
      continue;
    acc.add(f(p.v));
  }
  return acc.value();
}

namespace {

const char* mode_name(SiegelMode m) {
  return m == SiegelMode::Primitive ? "primitive" : "all-nonzero";
}

}  // namespace

SiegelReport validate_mean(const TestFunction& f, std::uint64_t n_samples, std::uint64_t seed,
                           SiegelMode mode) {
  if (n_samples < 1000) throw std::domain_error("validate_mean: need at least 10^3 samples");

  KahanSum sum, sum_sq;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Rng rng(derive_seed(seed, i));  // per-sample stream: order-insensitive
    const double s = siegel_transform(f, sample_haar(rng), mode);
    sum.add(s);
    sum_sq.add(s * s);
  }
  const double n = double(n_samples);
  const double mean = sum.value() / n;
  const double var = std::max(0.0, (sum_sq.value() / n - mean * mean) * n / (n - 1.0));

  SiegelReport rep;
  rep.formula = "mean-value";
  rep.mode = mode_name(mode);
  rep.n = n_samples;
  rep.predicted = (mode == SiegelMode::Primitive ? 1.0 / kZeta2 : 1.0) * f.integral();
  rep.estimate = mean;
  rep.std_error = std::sqrt(var / n);
  if (rep.std_error > 0.0)
    rep.z = (mean - rep.predicted) / rep.std_error;
  else
    rep.z = (mean == rep.predicted) ? 0.0 : std::numeric_limits<double>::infinity();
  rep.verdict = std::abs(rep.z) < 3.0;
  return rep;
}

VarianceReport validate_variance(const TestFunction& f, std::uint64_t n_samples,
                                 std::uint64_t seed) {
  if (!f.even()) throw std::domain_error("validate_variance: f must be even");
  if (n_samples < 1000) throw std::domain_error("validate_variance: need at least 10^3 samples");

  KahanSum sum_sq;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const double s = siegel_transform(f, sample_haar(rng), SiegelMode::Primitive);
    sum_sq.add(s * s);
  }
  const double m2 = sum_sq.value() / double(n_samples);
  const double c2 = 1.0 / (kZeta2 * kZeta2);
  const double If = f.integral(), If2 = f.square_integral();

  VarianceReport rep;
  rep.mode = "primitive";
  rep.n = n_samples;
  rep.second_moment = m2;
  rep.c_hat = (m2 - c2 * If * If) / If2;
  return rep;
}

std::vector<SmallBallRow> small_ball_probability(const std::vector<double>& epsilons,
                                                 std::uint64_t n_samples, std::uint64_t seed) {
  for (double e : epsilons)
    if (!(e > 0.0 && e < 1.0))
      throw std::domain_error("small_ball_probability: each epsilon must lie in (0,1)");
  if (epsilons.empty()) throw std::domain_error("small_ball_probability: empty epsilon list");

  std::vector<std::uint64_t> hits(epsilons.size(), 0);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const double shortest = reduce(sample_haar(rng)).norm1;
    for (std::size_t j = 0; j < epsilons.size(); ++j)
      if (shortest < epsilons[j]) ++hits[j];
  }

  std::vector<SmallBallRow> rows;
  for (std::size_t j = 0; j < epsilons.size(); ++j) {
    SmallBallRow row;
    row.epsilon = epsilons[j];
    row.hits = hits[j];
    row.probability = double(hits[j]) / double(n_samples);
    row.ratio = row.probability / (epsilons[j] * epsilons[j]);
    const Interval ci = wilson_interval(hits[j], n_samples);
    row.wilson_lo = ci.lo;
    row.wilson_hi = ci.hi;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ovals
