#include "ovals/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace ovals {

// ---------------------------------------------------------------------------
// construction and validation
// ---------------------------------------------------------------------------

OvalCurve::OvalCurve(double c0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                     int grid_resolution)
    : c0_(c0), ca_(std::move(cos_coeffs)), cb_(std::move(sin_coeffs)), grid_(grid_resolution) {
  if (grid_ < 16) throw std::domain_error("OvalCurve: grid_resolution too small");
  cb_.resize(std::max(ca_.size(), cb_.size()), 0.0);
  ca_.resize(cb_.size(), 0.0);
  scan_grid();
}

void OvalCurve::scan_grid() {
  double h, dh, d2h;
  h_min_ = 1e300; h_max_ = -1e300;
  rho_min_ = 1e300; rho_max_ = -1e300;
  double asym = 0.0;  // max |h(theta+pi) - h(theta)|
  for (int i = 0; i < grid_; ++i) {
    double theta = kTwoPi * i / grid_;
    support_derivs(theta, h, dh, d2h);
    double rho = h + d2h;
    h_min_ = std::min(h_min_, h);
    h_max_ = std::max(h_max_, h);
    rho_min_ = std::min(rho_min_, rho);
    rho_max_ = std::max(rho_max_, rho);
    asym = std::max(asym, std::abs(support(theta + kPi) - h));
  }
  if (!(h_min_ > 0.0))
    throw std::domain_error("OvalCurve: support function must be positive (origin interior)");
  if (!(rho_min_ > 0.0))
    throw std::domain_error("OvalCurve: h + h'' must be positive (strict convexity)");
  symmetric_ = asym < 1e-12;
}

OvalCurve OvalCurve::disk() {
  OvalCurve c(1.0, {}, {});
  c.set_preset("disk");
  return c;
}

OvalCurve OvalCurve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("ellipse: semi-axes must be positive");
  OvalCurve c = fit([a, b](double th) {
    double ct = std::cos(th), st = std::sin(th);
    return std::sqrt(a * a * ct * ct + b * b * st * st);
  });
  char buf[64];
  std::snprintf(buf, sizeof buf, "ellipse(%g,%g)", a, b);
  c.set_preset(buf);
  return c;
}

OvalCurve OvalCurve::fit(const std::function<double(double)>& h, int grid_resolution,
                         int max_degree) {
  // plain DFT projection on a uniform grid; spectrally exact for analytic h
  const int K = std::max(4 * grid_resolution, 4096);
  std::vector<double> samples(K);
  for (int j = 0; j < K; ++j) samples[j] = h(kTwoPi * j / K);

  const int n_hi = std::min(max_degree, K / 4);
  double c0 = 0.0;
  for (double v : samples) c0 += v;
  c0 /= K;

  std::vector<double> ca(n_hi, 0.0), cb(n_hi, 0.0);
  double scale = 0.0;
  for (double v : samples) scale = std::max(scale, std::abs(v));
  // accumulate e^{i n theta_j} by angle-addition, resynced from exact trig
  // every 16 degrees with the phase reduced in integer arithmetic; that keeps
  // the per-coefficient rounding noise below the truncation floor even at
  // degrees in the thousands, where cos(2 pi n j / K) evaluated directly
  // loses ~n ulp to argument rounding
  for (int j = 0; j < K; ++j) {
    const double v = samples[j];
    const double c1 = std::cos(kTwoPi * j / K), s1 = std::sin(kTwoPi * j / K);
    double cn = 0.0, sn = 0.0;
    for (int n = 1; n <= n_hi; ++n) {
      if ((n & 15) == 1) {
        const double phase = kTwoPi * double((std::int64_t(n) * j) % K) / K;
        cn = std::cos(phase);
        sn = std::sin(phase);
      } else {
        const double cn1 = cn * c1 - sn * s1;
        sn = sn * c1 + cn * s1;
        cn = cn1;
      }
      ca[n - 1] += v * cn;
      cb[n - 1] += v * sn;
    }
  }
  for (int n = 0; n < n_hi; ++n) {
    ca[n] *= 2.0 / K;
    cb[n] *= 2.0 / K;
  }

  // truncate at the signal floor; the threshold sits well above the projection
  // noise so curvature, which amplifies degree n by n^2, does not accumulate
  // hundreds of noise harmonics
  int deg = n_hi;
  while (deg > 0 && std::abs(ca[deg - 1]) + std::abs(cb[deg - 1]) <= 1e-15 * scale) --deg;
  // a spectrum still above the floor at the cap is not resolved: truncating it
  // would silently corrupt the n^2-weighted curvature series
  if (deg == n_hi && n_hi > 0)
    throw NumericError("OvalCurve::fit: harmonic spectrum not resolved at max degree");
  ca.resize(deg);
  cb.resize(deg);

  OvalCurve curve(c0, std::move(ca), std::move(cb), grid_resolution);
  double resid = 0.0;
  for (int j = 0; j < K; ++j)
    resid = std::max(resid, std::abs(curve.support(kTwoPi * j / K) - samples[j]));
  curve.fit_residual_ = resid;
  if (resid > 1e-10 * std::max(1.0, scale))
    throw NumericError("OvalCurve::fit: support-function fit residual above 1e-10");
  return curve;
}

// ---------------------------------------------------------------------------
// support-function calculus
// ---------------------------------------------------------------------------

double OvalCurve::support(double theta) const {
  double h, dh, d2h;
  support_derivs(theta, h, dh, d2h);
  return h;
}

void OvalCurve::support_derivs(double theta, double& h, double& dh, double& d2h) const {
  const double c = std::cos(theta), s = std::sin(theta);
  double cn = c, sn = s;  // cos(n.theta), sin(n.theta), n starting at 1
  h = c0_;
  dh = 0.0;
  d2h = 0.0;
  const std::size_t N = ca_.size();
  for (std::size_t i = 0; i < N; ++i) {
    const double n = double(i + 1);
    const double term = ca_[i] * cn + cb_[i] * sn;
    h += term;
    dh += n * (cb_[i] * cn - ca_[i] * sn);
    d2h -= n * n * term;
    const double cn1 = cn * c - sn * s;  // angle-addition rotation
    sn = sn * c + cn * s;
    cn = cn1;
  }
}

double OvalCurve::y_gamma(const Vec2& xi) const {
  double r = xi.norm();
  if (r == 0.0) throw std::domain_error("y_gamma: zero direction");
  return r * support(std::atan2(xi.y(), xi.x()));
}

Vec2 OvalCurve::support_point_at(double theta) const {
  double h, dh, d2h;
  support_derivs(theta, h, dh, d2h);
  const double c = std::cos(theta), s = std::sin(theta);
  // x = h u + h' u_perp with u = (c,s), u_perp = (-s,c)
  return Vec2(h * c - dh * s, h * s + dh * c);
}

Vec2 OvalCurve::support_point(const Vec2& xi) const {
  if (xi.norm() == 0.0) throw std::domain_error("support_point: zero direction");
  return support_point_at(std::atan2(xi.y(), xi.x()));
}

double OvalCurve::curvature_radius_at(double theta) const {
  double h, dh, d2h;
  support_derivs(theta, h, dh, d2h);
  return h + d2h;
}

double OvalCurve::curvature_radius(const Vec2& xi) const {
  if (xi.norm() == 0.0) throw std::domain_error("curvature_radius: zero direction");
  return curvature_radius_at(std::atan2(xi.y(), xi.x()));
}

double OvalCurve::area() const {
  // (1/2) Int (h^2 - h'^2) = pi c0^2 + (pi/2) sum (1 - n^2)(a_n^2 + b_n^2)
  double acc = c0_ * c0_;
  for (std::size_t i = 0; i < ca_.size(); ++i) {
    const double n = double(i + 1);
    acc += 0.5 * (1.0 - n * n) * (ca_[i] * ca_[i] + cb_[i] * cb_[i]);
  }
  return kPi * acc;
}

// ---------------------------------------------------------------------------
// polar description: invert theta -> arg x(theta)
//
// The polar angle of the boundary point is strictly increasing in the normal
// angle theta, and the two never differ by pi/2 or more (the position vector
// makes an acute angle with the outer normal because <x,u> = h > 0). That
// gives a bracketing interval of width pi for free.
// ---------------------------------------------------------------------------

double OvalCurve::normal_angle_of_polar(double phi) const {
  auto defect = [&](double theta) {
    Vec2 x = support_point_at(theta);
    return wrap_angle(std::atan2(x.y(), x.x()) - phi);
  };
  double lo = phi - 0.5 * kPi, hi = phi + 0.5 * kPi;
  // bisect to ~1e-6, then Newton with d(arg x)/d theta = rho h / |x|^2
  for (int i = 0; i < 21; ++i) {
    double mid = 0.5 * (lo + hi);
    (defect(mid) <= 0.0 ? lo : hi) = mid;
  }
  double theta = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double h, dh, d2h;
    support_derivs(theta, h, dh, d2h);
    const double r2 = h * h + dh * dh;  // |x|^2
    const double slope = (h + d2h) * h / r2;
    theta -= defect(theta) / slope;
    theta = std::clamp(theta, lo - 1e-3, hi + 1e-3);
  }
  return theta;
}

double OvalCurve::polar_radius(double phi) const {
  return support_point_at(normal_angle_of_polar(phi)).norm();
}

double OvalCurve::gauge(const Vec2& x) const {
  double r = x.norm();
  if (r == 0.0) return 0.0;
  return r / polar_radius(std::atan2(x.y(), x.x()));
}

bool OvalCurve::contains(const Vec2& p, double t, const Vec2& alpha) const {
  if (!(t > 0.0)) throw std::domain_error("contains: dilation must be positive");
  return gauge(p - alpha) <= t * (1.0 + 1e-12);
}

// ---------------------------------------------------------------------------
// line clipping against the dilated body
//
// For a line {q + s d}, a boundary point t.x(theta) lies on it iff
// G(theta) = <t.x(theta) - q, w> vanishes, where w = (d_y, -d_x). G has a
// single maximum (normal angle arg w) and a single minimum (arg w + pi), so
// there are exactly two crossings when the line meets the body, each
// bracketed by a monotone stretch of G.
// ---------------------------------------------------------------------------

OvalCurve::Clip OvalCurve::clip_line(const Vec2& origin, const Vec2& dir, double t, double& s0,
                                     double& s1, double* pad0, double* pad1) const {
  const Vec2 w(dir.y(), -dir.x());
  const double wn = w.norm();
  if (wn == 0.0) throw std::domain_error("clip_line: zero direction");
  const double dd = dir.squaredNorm();
  if (pad0) *pad0 = 0.0;
  if (pad1) *pad1 = 0.0;

  auto G = [&](double theta) { return t * support_point_at(theta).dot(w) - origin.dot(w); };
  auto param = [&](double theta) {  // line parameter of a boundary point
    return (t * support_point_at(theta) - origin).dot(dir) / dd;
  };

  const double th_top = std::atan2(w.y(), w.x());
  const double th_bot = th_top + kPi;
  const double g_top = t * support(th_top) * wn - origin.dot(w);
  const double g_bot = -t * support(th_bot) * wn - origin.dot(w);
  const double graze_tol = 1e-8 * t * wn * h_max_;

  // certified miss on either side
  if (g_top < -graze_tol || g_bot > graze_tol) return Clip::Miss;

  // grazing contact: report a conservative cover of any intersection so the
  // caller can fall back to point-by-point membership tests
  if (g_top <= graze_tol || g_bot >= -graze_tol) {
    const double th_g = (g_top <= graze_tol) ? th_top : th_bot;
    const double sg = param(th_g);
    // contact chord from G ~ G_ext - (t |w| rho / 2) dtheta^2 (width largest
    // for the flattest contact, rho_min) mapped through ds/dtheta <= t rho_max
    // / |d|, with a 2x margin for the neglected higher orders
    const double width = 2.0 * (rho_max_ / std::sqrt(rho_min_)) *
                             std::sqrt(2.0 * graze_tol * t / wn) / std::sqrt(dd) +
                         1e-9;
    s0 = sg - width;
    s1 = sg + width;
    return Clip::Graze;
  }

  // two proper crossings: G rises over (th_bot - 2pi, th_top), falls after.
  // The certified error box is the final bisection bracket; Newton refines
  // the point estimate but is clamped so it cannot leave the bracket.
  struct Root {
    double theta, lo, hi;
  };
  auto solve = [&](double lo, double hi, bool rising) {
    for (int i = 0; i < 30; ++i) {
      double mid = 0.5 * (lo + hi);
      bool below = (G(mid) < 0.0) == rising;
      (below ? lo : hi) = mid;
    }
    double theta = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {  // Newton polish, G' = t rho <u_perp, w>
      double h, dh, d2h;
      support_derivs(theta, h, dh, d2h);
      const Vec2 uperp(-std::sin(theta), std::cos(theta));
      const double slope = t * (h + d2h) * uperp.dot(w);
      if (slope == 0.0) break;
      double step = G(theta) / slope;
      theta = std::clamp(theta - step, lo, hi);
      if (std::abs(step) < 1e-13) break;
    }
    return Root{theta, lo, hi};
  };
  const Root ra = solve(th_bot - kTwoPi, th_top, true);
  const Root rb = solve(th_top, th_bot, false);
  const double sa = param(ra.theta), sb = param(rb.theta);
  // endpoint uncertainty: the bracket image in s, plus a rounding floor
  const double ea = std::abs(param(ra.hi) - param(ra.lo)) + 1e-9;
  const double eb = std::abs(param(rb.hi) - param(rb.lo)) + 1e-9;
  if (sa <= sb) {
    s0 = sa;
    s1 = sb;
    if (pad0) *pad0 = ea;
    if (pad1) *pad1 = eb;
  } else {
    s0 = sb;
    s1 = sa;
    if (pad0) *pad0 = eb;
    if (pad1) *pad1 = ea;
  }
  return Clip::Span;
}

// ---------------------------------------------------------------------------
// distance to the dilated boundary
// ---------------------------------------------------------------------------

double OvalCurve::boundary_distance(const Vec2& p, double t) const {
  // coarse scan for the nearest boundary sample, then solve
  // <p - t.x(theta), u_perp(theta)> = 0 (the foot-of-perpendicular condition)
  const int K = 64;
  double best = 0.0, best_d2 = 1e300;
  for (int i = 0; i < K; ++i) {
    double theta = kTwoPi * i / K;
    double d2 = (p - t * support_point_at(theta)).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = theta;
    }
  }
  auto g = [&](double theta) {
    const Vec2 uperp(-std::sin(theta), std::cos(theta));
    return (p - t * support_point_at(theta)).dot(uperp);
  };
  double lo = best - kTwoPi / K, hi = best + kTwoPi / K;
  double glo = g(lo), ghi = g(hi);
  if (glo * ghi > 0.0) {
    // very flat spot or p far away: widen once; beyond that the scan winner
    // is already accurate enough for our band tests
    lo = best - 2.0 * kTwoPi / K;
    hi = best + 2.0 * kTwoPi / K;
    glo = g(lo);
    ghi = g(hi);
  }
  double theta = best;
  if (glo * ghi <= 0.0) {
    for (int i = 0; i < 50; ++i) {
      double mid = 0.5 * (lo + hi);
      if ((g(mid) <= 0.0) == (glo <= 0.0))
        lo = mid;
      else
        hi = mid;
    }
    theta = 0.5 * (lo + hi);
  }
  return (p - t * support_point_at(theta)).norm();
}

// ---------------------------------------------------------------------------
// linear images
// ---------------------------------------------------------------------------

OvalCurve OvalCurve::transformed(const Mat2& D) const {
  if (std::abs(D.determinant() - 1.0) > 1e-12)
    throw std::domain_error("transformed: matrix must have determinant 1");
  const Mat2 Dt = D.transpose();
  const auto image_support = [&](double theta) {
    const Vec2 xi(std::cos(theta), std::sin(theta));
    return y_gamma(Dt * xi);
  };
  // a stretch by sigma squeezes the analyticity strip of the image support
  // function by ~sigma^2, so strong shears need proportionally more
  // harmonics; widen the basis until the spectrum resolves or give up
  for (int mult = 1;; mult *= 2) {
    try {
      return fit(image_support, grid_ * mult, 1024 * mult);
    } catch (const NumericError&) {
      if (mult >= 4) throw;
    }
  }
}

}  // namespace ovals
