// Strictly convex analytic ovals given by a truncated Fourier series of the
// support function
//
//     h(theta) = c0 + sum_{n=1..N} ( a_n cos n.theta + b_n sin n.theta ),
//
// anchored so the origin is interior. Everything the rest of the library
// needs follows from h by support-function calculus:
//
//     Y(xi)    = |xi| h(arg xi)          homogeneous support value, the width
//                                        of the body in direction xi
//     x(theta) = h u + h' u_perp         boundary point with outer normal
//                                        u = (cos theta, sin theta)
//     rho      = h + h''                 curvature radius at x(theta); strict
//                                        convexity means rho > 0 everywhere
//     Gamma(phi)                         polar radius: |x| of the boundary
//                                        point at polar angle phi
//     gauge(x) = |x| / Gamma(arg x)      Minkowski gauge; gauge <= t is
//                                        membership in the dilation t.Omega
//
// The polar radius is not a trigonometric polynomial, so it is obtained by
// inverting the strictly monotone map theta -> arg x(theta) with bisection
// plus a Newton polish. Linear images D.Omega are represented by re-fitting
// the support function xi -> Y(D^T xi), which is exact up to the fit
// residual (reported by the fit).
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ovals/common.hpp"

namespace ovals {

class OvalCurve {
 public:
  // trig-polynomial support function; throws std::domain_error unless
  // h > 0 and h + h'' > 0 hold on the validation grid
  OvalCurve(double c0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
            int grid_resolution = 2048);

  static OvalCurve disk();                           // h = 1
  static OvalCurve ellipse(double a, double b);      // semi-axes a, b
  // least-squares-free Fourier projection of an arbitrary support function;
  // degree grows until the residual on the grid drops below 1e-10
  static OvalCurve fit(const std::function<double(double)>& h, int grid_resolution = 2048,
                       int max_degree = 512);

  // --- support-function calculus -------------------------------------------
  double support(double theta) const;                                  // h
  void support_derivs(double theta, double& h, double& dh, double& d2h) const;
  double y_gamma(const Vec2& xi) const;          // |xi| h(arg xi); xi != 0
  Vec2 support_point(const Vec2& xi) const;      // boundary point, normal xi
  Vec2 support_point_at(double theta) const;     // same, by normal angle
  double curvature_radius(const Vec2& xi) const; // rho at the support point
  double curvature_radius_at(double theta) const;

  // --- polar description ----------------------------------------------------
  double polar_radius(double phi) const;      // Gamma(phi)
  // normal angle theta of the boundary point at polar angle phi (the
  // inverse boundary map; polar_radius is |x(theta)| at this theta)
  double normal_angle_of_polar(double phi) const;
  double gauge(const Vec2& x) const;          // r(x), gauge(0) = 0
  bool contains(const Vec2& p, double t, const Vec2& alpha = Vec2::Zero()) const;

  // line clip against the dilation t.Omega along {origin + s * dir}
  enum class Clip {
    Miss,   // certified: the line does not meet the body
    Span,   // [s0,s1] is the intersection interval; parameters further than
            // the returned pads from the endpoints are certified inside
    Graze,  // near-tangent: [s0,s1] conservatively covers any intersection,
            // but nothing inside it is certified either way
  };
  // pad0/pad1 (optional) bound the endpoint uncertainty in s units: the true
  // crossing lies within s_i -/+ pad_i (Span only; zero for Graze covers)
  Clip clip_line(const Vec2& origin, const Vec2& dir, double t, double& s0, double& s1,
                 double* pad0 = nullptr, double* pad1 = nullptr) const;

  // distance from p to the dilated boundary t.gamma (projected Newton with
  // bisection fallback; tolerance ~1e-12 relative)
  double boundary_distance(const Vec2& p, double t) const;

  double area() const;  // (1/2) Int (h^2 - h'^2), exact from coefficients

  // image under a determinant-one linear map, re-fitted to the Fourier basis
  OvalCurve transformed(const Mat2& D) const;

  // --- metadata -------------------------------------------------------------
  bool symmetric() const { return symmetric_; }    // h(theta+pi) == h(theta)
  double rho_min() const { return rho_min_; }
  double rho_max() const { return rho_max_; }
  double support_min() const { return h_min_; }
  double support_max() const { return h_max_; }
  double fit_residual() const { return fit_residual_; }
  int grid_resolution() const { return grid_; }
  int degree() const { return int(ca_.size()); }
  double c0() const { return c0_; }
  const std::vector<double>& cos_coeffs() const { return ca_; }
  const std::vector<double>& sin_coeffs() const { return cb_; }
  std::string preset() const { return preset_; }
  void set_preset(const std::string& p) { preset_ = p; }

 private:
  void scan_grid();  // validity check + cached extrema + symmetry flag

  double c0_;
  std::vector<double> ca_, cb_;  // ca_[n-1] multiplies cos((n) theta)
  int grid_;
  bool symmetric_ = false;
  double rho_min_ = 0, rho_max_ = 0, h_min_ = 0, h_max_ = 0;
  double fit_residual_ = 0.0;  // nonzero only for fitted curves
  std::string preset_ = "custom";
};

}  // namespace ovals
