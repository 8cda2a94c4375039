// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

void BeamParams::validate() const {
  if (!(lambda > 0.0)) throw ValidationError("beam: wavelength must be positive");
  if (!(w0 > lambda)) throw ValidationError("beam: waist must exceed the wavelength");
}

double beamwidth(double z, const BeamParams& beam) {
  if (z < 0.0) throw DomainError("beamwidth: negative distance");
  const double r = z / beam.zR();
  return beam.w0 * std::sqrt(1.0 + r * r);
}

double curvature_radius(double z, const BeamParams& beam) {
  if (z < 0.0) throw DomainError("curvature_radius: negative distance");
  if (z == 0.0) return std::numeric_limits<double>::infinity();
  const double r = beam.zR() / z;
  return z * (1.0 + r * r);
}

double far_field_beamwidth(double z, const BeamParams& beam) {
  return beam.lambda * z / (kPi * beam.w0);
}

double Ellipse::He() const { return 0.5 * std::sqrt(d3 * d3 - Ltr * Ltr); }

void Ellipse::validate() const {
  if (!(Ltr > 0.0)) throw ValidationError("ellipse: L_tr must be positive");
  if (!(d3 > Ltr)) throw ValidationError("ellipse: d3 must exceed L_tr");
}

double LinkGeometry::sin_i() const { return std::sin(theta_i); }
double LinkGeometry::sin_r() const { return std::sin(theta_r); }
double LinkGeometry::cos_i() const { return std::cos(theta_i); }
double LinkGeometry::cos_r() const { return std::cos(theta_r); }

Point2 ellipse_position(double d1, const Ellipse& e) {
  e.validate();
  const double span = 1e-12 * e.d3;
  if (d1 < e.d1_min() - span || d1 > e.d1_max() + span)
    throw DomainError("ellipse_position: d1 outside [(d3-Ltr)/2, (d3+Ltr)/2]");
  d1 = std::clamp(d1, e.d1_min(), e.d1_max());
  const double d2 = e.d3 - d1;
  const double diff = d1 * d1 - d2 * d2;
  const double x = diff / (2.0 * e.Ltr);
  const double s = diff / (e.d3 * e.Ltr);
  const double z = e.He() * std::sqrt(std::max(0.0, 1.0 - s * s));
  return {x, z};
}

AngleSolution angles_from_position(double x, double z, const Ellipse& e, double rel_tol) {
  e.validate();
  AngleSolution out;
  out.d1 = std::hypot(x + 0.5 * e.Ltr, z);
  out.d2 = std::hypot(x - 0.5 * e.Ltr, z);
  if (std::abs(out.d1 + out.d2 - e.d3) > std::max(rel_tol, 1e-9) * e.d3)
    throw ValidationError("angles_from_position: point is not on the ellipse");
  if (z <= 1e-12 * e.d3) {
    out.degenerate = true;
    return out;
  }
  out.theta_i = std::asin(std::min(1.0, z / out.d1));
  out.theta_r = std::asin(std::min(1.0, z / out.d2));
  return out;
}

namespace {

double mirror_angle_on_plane(double x, double z, double Ltr) {
  // Interior angles of the Tx-surface-Rx triangle at Tx and Rx.
  const double at_tx = std::atan2(z, x + 0.5 * Ltr);
  const double at_rx = std::atan2(z, 0.5 * Ltr - x);
  return 0.5 * (at_tx + at_rx);
}

}  // namespace

LinkGeometry link_at_d1(const Ellipse& e, double d1) {
  const Point2 p = ellipse_position(d1, e);
  const AngleSolution a = angles_from_position(p.x, p.z, e, 1e-9);
  if (a.degenerate) throw DomainError("link_at_d1: degenerate endpoint (surface on the Tx-Rx line)");
  LinkGeometry g;
  g.ellipse = e;
  g.d1 = d1;
  g.d2 = e.d3 - d1;
  g.x_o = p.x;
  g.z_o = p.z;
  g.theta_i = a.theta_i;
  g.theta_r = a.theta_r;
  g.theta_mir = mirror_angle_on_plane(p.x, p.z, e.Ltr);
  return g;
}

LinkGeometry link_at_x(const Ellipse& e, double x) { return link_at_d1(e, e.d1_from_x(x)); }

LinkGeometry link_from_angles(double d1, double d2, double theta_i, double theta_r) {
  if (!(d1 > 0.0 && d2 > 0.0)) throw ValidationError("link_from_angles: distances must be positive");
  if (!(theta_i > 0.0 && theta_i <= 0.5 * kPi && theta_r > 0.0 && theta_r <= 0.5 * kPi))
    throw ValidationError("link_from_angles: angles must lie in (0, pi/2]");
  LinkGeometry g;
  g.d1 = d1;
  g.d2 = d2;
  g.theta_i = theta_i;
  g.theta_r = theta_r;
  g.theta_mir = 0.5 * (theta_i + theta_r);
  g.ellipse.d3 = d1 + d2;
  g.ellipse.Ltr = d1 * std::cos(theta_i) + d2 * std::cos(theta_r);
  g.x_o = -0.5 * g.ellipse.Ltr + d1 * std::cos(theta_i);
  g.z_o = d1 * std::sin(theta_i);
  return g;
}

double mirror_rotation(const LinkGeometry& g) { return 0.5 * std::abs(g.theta_r - g.theta_i); }

Footprint incident_footprint(const LinkGeometry& g, const BeamParams& beam) {
  const double s = g.sin_i();
  if (!(s > 1e-12)) throw DomainError("incident_footprint: grazing incidence");
  const double w = beamwidth(g.d1, beam);
  Footprint fp;
  fp.w_in_x = w / s;
  fp.w_in_y = w;
  fp.area = kPi * fp.w_in_x * fp.w_in_y;
  return fp;
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::LP: return "LP";
    case Profile::QP: return "QP";
    case Profile::FP: return "FP";
  }
  return "?";
}

Profile parse_profile(std::string_view s) {
  if (s == "LP" || s == "lp") return Profile::LP;
  if (s == "QP" || s == "qp") return Profile::QP;
  if (s == "FP" || s == "fp") return Profile::FP;
  throw ValidationError("unknown phase profile '" + std::string(s) + "'");
}

void IrsConfig::validate() const {
  if (!(Lx > 0.0 && Ly > 0.0)) throw ValidationError("irs: L_x and L_y must be positive");
  if (!is_mirror() && profile == Profile::QP && !(f > 0.0))
    throw ValidationError("irs: focal parameter f must be positive for the QP profile");
}

std::string design_label(const IrsConfig& irs) {
  return irs.is_mirror() ? std::string("mir") : to_string(irs.profile);
}

double LensConfig::square_side() const { return a * std::sqrt(kPi); }

void LensConfig::validate() const {
  if (!(a > 0.0)) throw ValidationError("lens: radius must be positive");
}

double fresnel_min_distance(const IrsConfig& irs, const Footprint& fp, const BeamParams& beam) {
  const double xe = std::min(0.5 * irs.Lx, fp.w_in_x);
  const double ye = std::min(0.5 * irs.Ly, fp.w_in_y);
  return std::sqrt((xe * xe + ye * ye) * (xe + ye) / (4.0 * beam.lambda));
}

}  // namespace fsoirs
