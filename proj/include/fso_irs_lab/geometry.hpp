// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace fsoirs {

inline constexpr double kPi = std::numbers::pi;

/// Gaussian laser source: wavelength and waist radius.
struct BeamParams {
  double lambda = 1550e-9;
  double w0 = 2.5e-3;

  double k() const { return 2.0 * kPi / lambda; }
  double zR() const { return kPi * w0 * w0 / lambda; }
  void validate() const;
};

double beamwidth(double z, const BeamParams& beam);
/// Returns +infinity at z == 0 (flat wavefront at the waist).
double curvature_radius(double z, const BeamParams& beam);
double far_field_beamwidth(double z, const BeamParams& beam);

/// Constant end-to-end distance ellipse with foci at Tx (-Ltr/2, 0) and Rx (+Ltr/2, 0).
struct Ellipse {
  double Ltr = 800.0;
  double d3 = 1000.0;

  double He() const;
  double d1_min() const { return 0.5 * (d3 - Ltr); }
  double d1_max() const { return 0.5 * (d3 + Ltr); }
  double x_from_d1(double d1) const { return d3 * (2.0 * d1 - d3) / (2.0 * Ltr); }
  double d1_from_x(double x) const { return 0.5 * d3 + Ltr * x / d3; }
  void validate() const;
};

struct LinkGeometry {
  Ellipse ellipse;
  double d1 = 0.0;
  double d2 = 0.0;
  double x_o = 0.0;
  double z_o = 0.0;
  double theta_i = 0.0;
  double theta_r = 0.0;
  // Grazing angle of a rotated mirror that reflects Tx onto Rx.
  double theta_mir = 0.0;

  double sin_i() const;
  double sin_r() const;
  double cos_i() const;
  double cos_r() const;
};

struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

Point2 ellipse_position(double d1, const Ellipse& e);

struct AngleSolution {
  double theta_i = 0.0;
  double theta_r = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  bool degenerate = false;
};

AngleSolution angles_from_position(double x, double z, const Ellipse& e, double rel_tol = 1e-9);

LinkGeometry link_at_d1(const Ellipse& e, double d1);
LinkGeometry link_at_x(const Ellipse& e, double x);
/// Free-standing link with independently chosen distances and angles (no ellipse constraint).
LinkGeometry link_from_angles(double d1, double d2, double theta_i, double theta_r);

/// |theta_r - theta_i| / 2.
double mirror_rotation(const LinkGeometry& g);

struct Footprint {
  double w_in_x = 0.0;
  double w_in_y = 0.0;
  double area = 0.0;
};

Footprint incident_footprint(const LinkGeometry& g, const BeamParams& beam);

enum class Technology { mirror, metamaterial };
enum class Profile { LP, QP, FP };

std::string to_string(Profile p);
Profile parse_profile(std::string_view s);

struct IrsConfig {
  Technology technology = Technology::metamaterial;
  Profile profile = Profile::LP;
  double Lx = 1.0;
  double Ly = 1.0;
  double f = 250.0;

  double area() const { return Lx * Ly; }
  bool is_mirror() const { return technology == Technology::mirror; }
  void validate() const;
};

/// Short design label: LP, QP, FP or mir.
std::string design_label(const IrsConfig& irs);

struct LensConfig {
  double a = 0.1;

  double area() const { return kPi * a * a; }
  double square_side() const;
  void validate() const;
};

double fresnel_min_distance(const IrsConfig& irs, const Footprint& fp, const BeamParams& beam);

}  // namespace fsoirs
