// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "fso_irs_lab/geometry.hpp"
#include "fso_irs_lab/special_functions.hpp"

namespace fsoirs {

struct FieldConstants {
  double P_tot = 1.0;
  double eta = 377.0;
  // 1 for the single IRS link, 2 for each leg of a power-split relay link.
  int n = 1;
};

/// Phase profile Phi_irs(r) = k (Phi_x x + Phi_y y + Phi_x2 x^2 + Phi_y2 y^2 + Phi_0) for LP/QP;
/// the FP profile cancels the incident phase and the exact path to r_target.
struct PhaseProfile {
  Profile kind = Profile::LP;
  double phi_x = 0.0;
  double phi_y = 0.0;
  double phi_x2 = 0.0;
  double phi_y2 = 0.0;
  double phi_0 = 0.0;
  std::array<double, 3> r_target{};
};

PhaseProfile build_phase_profile(Profile kind, const LinkGeometry& g, const BeamParams& beam, double f);

/// Resolved optical configuration. For mirrors the geometry carries the specular angle
/// on both sides and the profile is a zero-gradient LP.
struct OpticalSetup {
  LinkGeometry geometry;
  BeamParams beam;
  IrsConfig irs;
  FieldConstants constants;
  PhaseProfile profile;
};

OpticalSetup make_setup(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs,
                        const FieldConstants& c = {});

double c_ell(const BeamParams& beam, double d, const FieldConstants& c);
cplx c_r(const LinkGeometry& g, const BeamParams& beam);

/// Incident psi_in(r_r) in radians.
double incident_phase(double xr, double yr, const LinkGeometry& g, const BeamParams& beam);
cplx incident_field(double xr, double yr, const LinkGeometry& g, const BeamParams& beam,
                    const FieldConstants& c = {});
/// Phi_irs(r_r) in radians.
double irs_phase(const PhaseProfile& p, double xr, double yr, const LinkGeometry& g, const BeamParams& beam);

/// Lens point r_o in IRS coordinates.
std::array<double, 3> lens_point(double xp, double yp, const LinkGeometry& g);

struct QuadratureOptions {
  double rel_tol = 1e-6;
  int samples_per_cycle = 12;
  int max_panels = 2048;
  // Gaussian envelope truncation in units of the incident footprint radius.
  double envelope_cut = 6.5;
};

struct QuadratureDiagnostics {
  double cycles_x = 0.0;
  double cycles_y = 0.0;
  int panels_x = 0;
  int panels_y = 0;
  int refinements = 0;
};

/// Direct Huygens integral over the IRS rectangle with exact distances.
cplx reflected_field_quadrature(double xp, double yp, const OpticalSetup& s, const QuadratureOptions& opt = {},
                                QuadratureDiagnostics* diag = nullptr);

/// Gaussian-aperture coefficients b_x, b_y of the closed-form field (LP, QP and mirror).
std::array<cplx, 2> aperture_coefficients(const OpticalSetup& s);

/// F(c) = int_{-L/2}^{L/2} exp(-b t^2 - j c t) dt in closed form.
cplx gaussian_aperture_integral(cplx b, double L, double c);

/// Exact erf-form field under the Fresnel expansion (LP, QP and mirror).
cplx reflected_field_erf_form(double xp, double yp, const OpticalSetup& s);

struct FpIntensity {
  double value = 0.0;
  bool expansion_warning = false;
};

double fp_constant(const OpticalSetup& s);
FpIntensity fp_intensity(double xp, double yp, const OpticalSetup& s);

enum class LensMode { disc, square };
enum class OracleTier { erf_form, quadrature };

struct OracleOptions {
  LensMode lens_mode = LensMode::square;
  OracleTier tier = OracleTier::erf_form;
  double rel_tol = 1e-9;
  // Gauss-Legendre order per dimension over the lens for the quadrature tier.
  int lens_nodes = 12;
  QuadratureOptions quad;
};

/// GML = (1 / (2 eta P)) * integral of |E_r|^2 over the lens.
double numerical_gml(const OpticalSetup& s, const LensConfig& lens, const OracleOptions& opt = {});

/// Perpendicular Gaussian beam over the lens, integrated numerically.
double numerical_relay_gml(double d, const BeamParams& beam, const LensConfig& lens,
                           LensMode mode = LensMode::square);

struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  cplx E;
  double I = 0.0;
};

std::vector<FieldSample> field_map(const OpticalSetup& s, const std::vector<double>& xs,
                                   const std::vector<double>& ys, OracleTier tier = OracleTier::erf_form);

}  // namespace fsoirs
