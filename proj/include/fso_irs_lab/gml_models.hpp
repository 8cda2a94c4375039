// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fso_irs_lab/geometry.hpp"
#include "fso_irs_lab/special_functions.hpp"

namespace fsoirs {

enum class Regime { quadratic, linear, saturation };

std::string to_string(Regime r);

/// Closed-form GML result. `value` is clamped to [0, 1]; `raw` keeps the formula output.
struct GmlEvaluation {
  double value = 0.0;
  double raw = 0.0;
  Regime regime = Regime::quadratic;
  std::string formula;
  double w_rx_x = 0.0;
  double w_rx_y = 0.0;
  std::vector<std::string> warnings;
};

/// Design selector for the closed forms: a metamaterial profile or the mirror.
struct Design {
  Technology technology = Technology::metamaterial;
  Profile profile = Profile::LP;
  double f = 250.0;

  bool is_mirror() const { return technology == Technology::mirror; }
  static Design from(const IrsConfig& irs) { return {irs.technology, irs.profile, irs.f}; }
};

std::string design_label(const Design& d);

/// Mirror formulas reuse the metamaterial code paths with theta_i = theta_r = theta_mir.
LinkGeometry effective_geometry(const LinkGeometry& g, const Design& d);

/// Source-to-surface and surface-to-lens gain factors.
double g_ls(const LinkGeometry& g, const BeamParams& beam);
double g_pd(const LinkGeometry& g, const LensConfig& lens);

struct OwenTAxis {
  cplx b;
  double B = 0.0;
  double b_tilde = 0.0;
  cplx zeta1;
  cplx zeta2;
  cplx a_m;
  // Radicand 1 + 2 zeta2^2 + 2 conj(zeta2)^2 under c2; it vanishes for every admissible b.
  cplx radicand;
  bool c2_infinite = true;
  cplx c2;
};

struct OwenTCoefficients {
  OwenTAxis x;
  OwenTAxis y;
};

/// Gaussian-aperture coefficient b along x (sin_x = sin theta_i weighting) or y.
std::pair<cplx, cplx> aperture_b(const LinkGeometry& g, const BeamParams& beam, const Design& d);
OwenTAxis owen_t_axis(cplx b, double L);
OwenTCoefficients owen_t_coefficients(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs);

struct SaturationWidths {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double w_rx_x = 0.0;
  double w_rx_y = 0.0;
};

/// Equivalent receive widths 2 sqrt(2) d2 sqrt(b_tilde) / (k s), shared by the linear and saturation regimes.
SaturationWidths receive_widths(const LinkGeometry& g, const BeamParams& beam, const Design& d);

GmlEvaluation g1_tilde(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs, const LensConfig& lens);
GmlEvaluation g1(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs, const LensConfig& lens);
GmlEvaluation g1_mirror(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs, const LensConfig& lens);
GmlEvaluation g2_tilde(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs, const LensConfig& lens);
GmlEvaluation g2_bar(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs);
GmlEvaluation g2(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs);
GmlEvaluation g2_mirror(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs);
GmlEvaluation g3(const Design& d, const LinkGeometry& g, const BeamParams& beam, const LensConfig& lens,
                 double irs_area = 0.0);

/// Quadratic/linear closed forms for either technology (dispatches to g1/g1_mirror, g2/g2_mirror).
GmlEvaluation g1_for(const Design& d, const LinkGeometry& g, const BeamParams& beam, double irs_area,
                     const LensConfig& lens);
GmlEvaluation g2_for(const Design& d, const LinkGeometry& g, const BeamParams& beam, double irs_area);

struct RegimeBoundaries {
  double S1 = 0.0;
  double S2 = 0.0;
  double S3 = 0.0;
  double G3 = 0.0;
  double branch_threshold = 0.0;
  bool three_regime = true;
};

RegimeBoundaries regime_boundaries(const Design& d, const LinkGeometry& g, const BeamParams& beam,
                                   const LensConfig& lens);

GmlEvaluation gml_piecewise(const Design& d, const LinkGeometry& g, const BeamParams& beam, double irs_area,
                            const LensConfig& lens);
GmlEvaluation gml_piecewise(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs,
                            const LensConfig& lens);

double relay_gml(double d, const BeamParams& beam, const LensConfig& lens);

/// Focal parameter for which the QP saturation GML reproduces the LP one; empty when sin^2 ti <= 2 sin^2 tr.
std::optional<double> qp_equivalent_focal(const LinkGeometry& g, const BeamParams& beam);

}  // namespace fsoirs
