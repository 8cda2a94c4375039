// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fso_irs_lab/geometry.hpp"
#include "fso_irs_lab/gml_models.hpp"
#include "fso_irs_lab/turbulence_channel.hpp"

namespace fsoirs {

struct SolverDiagnostics {
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  // Residual divided by the sum of the magnitudes of its terms.
  double residual = 0.0;
  int scan_points = 0;
  int sign_changes = 0;
};

struct PlacementResult {
  std::vector<Point2> points;
  bool is_interval = false;
  double x_lo = 0.0;
  double x_hi = 0.0;
  Point2 representative;
  double d1 = 0.0;
  Regime regime = Regime::saturation;
  double objective = 0.0;
  bool flat = false;
  bool fallback = false;
  SolverDiagnostics diag;
  std::string note;
};

/// Symbols shared by the closed-form placement rules.
struct PlacementSymbols {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double z1_printed = 0.0;
  double z2_printed = 0.0;
};

PlacementSymbols placement_symbols(const Ellipse& e);

/// GML of the given regime as a function of d1 along the ellipse.
std::function<double(double)> regime_objective(const Design& d, Regime r, const Ellipse& e, const BeamParams& beam,
                                               const LensConfig& lens, double irs_area);

PlacementResult optimal_irs_position(const Design& d, Regime r, const Ellipse& e, const BeamParams& beam,
                                     const LensConfig& lens, double irs_area = 1e-6);
PlacementResult optimal_mirror_position(Regime r, const Ellipse& e, const BeamParams& beam, const LensConfig& lens,
                                        double irs_area = 1e-6);
PlacementResult optimal_relay_position(const Ellipse& e);

struct GridOptions {
  int points = 2001;
  // Endpoint margin as a fraction of d3.
  double margin = 1e-3;
  double plateau_tol = 1e-3;
  bool maximize = true;
};

struct GridResult {
  std::vector<double> d1;
  std::vector<double> x;
  std::vector<double> value;
  std::size_t best = 0;
  double best_d1 = 0.0;
  double best_x = 0.0;
  double best_value = 0.0;
  double plateau_x_lo = 0.0;
  double plateau_x_hi = 0.0;
  double cell = 0.0;
  // Local optima whose value is within the plateau tolerance of the best.
  std::vector<std::size_t> ties;
};

GridResult grid_search_verify(const std::function<double(double)>& objective, const Ellipse& e,
                              const GridOptions& opt = {});

double qp_omega1(double d1, double f, const Ellipse& e, const BeamParams& beam);
double qp_omega2(double d1, double f, const Ellipse& e, const BeamParams& beam);
double qp_stationarity_residual(double d1, double f, const Ellipse& e, const BeamParams& beam,
                                const LensConfig& lens);
/// Residual divided by the sum of the magnitudes of its terms.
double qp_stationarity_residual_normalized(double d1, double f, const Ellipse& e, const BeamParams& beam,
                                           const LensConfig& lens);
double fp_stationarity_residual(double d1, const Ellipse& e, const BeamParams& beam, const LensConfig& lens);

struct RootResult {
  double root = 0.0;
  SolverDiagnostics diag;
};

/// All roots of f on [lo, hi] bracketed by an n-point pre-scan, refined by bisection with secant steps.
std::vector<RootResult> find_roots(const std::function<double(double)>& f, double lo, double hi, int scan = 512,
                                   double xtol = 1e-13);

/// Relay placement objective: diversity gain first, coding gain as the tie-break.
struct RelayScore {
  double D = 0.0;
  double C = 0.0;
};
RelayScore relay_score(double d1, const Ellipse& e, const BeamParams& beam, const LensConfig& lens,
                       const ChannelParams& ch);
GridResult relay_grid_optimum(const Ellipse& e, const BeamParams& beam, const LensConfig& lens,
                              const ChannelParams& ch, const GridOptions& opt = {});

}  // namespace fsoirs
