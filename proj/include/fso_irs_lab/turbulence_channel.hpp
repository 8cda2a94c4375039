// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>

#include "fso_irs_lab/geometry.hpp"
#include "fso_irs_lab/special_functions.hpp"

namespace fsoirs {

struct ChannelParams {
  double kappa_db_per_m = 0.43e-3;
  double Cn2 = 50e-15;
  double zeta = 1.0;
  double P_tot = 0.4;
  double N0_dbm_per_mhz = -114.0;
  double bandwidth_hz = 1e9;
  double gamma_th = 1.0;

  /// Noise power N0 * B in W.
  double sigma_n2() const;
  /// Transmit SNR P_tot / sigma_n^2.
  double gamma_bar() const { return P_tot / sigma_n2(); }
  void validate() const;
};

double atmospheric_loss(double d, double kappa_db_per_m);
double rytov_variance(double d, const BeamParams& beam, double Cn2);

struct GgParamsResult {
  GammaGammaParams params;
  bool capped = false;
};

/// Plane-wave Gamma-Gamma parameters; alpha and beta are capped at kGgCap for vanishing turbulence.
inline constexpr double kGgCap = 1e6;
GgParamsResult gg_params_checked(double sigma_r2);
GammaGammaParams gg_params(double sigma_r2);
/// Gamma-Gamma parameters of a path of length d.
GammaGammaParams gg_params_for_distance(double d, const BeamParams& beam, double Cn2);

struct LinkBudget {
  double h_p = 1.0;
  double h_gml = 1.0;
  // 1 for the IRS link, 1/2 for each relay leg (equal power split).
  double coefficient = 1.0;
  double zeta = 1.0;

  double gamma_tilde() const { return coefficient * zeta * zeta * h_gml * h_gml * h_p * h_p; }
};

LinkBudget irs_budget(double d3, double h_gml, const ChannelParams& ch);
LinkBudget relay_leg_budget(double d, double h_gml, const ChannelParams& ch);

double outage_irs(double gamma_bar, const LinkBudget& budget, const GammaGammaParams& p, double gamma_th);
double outage_relay(double gamma_bar, const std::array<LinkBudget, 2>& legs, const std::array<GammaGammaParams, 2>& p,
                    double gamma_th);

struct GainPair {
  double D = 0.0;
  double C = 0.0;
};

GainPair gains_irs(const LinkBudget& budget, const GammaGammaParams& p, double gamma_th);
/// mu scales the per-leg coding gains; mu = 1 reproduces the small-argument CDF expansion.
GainPair gains_relay(const std::array<LinkBudget, 2>& legs, const std::array<GammaGammaParams, 2>& p,
                     double gamma_th, std::array<double, 2> mu = {1.0, 1.0});
double gain_per_leg(const LinkBudget& leg, const GammaGammaParams& p, double gamma_th, double mu);

/// (C gamma_bar)^(-D).
double asymptotic_outage(double gamma_bar, const GainPair& g);

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace fsoirs
