// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/turbulence_channel.hpp"

#include <algorithm>
#include <cmath>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double ChannelParams::sigma_n2() const {
  // dBm/MHz -> W/Hz, times bandwidth.
  return 1e-3 * db_to_linear(N0_dbm_per_mhz) / 1e6 * bandwidth_hz;
}

void ChannelParams::validate() const {
  if (!(kappa_db_per_m >= 0.0)) throw ValidationError("channel: attenuation must be nonnegative");
  if (!(Cn2 > 0.0)) throw ValidationError("channel: Cn2 must be positive");
  if (!(zeta > 0.0)) throw ValidationError("channel: responsivity must be positive");
  if (!(P_tot > 0.0)) throw ValidationError("channel: transmit power must be positive");
  if (!(bandwidth_hz > 0.0)) throw ValidationError("channel: bandwidth must be positive");
  if (!(gamma_th > 0.0)) throw ValidationError("channel: threshold SNR must be positive");
}

double atmospheric_loss(double d, double kappa_db_per_m) {
  if (d < 0.0) throw DomainError("atmospheric_loss: negative distance");
  return std::pow(10.0, -kappa_db_per_m * d / 10.0);
}

double rytov_variance(double d, const BeamParams& beam, double Cn2) {
  if (!(d > 0.0)) throw DomainError("rytov_variance: distance must be positive");
  return 1.23 * Cn2 * std::pow(beam.k(), 7.0 / 6.0) * std::pow(d, 11.0 / 6.0);
}

GgParamsResult gg_params_checked(double s2) {
  if (!(s2 > 0.0)) throw DomainError("gg_params: Rytov variance must be positive");
  const double s125 = std::pow(s2, 6.0 / 5.0);
  const double ea = std::expm1(0.49 * s2 / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0));
  const double eb = std::expm1(0.51 * s2 / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0));
  GgParamsResult r;
  r.params.alpha = 1.0 / ea;
  r.params.beta = 1.0 / eb;
  if (r.params.alpha > kGgCap || r.params.beta > kGgCap) {
    r.capped = true;
    r.params.alpha = std::min(r.params.alpha, kGgCap);
    r.params.beta = std::min(r.params.beta, kGgCap);
  }
  return r;
}

GammaGammaParams gg_params(double s2) { return gg_params_checked(s2).params; }

GammaGammaParams gg_params_for_distance(double d, const BeamParams& beam, double Cn2) {
  return gg_params(rytov_variance(d, beam, Cn2));
}

LinkBudget irs_budget(double d3, double h_gml, const ChannelParams& ch) {
  return {atmospheric_loss(d3, ch.kappa_db_per_m), h_gml, 1.0, ch.zeta};
}

LinkBudget relay_leg_budget(double d, double h_gml, const ChannelParams& ch) {
  return {atmospheric_loss(d, ch.kappa_db_per_m), h_gml, 0.5, ch.zeta};
}

namespace {

double leg_cdf(double gamma_bar, const LinkBudget& b, const GammaGammaParams& p, double gamma_th) {
  if (!(gamma_bar > 0.0)) throw ValidationError("outage: average SNR must be positive");
  if (!(gamma_th >= 0.0)) throw ValidationError("outage: threshold must be nonnegative");
  const double gt = b.gamma_tilde();
  if (!(gt > 0.0)) return 1.0;
  return gamma_gamma_cdf(std::sqrt(gamma_th / (gamma_bar * gt)), p);
}

}  // namespace

double outage_irs(double gamma_bar, const LinkBudget& budget, const GammaGammaParams& p, double gamma_th) {
  return leg_cdf(gamma_bar, budget, p, gamma_th);
}

double outage_relay(double gamma_bar, const std::array<LinkBudget, 2>& legs, const std::array<GammaGammaParams, 2>& p,
                    double gamma_th) {
  const double f1 = leg_cdf(gamma_bar, legs[0], p[0], gamma_th);
  const double f2 = leg_cdf(gamma_bar, legs[1], p[1], gamma_th);
  return std::clamp(f1 + f2 - f1 * f2, 0.0, 1.0);
}

namespace {

// Gamma(tau - rho) / (Gamma(tau) Gamma(rho + 1)) through logs.
double log_leading_factor(const GammaGammaParams& p) {
  p.validate();
  const double rho = p.rho();
  const double tau = p.tau();
  if (std::abs(tau - rho) <= 1e-12 * tau)
    throw DomainError("coding gain: alpha == beta hits the Gamma(tau - rho) pole; perturb alpha or beta");
  return std::lgamma(tau - rho) - std::lgamma(tau) - std::lgamma(rho + 1.0);
}

}  // namespace

GainPair gains_irs(const LinkBudget& budget, const GammaGammaParams& p, double gamma_th) {
  GainPair g;
  const double rho = p.rho();
  const double tau = p.tau();
  g.D = 0.5 * rho;
  const double lk = log_leading_factor(p);
  g.C = budget.gamma_tilde() / (gamma_th * (tau * rho) * (tau * rho)) * std::exp(-lk / g.D);
  return g;
}

double gain_per_leg(const LinkBudget& leg, const GammaGammaParams& p, double gamma_th, double mu) {
  if (!(mu > 0.0)) throw ValidationError("coding gain: mu must be positive");
  const double rho = p.rho();
  const double tau = p.tau();
  const double lk = log_leading_factor(p) + rho * std::log(tau * rho / mu);
  return leg.gamma_tilde() / gamma_th * std::exp(-2.0 / rho * lk);
}

GainPair gains_relay(const std::array<LinkBudget, 2>& legs, const std::array<GammaGammaParams, 2>& p,
                     double gamma_th, std::array<double, 2> mu) {
  const double r1 = p[0].rho();
  const double r2 = p[1].rho();
  GainPair g;
  g.D = 0.5 * std::min(r1, r2);
  const double c1 = gain_per_leg(legs[0], p[0], gamma_th, mu[0]);
  const double c2 = gain_per_leg(legs[1], p[1], gamma_th, mu[1]);
  if (std::abs(r1 - r2) <= 1e-12 * std::max(r1, r2)) {
    g.C = std::pow(std::pow(c1, -g.D) + std::pow(c2, -g.D), -1.0 / g.D);
  } else {
    g.C = r1 < r2 ? c1 : c2;
  }
  return g;
}

double asymptotic_outage(double gamma_bar, const GainPair& g) { return std::pow(g.C * gamma_bar, -g.D); }

}  // namespace fsoirs
