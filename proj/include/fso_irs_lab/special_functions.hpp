// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace fsoirs {

using cplx = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
cplx faddeeva(cplx z);

/// Complex error function, |z| < 30.
cplx erf_complex(cplx z);

/// exp(q^2) * [erf(q + p) - erf(q - p)] without overflow when Re(p^2) is large
/// and p*q is purely imaginary (the Gaussian-aperture integrals of the oracle).
cplx scaled_erf_difference(cplx p, cplx q);

/// Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

/// T(a, h) = 1/(2 pi) int_0^h exp(-a^2 (1 + t^2) / 2) / (1 + t^2) dt along the segment 0 -> h.
cplx owen_t(cplx a, cplx h);
/// Limit h -> +inf (sign > 0) or h -> -inf (sign < 0); requires Re(a^2) > 0.
cplx owen_t_limit(cplx a, int sign);

double normal_cdf(double x);
double gamma_fn(double x);
double bessel_k(double nu, double x);

struct GammaGammaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double rho() const { return alpha < beta ? alpha : beta; }
  double tau() const { return alpha < beta ? beta : alpha; }
  void validate() const;
};

double gamma_gamma_pdf(double x, const GammaGammaParams& p);
double gamma_gamma_cdf(double x, const GammaGammaParams& p);
/// Power-series form only (throws DomainError when it cannot be trusted).
double gamma_gamma_cdf_series(double x, const GammaGammaParams& p);
/// Product-of-Gammas integral form, valid for all parameters.
double gamma_gamma_cdf_integral(double x, const GammaGammaParams& p);

struct McEstimate {
  double p = 0.0;
  double se = 0.0;
};

/// Monte-Carlo CDF at several thresholds from n products of two independent Gamma draws.
/// Deterministic for a given seed regardless of the number of worker threads.
std::vector<McEstimate> gamma_gamma_cdf_mc(const std::vector<double>& xs, const GammaGammaParams& p,
                                           std::uint64_t n, std::uint64_t seed, unsigned jobs = 1);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fsoirs
