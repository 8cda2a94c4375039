// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/special_functions.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr int kWeidemanN = 40;

// Weideman's rational expansion of w(z) in the upper half plane.
struct Weideman {
  double L = 0.0;
  std::array<double, kWeidemanN> a{};

  Weideman() {
    const int M = 2 * kWeidemanN;
    L = std::sqrt(kWeidemanN / std::numbers::sqrt2);
    std::vector<double> f(M, 0.0);
    for (int k = 0; k < M; ++k) {
      const double t = L * std::tan(0.5 * k * std::numbers::pi / M);
      f[k] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int n = 1; n <= kWeidemanN; ++n) {
      double s = f[0];
      for (int k = 1; k < M; ++k) s += 2.0 * f[k] * std::cos(std::numbers::pi * k * n / M);
      a[n - 1] = s / (2.0 * M);
    }
  }

  cplx operator()(cplx z) const {
    const cplx iz(-z.imag(), z.real());
    const cplx den = L - iz;
    const cplx Z = (L + iz) / den;
    cplx p = a[kWeidemanN - 1];
    for (int n = kWeidemanN - 2; n >= 0; --n) p = p * Z + a[n];
    return 2.0 * p / (den * den) + 1.0 / (kSqrtPi * den);
  }
};

const Weideman& weideman() {
  static const Weideman w;
  return w;
}

cplx erf_maclaurin(cplx z) {
  const cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum;
}

// erf for Re z >= 0, Im z >= 0.
cplx erf_first_quadrant(cplx z) {
  if (std::abs(z) < 2.0) return erf_maclaurin(z);
  const cplx iz(-z.imag(), z.real());
  return 1.0 - std::exp(-z * z) * faddeeva(iz);
}

}  // namespace

cplx faddeeva(cplx z) {
  if (z.imag() >= 0.0) return weideman()(z);
  return 2.0 * std::exp(-z * z) - weideman()(-z);
}

cplx erf_complex(cplx z) {
  if (!(std::abs(z) < 30.0)) throw DomainError("erf_complex: |z| >= 30 (overflow region)");
  const bool neg_re = z.real() < 0.0;
  const bool neg_im = z.imag() < 0.0;
  cplx r = erf_first_quadrant(cplx(std::abs(z.real()), std::abs(z.imag())));
  if (neg_im != neg_re) r = std::conj(r);
  if (neg_re) r = -r;
  if (z.real() == 0.0) r.real(0.0);
  if (z.imag() == 0.0) r.imag(0.0);
  return r;
}

cplx scaled_erf_difference(cplx p, cplx q) {
  const cplx eq = std::exp(q * q);
  auto term = [&](double s) -> cplx {
    const cplx z = q + s * p;
    if (std::abs(z) < 2.0) return eq * erf_maclaurin(z);
    const cplx e = std::exp(-p * p - 2.0 * s * p * q);
    const cplx iz(-z.imag(), z.real());
    if (z.real() >= 0.0) return eq - e * faddeeva(iz);
    return -eq + e * faddeeva(-iz);
  };
  return term(1.0) - term(-1.0);
}

double sine_integral(double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) return x;
    return std::copysign(0.5 * std::numbers::pi, x);
  }
  const double t = std::abs(x);
  double si = 0.0;
  if (t <= 4.0) {
    const double t2 = t * t;
    double term = t;
    si = t;
    for (int n = 1; n < 60; ++n) {
      term *= -t2 / ((2.0 * n) * (2.0 * n + 1.0));
      const double add = term / (2.0 * n + 1.0);
      si += add;
      if (std::abs(add) < 1e-17 * std::abs(si)) break;
    }
  } else {
    // Continued fraction for E1(i t); Si = pi/2 + Im(E1(i t)).
    constexpr double tiny = 1e-300;
    cplx b(1.0, t);
    cplx c(1.0 / tiny, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    int i = 1;
    for (; i < 100000; ++i) {
      const double a = -static_cast<double>(i) * i;
      b += 2.0;
      d = 1.0 / (a * d + b);
      c = b + a / c;
      const cplx del = c * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
    }
    if (i >= 100000) throw ConvergenceError("sine_integral: continued fraction did not converge");
    h *= cplx(std::cos(t), -std::sin(t));
    si = 0.5 * std::numbers::pi + h.imag();
  }
  return x < 0.0 ? -si : si;
}

cplx owen_t(cplx a, cplx h) {
  if (std::abs(h) == 0.0) return 0.0;
  // Distance from the poles t = +/- i to the segment 0 -> h.
  auto seg_dist = [&](cplx pole) {
    const double hh = std::norm(h);
    double s = (std::conj(h) * pole).real() / hh;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(pole - s * h);
  };
  if (std::min(seg_dist(cplx(0, 1)), seg_dist(cplx(0, -1))) < 0.1)
    throw DomainError("owen_t: integration segment passes within 0.1 of a pole at +/- i");
  const cplx a2 = a * a;
  auto integrand = [&](double s) -> cplx {
    const cplx t = s * h;
    const cplx u = 1.0 + t * t;
    return std::exp(-0.5 * a2 * u) / u;
  };
  double err = 0.0;
  const cplx r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 20,
                                                                               1e-13, &err);
  const double scale = std::max(std::abs(r), 1e-300);
  if (!(err <= 1e-9 * scale || err < 1e-15)) throw ConvergenceError("owen_t: quadrature did not converge");
  return r * h / (2.0 * std::numbers::pi);
}

cplx owen_t_limit(cplx a, int sign) {
  const cplx a2 = a * a;
  if (!(a2.real() > 0.0)) throw DomainError("owen_t_limit: requires Re(a^2) > 0");
  // Principal root with Re > 0 makes the limit analytic in a.
  cplx r = std::sqrt(a2);
  const cplx v = 0.25 * (1.0 - erf_complex(r / std::numbers::sqrt2));
  return sign >= 0 ? v : -v;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_fn: pole at a non-positive integer");
  return std::tgamma(x);
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  return std::cyl_bessel_k(nu, x);
}

void GammaGammaParams::validate() const {
  if (!(alpha > 0.0 && beta > 0.0)) throw ValidationError("gamma-gamma: alpha and beta must be positive");
}

double gamma_gamma_pdf(double x, const GammaGammaParams& p) {
  p.validate();
  if (x <= 0.0) return 0.0;
  const double ab = p.alpha * p.beta;
  const double logc = std::log(2.0) + 0.5 * (p.alpha + p.beta) * std::log(ab) - std::lgamma(p.alpha) -
                      std::lgamma(p.beta) + (0.5 * (p.alpha + p.beta) - 1.0) * std::log(x);
  return std::exp(logc) * std::cyl_bessel_k(p.alpha - p.beta, 2.0 * std::sqrt(ab * x));
}

double gamma_gamma_cdf_series(double x, const GammaGammaParams& p) {
  p.validate();
  if (x <= 0.0) return 0.0;
  const double d = p.beta - p.alpha;
  if (std::abs(d - std::round(d)) < 1e-4)
    throw DomainError("gamma_gamma_cdf_series: alpha - beta is (nearly) an integer");
  const double z = p.alpha * p.beta * x;
  const double lz = std::log(z);
  const double lnorm = std::lgamma(p.alpha) + std::lgamma(p.beta);
  // Each family: pi/sin(pi (other - self)) * z^(self+k) / (k! Gamma(1 + self - other + k) (self + k)).
  auto family = [&](double self, double other, double& max_abs) {
    const double s = std::sin(std::numbers::pi * (other - self));
    int sg = 1;
    const double lg = boost::math::lgamma(1.0 + self - other, &sg);
    double t = (s > 0.0 ? 1 : -1) * sg *
               std::exp(std::log(std::numbers::pi / std::abs(s)) - lnorm + self * lz - lg - std::log(self));
    double sum = t;
    max_abs = std::max(max_abs, std::abs(t));
    for (int k = 0; k < 5000; ++k) {
      t *= z / ((k + 1.0) * (1.0 + self - other + k)) * (self + k) / (self + k + 1.0);
      sum += t;
      max_abs = std::max(max_abs, std::abs(t));
      if (k > z && std::abs(t) < 1e-17 * std::max(std::abs(sum), 1e-300)) break;
    }
    return sum;
  };
  double max_abs = 0.0;
  const double f = family(p.alpha, p.beta, max_abs) + family(p.beta, p.alpha, max_abs);
  if (!(f > 0.0) || max_abs > 1e3 * f)
    throw DomainError("gamma_gamma_cdf_series: catastrophic cancellation");
  return std::min(1.0, f);
}

double gamma_gamma_cdf_integral(double x, const GammaGammaParams& p) {
  p.validate();
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  // X = Y * Z with Y ~ Gamma(alpha, 1/alpha), Z ~ Gamma(beta, 1/beta); integrate over u = ln y.
  const double a = p.alpha;
  const double b = p.beta;
  auto integrand = [&](double u) -> double {
    const double y = std::exp(u);
    if (y == 0.0 || !std::isfinite(y)) return 0.0;
    const double fy = a * boost::math::gamma_p_derivative(a, a * y) * y;
    if (fy == 0.0) return 0.0;
    return fy * boost::math::gamma_p(b, b * x / y);
  };
  const double sd = 1.0 / std::sqrt(a);
  const double lo = std::min(-40.0 / a - 10.0 * sd, std::log(x) - 40.0 / b - 10.0);
  const double hi = 10.0 + 20.0 * sd;
  double err = 0.0;
  const double r = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 25, 1e-13,
                                                                                 &err);
  return std::clamp(r, 0.0, 1.0);
}

double gamma_gamma_cdf(double x, const GammaGammaParams& p) {
  p.validate();
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  try {
    return gamma_gamma_cdf_series(x, p);
  } catch (const DomainError&) {
    return gamma_gamma_cdf_integral(x, p);
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<McEstimate> gamma_gamma_cdf_mc(const std::vector<double>& xs, const GammaGammaParams& p,
                                           std::uint64_t n, std::uint64_t seed, unsigned jobs) {
  p.validate();
  constexpr std::uint64_t chunk = 1u << 18;
  const std::uint64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<std::uint64_t>> counts(nchunks, std::vector<std::uint64_t>(xs.size(), 0));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(c + 1)));
      std::gamma_distribution<double> gy(p.alpha, 1.0 / p.alpha);
      std::gamma_distribution<double> gz(p.beta, 1.0 / p.beta);
      const std::uint64_t m = std::min(chunk, n - c * chunk);
      auto& cnt = counts[c];
      for (std::uint64_t i = 0; i < m; ++i) {
        const double v = gy(rng) * gz(rng);
        for (std::size_t j = 0; j < xs.size(); ++j)
          if (v <= xs[j]) ++cnt[j];
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<McEstimate> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::uint64_t total = 0;
    for (const auto& c : counts) total += c[j];
    const double ph = static_cast<double>(total) / static_cast<double>(n);
    out[j].p = ph;
    out[j].se = std::sqrt(std::max(ph * (1.0 - ph), 1.0 / static_cast<double>(n)) / static_cast<double>(n));
  }
  return out;
}

}  // namespace fsoirs
