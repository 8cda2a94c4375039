// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "fso_irs_lab/errors.hpp"
#include "fso_irs_lab/geometry.hpp"
#include "fso_irs_lab/special_functions.hpp"

using namespace fsoirs;
using doctest::Approx;

namespace {

// Reference values below were produced with mpmath at 30 digits.
bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("special_functions") {
  TEST_CASE("erf_complex reference values") {
    CHECK(std::abs(erf_complex({0.0, 0.0})) == 0.0);
    CHECK(close(erf_complex({1.0, 0.0}), {0.842700792949714869, 0.0}, 1e-13));
    CHECK(close(erf_complex({0.0, 1.0}), {0.0, 1.650425758797542876}, 1e-13));
    CHECK(close(erf_complex({1.0, 2.0}), {-0.536643565778565034, -5.049143703447034670}, 1e-12));
    CHECK(close(erf_complex({3.0, -0.5}), {1.000028065361476405, 2.628489722258823e-07}, 1e-12));
    CHECK_THROWS(erf_complex({40.0, 0.0}));
  }

  TEST_CASE("faddeeva against erf") {
    const cplx z{0.4, 1.1};
    const cplx j{0.0, 1.0};
    CHECK(close(faddeeva(z), std::exp(-z * z) * (1.0 - erf_complex(-j * z)), 1e-12));
  }

  TEST_CASE("scaled erf difference matches the direct form") {
    const cplx p{1.3, 0.4};
    const cplx q = cplx{0.0, 0.6} / p * std::abs(p);
    const cplx direct = std::exp(q * q) * (erf_complex(q + p) - erf_complex(q - p));
    CHECK(close(scaled_erf_difference(p, q), direct, 1e-11));
  }

  TEST_CASE("sine integral") {
    CHECK(sine_integral(0.0) == 0.0);
    CHECK(sine_integral(1.0) == Approx(0.946083070367183015).epsilon(1e-12));
    CHECK(sine_integral(-1.0) == Approx(-0.946083070367183015).epsilon(1e-12));
    CHECK(std::abs(sine_integral(1e4) - kPi / 2.0) < 1e-3);
  }

  TEST_CASE("Owen T") {
    CHECK(std::abs(owen_t({1.3, 0.0}, {0.0, 0.0})) == 0.0);
    CHECK(owen_t({0.0, 0.0}, {0.8, 0.0}).real() == Approx(std::atan(0.8) / (2.0 * kPi)).epsilon(1e-12));
    CHECK(owen_t({0.5, 0.0}, {0.7, 0.0}).real() == Approx(0.0842385002284363680).epsilon(1e-10));
    CHECK(owen_t({1.2, 0.0}, {-2.1, 0.0}).real() == Approx(-0.0573882732502046385).epsilon(1e-10));
    CHECK(close(owen_t({0.8, 0.3}, {0.4, -0.2}), {0.0403188595657520865, -0.0307559431581403520}, 1e-10));
    CHECK(owen_t({-0.9, 0.0}, {0.6, 0.0}).real() == Approx(owen_t({0.9, 0.0}, {0.6, 0.0}).real()));
    const double a = 0.9;
    CHECK(owen_t_limit({a, 0.0}, 1).real() == Approx(0.5 * (1.0 - normal_cdf(a))).epsilon(1e-10));
    CHECK(owen_t_limit({a, 0.0}, -1).real() == Approx(-0.5 * (1.0 - normal_cdf(a))).epsilon(1e-10));
  }

  TEST_CASE("normal cdf, gamma, Bessel K") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.5) == Approx(0.933192798731141934).epsilon(1e-12));
    CHECK(gamma_fn(5.0) == Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(0.3) == Approx(2.991568987687590745).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
    CHECK(bessel_k(0.5, 2.0) == Approx(std::sqrt(kPi / 4.0) * std::exp(-2.0)).epsilon(1e-12));
    CHECK(bessel_k(1.3, 0.7) == Approx(1.423261342314432875).epsilon(1e-10));
    CHECK(bessel_k(2.5, 4.0) == Approx(0.0222378976171781035).epsilon(1e-10));
  }

  TEST_CASE("Gamma-Gamma CDF reference values") {
    CHECK(gamma_gamma_cdf(0.0, {2.0, 3.0}) == 0.0);
    // Product of two unit exponentials.
    const double x = 0.5;
    CHECK(gamma_gamma_cdf(x, {1.0, 1.0}) == Approx(0.555657476367763959).epsilon(1e-9));
    CHECK(gamma_gamma_cdf(x, {1.0, 1.0}) ==
          Approx(1.0 - 2.0 * std::sqrt(x) * bessel_k(1.0, 2.0 * std::sqrt(x))).epsilon(1e-9));
    // mpmath quadrature of the Gamma-product integral.
    CHECK(gamma_gamma_cdf(0.3, {4.2, 1.4}) == Approx(0.244861340877980682).epsilon(1e-8));
    CHECK(gamma_gamma_cdf(1.0, {2.5, 2.2}) == Approx(0.649486514703472567).epsilon(1e-8));
    CHECK(gamma_gamma_cdf_integral(1.0, {2.5, 2.2}) == Approx(0.649486514703472567).epsilon(1e-8));
    CHECK(gamma_gamma_cdf(1e6, {2.5, 2.2}) == Approx(1.0));
    CHECK(gamma_gamma_cdf(-1.0, {2.0, 3.0}) == 0.0);
    CHECK_THROWS_AS((GammaGammaParams{0.0, 1.0}).validate(), ValidationError);
  }

  TEST_CASE("Gamma-Gamma series agrees with the integral form") {
    int compared = 0;
    for (auto p : {GammaGammaParams{4.3997, 2.5717}, GammaGammaParams{6.2462, 4.6825}, GammaGammaParams{1.7, 3.3}})
      for (double x : {1e-3, 0.05, 0.4, 1.0}) {
        CAPTURE(p.alpha);
        CAPTURE(x);
        const double ref = gamma_gamma_cdf_integral(x, p);
        CHECK(gamma_gamma_cdf(x, p) == Approx(ref).epsilon(1e-8));
        // The series refuses points where its alternating terms cancel.
        double series = 0.0;
        try {
          series = gamma_gamma_cdf_series(x, p);
        } catch (const DomainError&) {
          continue;
        }
        CHECK(series == Approx(ref).epsilon(1e-8));
        ++compared;
      }
    CHECK(compared >= 6);
  }

  TEST_CASE("Gamma-Gamma pdf integrates to the cdf") {
    const GammaGammaParams p{3.1, 1.9};
    const int n = 4000;
    const double hi = 0.8;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = (i + 0.5) * hi / n;
      sum += gamma_gamma_pdf(x, p) * hi / n;
    }
    CHECK(sum == Approx(gamma_gamma_cdf(hi, p)).epsilon(1e-4));
  }

  TEST_CASE("Monte Carlo is reproducible and thread-count independent") {
    const GammaGammaParams p{2.0, 3.0};
    const std::vector<double> xs{0.3, 1.0};
    const auto a = gamma_gamma_cdf_mc(xs, p, 200000, 7, 1);
    const auto b = gamma_gamma_cdf_mc(xs, p, 200000, 7, 3);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(a[i].p == b[i].p);
      CHECK(std::abs(a[i].p - gamma_gamma_cdf(xs[i], p)) < 4.0 * a[i].se);
    }
  }
}
