// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "fso_irs_lab/gml_models.hpp"
#include "fso_irs_lab/wave_optics_oracle.hpp"

using namespace fsoirs;
using doctest::Approx;

namespace {

OpticalSetup table1_setup(Profile p, double L, Technology t = Technology::metamaterial) {
  IrsConfig irs;
  irs.technology = t;
  irs.profile = p;
  irs.Lx = irs.Ly = L;
  irs.f = 250.0;
  return make_setup(link_at_x(Ellipse{}, 200.0), BeamParams{}, irs);
}

OpticalSetup desk_setup(Profile p, double x = 1.0, double L = 0.01) {
  IrsConfig irs;
  irs.profile = p;
  irs.Lx = irs.Ly = L;
  irs.f = 2.5;
  return make_setup(link_at_x(Ellipse{8.0, 10.0}, x), BeamParams{10e-6, 1e-3}, irs);
}

}  // namespace

TEST_SUITE("wave_optics_oracle") {
  TEST_CASE("Gaussian aperture integral") {
    // mpmath quadrature of the defining integral.
    const cplx F = gaussian_aperture_integral({2.0, 3.0}, 1.5, 0.7);
    CHECK(F.real() == Approx(0.8892212890072998551).epsilon(1e-12));
    CHECK(F.imag() == Approx(-0.3568236430777954953).epsilon(1e-12));
    // Large aperture limit sqrt(pi/b) exp(-c^2/(4b)).
    const cplx b{0.5, 0.2};
    const cplx lim = std::sqrt(kPi / b) * std::exp(-0.09 / (4.0 * b));
    CHECK(std::abs(gaussian_aperture_integral(b, 200.0, 0.3) - lim) < 1e-12);
  }

  TEST_CASE("relay GML matches the erf product") {
    const BeamParams b;
    const LensConfig lens{0.1};
    // mpmath erf(sqrt(pi/2) a / w(d))^2.
    CHECK(numerical_relay_gml(100.0, b, lens) == Approx(1.0).epsilon(1e-9));
    CHECK(numerical_relay_gml(500.0, b, lens) == Approx(0.8601656811314689).epsilon(1e-7));
    CHECK(numerical_relay_gml(1000.0, b, lens) == Approx(0.3979573850241318).epsilon(1e-7));
    CHECK(numerical_relay_gml(1000.0, b, lens, LensMode::disc) > numerical_relay_gml(1000.0, b, lens));
  }

  TEST_CASE("saturated GML of large surfaces") {
    const LensConfig lens{0.1};
    CHECK(numerical_gml(table1_setup(Profile::LP, 1.0), lens) == Approx(0.291769).epsilon(2e-5));
    CHECK(numerical_gml(table1_setup(Profile::QP, 1.0), lens) == Approx(0.665633).epsilon(2e-5));
    CHECK(numerical_gml(table1_setup(Profile::FP, 1.0), lens) == Approx(0.998604).epsilon(2e-5));
    CHECK(numerical_gml(table1_setup(Profile::LP, 1.0, Technology::mirror), lens) == Approx(0.397957).epsilon(2e-5));
  }

  TEST_CASE("small and mid-size surfaces") {
    const LensConfig lens{0.1};
    CHECK(numerical_gml(table1_setup(Profile::LP, 1e-3), lens) == Approx(1.3584e-6).epsilon(1e-3));
    CHECK(numerical_gml(table1_setup(Profile::LP, 0.03), lens) == Approx(0.0132722).epsilon(1e-4));
    CHECK(numerical_gml(table1_setup(Profile::LP, 0.07), lens) == Approx(0.0707097).epsilon(1e-4));
  }

  TEST_CASE("disc lens collects at least the inscribed power") {
    const LensConfig lens{0.1};
    OracleOptions disc;
    disc.lens_mode = LensMode::disc;
    const auto s = table1_setup(Profile::LP, 1.0);
    const double d = numerical_gml(s, lens, disc);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
    CHECK(d == Approx(numerical_gml(s, lens)).epsilon(0.05));
  }

  TEST_CASE("quadrature and erf-form fields agree at desk scale") {
    for (Profile p : {Profile::LP, Profile::QP}) {
      const auto s = desk_setup(p);
      for (double xp : {0.0, 0.002, -0.003}) {
        const cplx eq = reflected_field_quadrature(xp, 0.001, s);
        const cplx ee = reflected_field_erf_form(xp, 0.001, s);
        CAPTURE(xp);
        CHECK(std::abs(eq - ee) <= 0.01 * std::abs(ee));
      }
    }
  }

  TEST_CASE("FP intensity against quadrature") {
    const auto s = desk_setup(Profile::FP);
    const double iq = std::norm(reflected_field_quadrature(0.0, 0.001, s)) / (2.0 * s.constants.eta);
    CHECK(fp_intensity(0.0, 0.001, s).value == Approx(iq).epsilon(0.02));
  }

  TEST_CASE("incident field is a Gaussian footprint") {
    const auto s = table1_setup(Profile::LP, 1.0);
    const auto fp = incident_footprint(s.geometry, s.beam);
    const double c0 = std::abs(incident_field(0.0, 0.0, s.geometry, s.beam));
    const double cy = std::abs(incident_field(0.0, fp.w_in_y, s.geometry, s.beam));
    CHECK(cy / c0 == Approx(std::exp(-1.0)).epsilon(1e-6));
  }

  TEST_CASE("field map shape") {
    const auto s = desk_setup(Profile::LP);
    const auto m = field_map(s, {-0.001, 0.0, 0.001}, {0.0, 0.002});
    CHECK(m.size() == 6);
    for (const auto& f : m) CHECK(f.I == Approx(std::norm(f.E) / (2.0 * s.constants.eta)));
  }
}
