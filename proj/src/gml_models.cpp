// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/gml_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

namespace {

constexpr cplx kJ(0.0, 1.0);
constexpr double kPreRatio = 0.1;

std::string ratio_note(const char* what, double lhs, double rhs) {
  std::ostringstream os;
  os << what << " (" << lhs << " vs " << rhs << ")";
  return os.str();
}

void require_small(std::vector<std::string>& w, const char* what, double lhs, double rhs) {
  if (!(lhs <= kPreRatio * rhs)) w.push_back(ratio_note(what, lhs, rhs));
}

GmlEvaluation finish(GmlEvaluation e) {
  if (!std::isfinite(e.raw)) throw DomainError("gml: non-finite closed-form value for " + e.formula);
  if (e.raw > 1.0) e.warnings.push_back("closed form exceeds 1 outside its validity range; clamped");
  e.value = std::clamp(e.raw, 0.0, 1.0);
  return e;
}

// u Si(u) + cos(u) - 1 with a series near zero to avoid cancellation.
double si_bracket(double u) {
  if (u < 0.1) {
    const double u2 = u * u;
    return u2 * (0.5 - u2 / 72.0 + u2 * u2 / 3600.0);
  }
  return u * sine_integral(u) + std::cos(u) - 1.0;
}

double sat_erf(double a, double w) { return std::erf(std::sqrt(0.5 * kPi) * a / w); }

Design mirror_design() { return {Technology::mirror, Profile::LP, 0.0}; }

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::quadratic: return "quadratic";
    case Regime::linear: return "linear";
    case Regime::saturation: return "saturation";
  }
  return "?";
}

std::string design_label(const Design& d) { return d.is_mirror() ? std::string("mir") : to_string(d.profile); }

LinkGeometry effective_geometry(const LinkGeometry& g, const Design& d) {
  if (!d.is_mirror()) return g;
  LinkGeometry m = g;
  m.theta_i = g.theta_mir;
  m.theta_r = g.theta_mir;
  return m;
}

double g_ls(const LinkGeometry& g, const BeamParams& beam) {
  return 2.0 * kPi * beam.w0 * beam.w0 / (4.0 * kPi * g.d1 * g.d1);
}

double g_pd(const LinkGeometry& g, const LensConfig& lens) { return kPi * lens.a * lens.a / (4.0 * kPi * g.d2 * g.d2); }

std::pair<cplx, cplx> aperture_b(const LinkGeometry& geo, const BeamParams& beam, const Design& d) {
  const LinkGeometry g = effective_geometry(geo, d);
  const double w = beamwidth(g.d1, beam);
  const double k = beam.k();
  const double si2 = g.sin_i() * g.sin_i();
  const double sr2 = g.sin_r() * g.sin_r();
  const Profile p = d.is_mirror() ? Profile::LP : d.profile;
  switch (p) {
    case Profile::LP: {
      const double R = curvature_radius(g.d1, beam);
      return {si2 / (w * w) + kJ * k * (si2 / (2.0 * R) + sr2 / (2.0 * g.d2)),
              1.0 / (w * w) + kJ * k * (1.0 / (2.0 * R) + 1.0 / (2.0 * g.d2))};
    }
    case Profile::QP:
      if (!(d.f > 0.0)) throw ValidationError("gml: QP profile requires a positive focal parameter f");
      return {si2 / (w * w) + kJ * k * sr2 / (4.0 * d.f), 1.0 / (w * w) + kJ * k / (4.0 * d.f)};
    case Profile::FP: return {cplx(si2 / (w * w), 0.0), cplx(1.0 / (w * w), 0.0)};
  }
  return {};
}

OwenTAxis owen_t_axis(cplx b, double L) {
  OwenTAxis ax;
  ax.b = b;
  ax.B = b.real();
  if (!(ax.B > 0.0)) throw DomainError("owen_t_axis: Re{b} must be positive");
  ax.b_tilde = std::norm(b) / (2.0 * ax.B);
  const cplx sb = std::sqrt(b);
  ax.zeta1 = sb * L / 2.0;
  ax.zeta2 = kJ * std::conj(sb) / (2.0 * std::sqrt(ax.B));
  ax.a_m = std::sqrt(2.0) * ax.zeta1 / std::sqrt(1.0 + 2.0 * ax.zeta2 * ax.zeta2);
  ax.radicand = 1.0 + 2.0 * ax.zeta2 * ax.zeta2 + 2.0 * std::conj(ax.zeta2) * std::conj(ax.zeta2);
  const double scale = 1.0 + 2.0 * std::norm(ax.zeta2);
  ax.c2_infinite = std::abs(ax.radicand) <= 1e-12 * scale;
  if (!ax.c2_infinite) {
    const cplx num = 1.0 + 2.0 * ax.zeta2 * ax.zeta2 + 2.0 * (ax.zeta1 / std::conj(ax.zeta1)) * std::norm(ax.zeta2);
    ax.c2 = -std::conj(ax.zeta1) * num / (ax.zeta1 * std::sqrt(ax.radicand));
  }
  return ax;
}

OwenTCoefficients owen_t_coefficients(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs) {
  const auto b = aperture_b(g, beam, Design::from(irs));
  return {owen_t_axis(b.first, irs.Lx), owen_t_axis(b.second, irs.Ly)};
}

SaturationWidths receive_widths(const LinkGeometry& geo, const BeamParams& beam, const Design& d) {
  const LinkGeometry g = effective_geometry(geo, d);
  const double w = beamwidth(g.d1, beam);
  const double k = beam.k();
  const auto b = aperture_b(geo, beam, d);
  const double btx = std::norm(b.first) / (2.0 * b.first.real());
  const double bty = std::norm(b.second) / (2.0 * b.second.real());
  SaturationWidths s;
  s.lambda1 = 2.0 * g.d2 / (k * w * w);
  s.lambda2 = g.d2 / curvature_radius(g.d1, beam);
  s.w_rx_x = 2.0 * std::sqrt(2.0) * g.d2 * std::sqrt(btx) / (k * std::abs(g.sin_r()));
  s.w_rx_y = 2.0 * std::sqrt(2.0) * g.d2 * std::sqrt(bty) / k;
  return s;
}

GmlEvaluation g1_tilde(const LinkGeometry& geo, const BeamParams& beam, const IrsConfig& irs,
                       const LensConfig& lens) {
  irs.validate();
  lens.validate();
  const Design d = Design::from(irs);
  const LinkGeometry g = effective_geometry(geo, d);
  const double k = beam.k();
  const double w = beamwidth(g.d1, beam);
  const double si = std::abs(g.sin_i());
  const double sr = std::abs(g.sin_r());
  GmlEvaluation e;
  e.formula = "G1_tilde";
  e.regime = Regime::quadratic;
  e.w_rx_x = 2.0 * g.d2 / (k * sr * irs.Lx);
  e.w_rx_y = 2.0 * g.d2 / (k * irs.Ly);
  const double C1 = 8.0 * g.d2 * g.d2 * beam.lambda * beam.lambda * si /
                    (std::pow(kPi, 6) * lens.a * lens.a * w * w * sr);
  const double ux = lens.a * std::sqrt(kPi) / e.w_rx_x;
  const double uy = lens.a * std::sqrt(kPi) / e.w_rx_y;
  e.raw = C1 * si_bracket(ux) * si_bracket(uy);

  const Footprint fp = incident_footprint(g, beam);
  double lim = 0.0;
  if (d.is_mirror() || d.profile == Profile::LP)
    lim = std::sqrt(2.0 * g.d1 * g.d2 / (k * g.ellipse.d3));
  else if (d.profile == Profile::QP)
    lim = std::sqrt(4.0 * d.f / k);
  else
    lim = std::numeric_limits<double>::infinity();
  require_small(e.warnings, "L_x not small against the incident width / phase limit", irs.Lx, std::min(fp.w_in_x, lim));
  require_small(e.warnings, "L_y not small against the incident width / phase limit", irs.Ly, std::min(fp.w_in_y, lim));
  return finish(e);
}

namespace {

GmlEvaluation quadratic_law(const LinkGeometry& g, const BeamParams& beam, double area, const LensConfig& lens,
                            double sine_product, const char* id) {
  lens.validate();
  if (!(area > 0.0)) throw ValidationError("gml: IRS area must be positive");
  const double k = beam.k();
  const double L = std::sqrt(area);
  GmlEvaluation e;
  e.formula = id;
  e.regime = Regime::quadratic;
  e.w_rx_x = 2.0 * g.d2 / (k * std::abs(g.sin_r()) * L);
  e.w_rx_y = 2.0 * g.d2 / (k * L);
  const double l2 = beam.lambda * beam.lambda;
  e.raw = 16.0 * kPi * kPi * area * area * sine_product / (l2 * l2) * g_ls(g, beam) * g_pd(g, lens);
  require_small(e.warnings, "lens area not small against the g1 receive footprint", lens.area(),
                kPi * e.w_rx_x * e.w_rx_y);
  require_small(e.warnings, "d1 not large against the Rayleigh range", beam.zR(), g.d1);
  return e;
}

GmlEvaluation linear_law(const LinkGeometry& g, const BeamParams& beam, double area, double sine, const char* id) {
  if (!(area > 0.0)) throw ValidationError("gml: IRS area must be positive");
  GmlEvaluation e;
  e.formula = id;
  e.regime = Regime::linear;
  e.raw = 4.0 * kPi * area * sine / (beam.lambda * beam.lambda) * g_ls(g, beam);
  const Footprint fp = incident_footprint(g, beam);
  const double L = std::sqrt(area);
  require_small(e.warnings, "L_x not small against w_in,x", L, fp.w_in_x);
  require_small(e.warnings, "L_y not small against w_in,y", L, fp.w_in_y);
  return e;
}

}  // namespace

GmlEvaluation g1(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs, const LensConfig& lens) {
  irs.validate();
  GmlEvaluation e = quadratic_law(g, beam, irs.area(), lens, std::abs(g.sin_r() * g.sin_i()), "G1");
  e.w_rx_x = 2.0 * g.d2 / (beam.k() * std::abs(g.sin_r()) * irs.Lx);
  e.w_rx_y = 2.0 * g.d2 / (beam.k() * irs.Ly);
  return finish(e);
}

GmlEvaluation g1_mirror(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs, const LensConfig& lens) {
  irs.validate();
  const LinkGeometry m = effective_geometry(g, mirror_design());
  const double s = std::sin(g.theta_mir);
  GmlEvaluation e = quadratic_law(m, beam, irs.area(), lens, s * s, "G1_mir");
  const double k = beam.k();
  const Footprint fp = incident_footprint(m, beam);
  require_small(e.warnings, "mirror area not small against min{A_in, 2 d1 d2/(k d3)}", irs.area(),
                std::min(fp.area, 2.0 * g.d1 * g.d2 / (k * g.ellipse.d3)));
  return finish(e);
}

GmlEvaluation g2_tilde(const LinkGeometry& geo, const BeamParams& beam, const IrsConfig& irs,
                       const LensConfig& lens) {
  irs.validate();
  lens.validate();
  const OwenTCoefficients c = owen_t_coefficients(geo, beam, irs);
  auto bracket = [](const OwenTAxis& ax) {
    cplx t;
    if (ax.c2_infinite)
      t = owen_t_limit(ax.a_m, -1) + owen_t_limit(std::conj(ax.a_m), -1);
    else
      t = owen_t(ax.a_m, ax.c2) + owen_t(std::conj(ax.a_m), std::conj(ax.c2));
    return 8.0 * t + 4.0;
  };
  const cplx v = bracket(c.x) * bracket(c.y) / 16.0;
  GmlEvaluation e;
  e.formula = "G2_tilde";
  e.regime = Regime::linear;
  const SaturationWidths sw = receive_widths(geo, beam, Design::from(irs));
  e.w_rx_x = sw.w_rx_x;
  e.w_rx_y = sw.w_rx_y;
  if (std::abs(v.imag()) > 1e-9 * std::max(std::abs(v.real()), 1e-300))
    e.warnings.push_back("G2_tilde has a residual imaginary part");
  e.raw = v.real();
  if (!(lens.a >= 10.0 * std::min(e.w_rx_x, e.w_rx_y)))
    e.warnings.push_back(ratio_note("lens radius not large against the g2 receive width", lens.a,
                                    std::min(e.w_rx_x, e.w_rx_y)));
  return finish(e);
}

GmlEvaluation g2_bar(const LinkGeometry& geo, const BeamParams& beam, const IrsConfig& irs) {
  irs.validate();
  const Design d = Design::from(irs);
  const LinkGeometry g = effective_geometry(geo, d);
  const double w = beamwidth(g.d1, beam);
  GmlEvaluation e;
  e.formula = "G2_bar";
  e.regime = Regime::linear;
  const double h = std::sqrt(0.5);
  e.raw = std::erf(h * irs.Lx * std::abs(g.sin_i()) / w) * std::erf(h * irs.Ly / w);
  const SaturationWidths sw = receive_widths(geo, beam, d);
  e.w_rx_x = sw.w_rx_x;
  e.w_rx_y = sw.w_rx_y;
  require_small(e.warnings, "IRS area not small against A_in", irs.area(), incident_footprint(g, beam).area);
  return finish(e);
}

GmlEvaluation g2(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs) {
  irs.validate();
  GmlEvaluation e = linear_law(g, beam, irs.area(), std::abs(g.sin_i()), "G2");
  const SaturationWidths sw = receive_widths(g, beam, Design::from(irs));
  e.w_rx_x = sw.w_rx_x;
  e.w_rx_y = sw.w_rx_y;
  return finish(e);
}

GmlEvaluation g2_mirror(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs) {
  irs.validate();
  const LinkGeometry m = effective_geometry(g, mirror_design());
  GmlEvaluation e = linear_law(m, beam, irs.area(), std::abs(std::sin(g.theta_mir)), "G2_mir");
  const SaturationWidths sw = receive_widths(g, beam, mirror_design());
  e.w_rx_x = sw.w_rx_x;
  e.w_rx_y = sw.w_rx_y;
  return finish(e);
}

GmlEvaluation g3(const Design& d, const LinkGeometry& geo, const BeamParams& beam, const LensConfig& lens,
                 double irs_area) {
  lens.validate();
  const SaturationWidths sw = receive_widths(geo, beam, d);
  GmlEvaluation e;
  e.formula = "G3_" + design_label(d);
  e.regime = Regime::saturation;
  e.w_rx_x = sw.w_rx_x;
  e.w_rx_y = sw.w_rx_y;
  e.raw = sat_erf(lens.a, sw.w_rx_x) * sat_erf(lens.a, sw.w_rx_y);
  if (irs_area > 0.0) {
    const double A_in = incident_footprint(effective_geometry(geo, d), beam).area;
    if (!(irs_area >= 10.0 * A_in)) e.warnings.push_back(ratio_note("IRS area not large against A_in", irs_area, A_in));
  }
  return finish(e);
}

GmlEvaluation g1_for(const Design& d, const LinkGeometry& g, const BeamParams& beam, double irs_area,
                     const LensConfig& lens) {
  IrsConfig irs;
  irs.technology = d.technology;
  irs.profile = d.profile;
  irs.f = d.f;
  irs.Lx = irs.Ly = std::sqrt(irs_area);
  return d.is_mirror() ? g1_mirror(g, beam, irs, lens) : g1(g, beam, irs, lens);
}

GmlEvaluation g2_for(const Design& d, const LinkGeometry& g, const BeamParams& beam, double irs_area) {
  IrsConfig irs;
  irs.technology = d.technology;
  irs.profile = d.profile;
  irs.f = d.f;
  irs.Lx = irs.Ly = std::sqrt(irs_area);
  return d.is_mirror() ? g2_mirror(g, beam, irs) : g2(g, beam, irs);
}

RegimeBoundaries regime_boundaries(const Design& d, const LinkGeometry& geo, const BeamParams& beam,
                                   const LensConfig& lens) {
  lens.validate();
  const LinkGeometry g = effective_geometry(geo, d);
  const double si = std::abs(g.sin_i());
  const double sr = std::abs(g.sin_r());
  const double w = beamwidth(g.d1, beam);
  const double a = lens.a;
  RegimeBoundaries rb;
  rb.G3 = g3(d, geo, beam, lens).raw;
  rb.S1 = beam.lambda * beam.lambda * g.d2 * g.d2 / (kPi * a * a * sr);
  rb.S2 = kPi * rb.G3 * w * w / (2.0 * si);
  rb.S3 = std::sqrt(rb.G3) * beam.lambda * g.d2 * w / (a * std::sqrt(2.0 * si * sr));
  rb.branch_threshold = 2.0 * g.d2 * g.d2 * beam.w0 * beam.w0 * si / (g.d1 * g.d1 * a * a * sr);
  rb.three_regime = rb.G3 >= rb.branch_threshold;
  return rb;
}

GmlEvaluation gml_piecewise(const Design& d, const LinkGeometry& g, const BeamParams& beam, double irs_area,
                            const LensConfig& lens) {
  if (!(irs_area > 0.0)) throw ValidationError("gml_piecewise: IRS area must be positive");
  const RegimeBoundaries rb = regime_boundaries(d, g, beam, lens);
  if (rb.three_regime) {
    if (irs_area < rb.S1) return g1_for(d, g, beam, irs_area, lens);
    if (irs_area <= rb.S2) return g2_for(d, g, beam, irs_area);
    return g3(d, g, beam, lens, irs_area);
  }
  if (irs_area <= rb.S3) return g1_for(d, g, beam, irs_area, lens);
  return g3(d, g, beam, lens, irs_area);
}

GmlEvaluation gml_piecewise(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs,
                            const LensConfig& lens) {
  irs.validate();
  return gml_piecewise(Design::from(irs), g, beam, irs.area(), lens);
}

double relay_gml(double d, const BeamParams& beam, const LensConfig& lens) {
  if (!(d > 0.0)) throw ValidationError("relay_gml: distance must be positive");
  lens.validate();
  const double e = sat_erf(lens.a, beamwidth(d, beam));
  return e * e;
}

std::optional<double> qp_equivalent_focal(const LinkGeometry& g, const BeamParams& beam) {
  const double si = g.sin_i();
  const double sr = g.sin_r();
  const double rad = si * si - 2.0 * sr * sr;
  if (!(rad > 0.0)) return std::nullopt;
  const double w = beamwidth(g.d1, beam);
  return beam.k() * w * w * sr * sr / (2.0 * std::sqrt(2.0) * si * std::sqrt(rad));
}

}  // namespace fsoirs
