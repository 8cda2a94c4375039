// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/wave_optics_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

namespace {

using GL = boost::math::quadrature::gauss<double, 20>;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr cplx kJ(0.0, 1.0);

double wrap_pi(double a) { return a - 2.0 * kPi * std::round(a / (2.0 * kPi)); }

// Full Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> x, w;
  Rule() {
    const auto& a = GL::abscissa();
    const auto& wt = GL::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) {
        x.push_back(0.0);
        w.push_back(wt[i]);
        continue;
      }
      x.push_back(-a[i]);
      w.push_back(wt[i]);
      x.push_back(a[i]);
      w.push_back(wt[i]);
    }
  }
};

const Rule& gl_rule() {
  static const Rule r;
  return r;
}

void composite_nodes(double lo, double hi, int panels, std::vector<double>& x, std::vector<double>& w) {
  const Rule& r = gl_rule();
  x.clear();
  w.clear();
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      x.push_back(c + 0.5 * h * r.x[i]);
      w.push_back(0.5 * h * r.w[i]);
    }
  }
}

// Adaptive panels on [0, half] for an even integrand, refined against a tolerance relative to the total.
struct Panels {
  std::vector<double> edges;
  std::vector<double> cum;
};

void refine(const std::function<double(double)>& f, double a, double b, double abs_tol, int depth, Panels& out) {
  double err = 0.0;
  const double r = GK::integrate(f, a, b, 0, 0.0, &err);
  if (err <= abs_tol || depth <= 0) {
    out.edges.push_back(b);
    out.cum.push_back(out.cum.back() + r);
    return;
  }
  const double m = 0.5 * (a + b);
  refine(f, a, m, abs_tol * 0.7071, depth - 1, out);
  refine(f, m, b, abs_tol * 0.7071, depth - 1, out);
}

Panels build_panels(const std::function<double(double)>& f, double half, double rel_tol) {
  Panels out{{0.0}, {0.0}};
  if (half <= 0.0) return out;
  std::vector<double> seed{0.0};
  for (int k = 12; k >= 1; --k) seed.push_back(std::ldexp(half, -k));
  seed.push_back(half);
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < seed.size(); ++i) rough += std::abs(GK::integrate(f, seed[i], seed[i + 1], 4, 1e-6));
  if (rough == 0.0) {
    out.edges.push_back(half);
    out.cum.push_back(0.0);
    return out;
  }
  const double tol = rel_tol * rough / std::sqrt(static_cast<double>(seed.size()));
  for (std::size_t i = 0; i + 1 < seed.size(); ++i) refine(f, seed[i], seed[i + 1], tol, 30, out);
  return out;
}

// int_0^y f over the accepted panels, finishing the last partial panel with Gauss-Legendre.
double cumulative(const std::function<double(double)>& f, const Panels& p, double y) {
  if (y <= 0.0) return 0.0;
  if (y >= p.edges.back()) return p.cum.back();
  const auto it = std::upper_bound(p.edges.begin(), p.edges.end(), y);
  const std::size_t i = static_cast<std::size_t>(it - p.edges.begin()) - 1;
  return p.cum[i] + GL::integrate(f, p.edges[i], y);
}

// 2 * int_0^half f(t) dt.
double integrate_even(const std::function<double(double)>& f, double half, double rel_tol) {
  return 2.0 * build_panels(f, half, rel_tol).cum.back();
}

// 4 * int over the quarter disc of fx(x) fy(y).
double integrate_disc(const std::function<double(double)>& fx, const std::function<double(double)>& fy, double a,
                      double rel_tol) {
  const Panels py = build_panels(fy, a, rel_tol);
  auto outer = [&](double x) { return fx(x) * cumulative(fy, py, std::sqrt(std::max(0.0, a * a - x * x))); };
  return 2.0 * integrate_even(outer, a, rel_tol);
}

struct Reduced {
  double amp = 0.0;
  double phase = 0.0;
};

}  // namespace

PhaseProfile build_phase_profile(Profile kind, const LinkGeometry& g, const BeamParams& beam, double f) {
  PhaseProfile p;
  p.kind = kind;
  // phi_i = 0, phi_r = pi.
  p.phi_x = g.cos_i() - g.cos_r();
  p.phi_y = 0.0;
  if (kind == Profile::QP) {
    if (!(f > 0.0)) throw ValidationError("build_phase_profile: QP requires f > 0");
    const double R = curvature_radius(g.d1, beam);
    const double si2 = g.sin_i() * g.sin_i();
    const double sr2 = g.sin_r() * g.sin_r();
    const double inv4f = std::isinf(f) ? 0.0 : 1.0 / (4.0 * f);
    p.phi_x2 = -si2 / (2.0 * R) - sr2 / (2.0 * g.d2) + sr2 * inv4f;
    p.phi_y2 = -1.0 / (2.0 * R) - 1.0 / (2.0 * g.d2) + inv4f;
  }
  if (kind == Profile::FP) {
    p.phi_x = p.phi_y = 0.0;
    p.r_target = {-g.d2 * g.cos_r(), 0.0, g.d2 * g.sin_r()};
  }
  return p;
}

OpticalSetup make_setup(const LinkGeometry& g, const BeamParams& beam, const IrsConfig& irs,
                        const FieldConstants& c) {
  beam.validate();
  irs.validate();
  OpticalSetup s;
  s.geometry = g;
  s.beam = beam;
  s.irs = irs;
  s.constants = c;
  if (irs.is_mirror()) {
    s.geometry.theta_i = g.theta_mir;
    s.geometry.theta_r = g.theta_mir;
    s.profile = build_phase_profile(Profile::LP, s.geometry, beam, irs.f);
  } else {
    s.profile = build_phase_profile(irs.profile, g, beam, irs.f);
  }
  return s;
}

double c_ell(const BeamParams& beam, double d, const FieldConstants& c) {
  const double w = beamwidth(d, beam);
  return std::sqrt(4.0 * c.eta * c.P_tot / (c.n * kPi * w * w));
}

cplx c_r(const LinkGeometry& g, const BeamParams& beam) {
  return std::sqrt(std::abs(g.sin_r())) / (kJ * beam.lambda * g.d2);
}

double incident_phase(double xr, double yr, const LinkGeometry& g, const BeamParams& beam) {
  const double R = curvature_radius(g.d1, beam);
  const double si = g.sin_i();
  return beam.k() * (g.d1 - xr * g.cos_i() + xr * xr * si * si / (2.0 * R) + yr * yr / (2.0 * R)) -
         std::atan(g.d1 / beam.zR());
}

cplx incident_field(double xr, double yr, const LinkGeometry& g, const BeamParams& beam, const FieldConstants& c) {
  const double w = beamwidth(g.d1, beam);
  const double si = std::abs(g.sin_i());
  const double amp = c_ell(beam, g.d1, c) * std::sqrt(si) * std::exp(-xr * xr * si * si / (w * w) - yr * yr / (w * w));
  return amp * std::exp(-kJ * incident_phase(xr, yr, g, beam));
}

double irs_phase(const PhaseProfile& p, double xr, double yr, const LinkGeometry& g, const BeamParams& beam) {
  const double k = beam.k();
  if (p.kind == Profile::FP) {
    const double dx = p.r_target[0] - xr;
    const double dy = p.r_target[1] - yr;
    const double dz = p.r_target[2];
    return -incident_phase(xr, yr, g, beam) - k * std::sqrt(dx * dx + dy * dy + dz * dz) + k * p.phi_0;
  }
  return k * (p.phi_x * xr + p.phi_y * yr + p.phi_x2 * xr * xr + p.phi_y2 * yr * yr + p.phi_0);
}

std::array<double, 3> lens_point(double xp, double yp, const LinkGeometry& g) {
  const double sr = g.sin_r();
  const double cr = g.cos_r();
  return {-sr * xp - cr * g.d2, -yp, -cr * xp + sr * g.d2};
}

cplx reflected_field_quadrature(double xp, double yp, const OpticalSetup& s, const QuadratureOptions& opt,
                                QuadratureDiagnostics* diag) {
  const LinkGeometry& g = s.geometry;
  const BeamParams& beam = s.beam;
  const double k = beam.k();
  const double w = beamwidth(g.d1, beam);
  const double si = std::abs(g.sin_i());
  const double R = curvature_radius(g.d1, beam);
  const double invR = std::isinf(R) ? 0.0 : 1.0 / R;
  const auto ro = lens_point(xp, yp, g);
  const double ro_n = std::sqrt(ro[0] * ro[0] + ro[1] * ro[1] + ro[2] * ro[2]);
  const PhaseProfile& pp = s.profile;
  const bool fp = pp.kind == Profile::FP && !s.irs.is_mirror();
  const double rt_n = std::sqrt(pp.r_target[0] * pp.r_target[0] + pp.r_target[1] * pp.r_target[1] +
                                pp.r_target[2] * pp.r_target[2]);

  const double hx = std::min(0.5 * s.irs.Lx, opt.envelope_cut * w / si);
  const double hy = std::min(0.5 * s.irs.Ly, opt.envelope_cut * w);

  // Phase relative to exp(-j (k d1 - atan(d1/zR) + k |r_o|)) for LP/QP, exp(-j k (|r_o| - |r_target|)) for FP.
  auto x_part = [&](double x) {
    Reduced r;
    r.amp = std::exp(-x * x * si * si / (w * w));
    if (fp) {
      r.phase = 0.0;
    } else {
      r.phase = -k * (-x * g.cos_i() + x * x * si * si * 0.5 * invR) - k * (pp.phi_x * x + pp.phi_x2 * x * x);
    }
    return r;
  };
  auto y_part = [&](double y) {
    Reduced r;
    r.amp = std::exp(-y * y / (w * w));
    if (fp) {
      r.phase = 0.0;
    } else {
      r.phase = -k * (y * y * 0.5 * invR) - k * (pp.phi_y * y + pp.phi_y2 * y * y);
    }
    return r;
  };
  auto path_phase = [&](double x, double y) {
    const double dot = ro[0] * x + ro[1] * y;
    const double rr = x * x + y * y;
    const double d = std::sqrt(ro_n * ro_n - 2.0 * dot + rr);
    double ph = -k * (-2.0 * dot + rr) / (d + ro_n);
    if (fp) {
      const double dt = pp.r_target[0] * x + pp.r_target[1] * y;
      const double dd = std::sqrt(rt_n * rt_n - 2.0 * dt + rr);
      ph += k * (-2.0 * dt + rr) / (dd + rt_n);
    }
    return ph;
  };

  auto count_cycles = [&](bool along_x) {
    const double h = along_x ? hx : hy;
    int M = 8192;
    for (;;) {
      double total = 0.0;
      double maxstep = 0.0;
      double prev = 0.0;
      for (int i = 0; i <= M; ++i) {
        const double t = -h + 2.0 * h * i / M;
        const double ph = along_x ? x_part(t).phase + path_phase(t, 0.0) : y_part(t).phase + path_phase(0.0, t);
        if (i > 0) {
          const double dphi = wrap_pi(ph - prev);
          total += std::abs(dphi);
          maxstep = std::max(maxstep, std::abs(dphi));
        }
        prev = ph;
      }
      if (maxstep < 1.0 || M >= (1 << 22)) return total / (2.0 * kPi);
      M *= 4;
    }
  };

  const double cyc_x = count_cycles(true);
  const double cyc_y = count_cycles(false);
  const int q = static_cast<int>(gl_rule().x.size());
  int px = std::max(2, static_cast<int>(std::ceil(cyc_x * opt.samples_per_cycle / q)) + 1);
  int py = std::max(2, static_cast<int>(std::ceil(cyc_y * opt.samples_per_cycle / q)) + 1);

  std::vector<double> xs, wx, ys, wy;
  auto evaluate = [&](int nx, int ny, double& l1) {
    composite_nodes(-hx, hx, nx, xs, wx);
    composite_nodes(-hy, hy, ny, ys, wy);
    std::vector<Reduced> xr(xs.size()), yr(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xr[i] = x_part(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) yr[j] = y_part(ys[j]);
    cplx sum = 0.0;
    l1 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      cplx row = 0.0;
      double row_l1 = 0.0;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const double a = wy[j] * yr[j].amp;
        const double ph = xr[i].phase + yr[j].phase + path_phase(xs[i], ys[j]);
        row += a * cplx(std::cos(ph), std::sin(ph));
        row_l1 += a;
      }
      sum += wx[i] * xr[i].amp * row;
      l1 += wx[i] * xr[i].amp * row_l1;
    }
    return sum;
  };

  double l1 = 0.0;
  cplx prev = evaluate(px, py, l1);
  int refinements = 0;
  for (;;) {
    if (2 * std::max(px, py) > opt.max_panels) {
      std::ostringstream os;
      os << "reflected_field_quadrature: oscillation budget exceeded (" << cyc_x << " x " << cyc_y
         << " phase cycles, " << px << " x " << py << " panels)";
      throw ConvergenceError(os.str());
    }
    px *= 2;
    py *= 2;
    ++refinements;
    const cplx cur = evaluate(px, py, l1);
    const double scale = std::max(std::abs(cur), 1e-6 * l1);
    const bool done = std::abs(cur - prev) <= opt.rel_tol * scale;
    prev = cur;
    if (done) break;
  }
  if (diag) {
    diag->cycles_x = cyc_x;
    diag->cycles_y = cyc_y;
    diag->panels_x = px;
    diag->panels_y = py;
    diag->refinements = refinements;
  }

  const double pre = c_ell(beam, g.d1, s.constants) * std::sqrt(si);
  cplx global;
  if (fp) {
    global = std::exp(-kJ * k * (ro_n - rt_n));
  } else {
    global = std::exp(-kJ * (k * g.d1 - std::atan(g.d1 / beam.zR()) + k * ro_n));
  }
  return c_r(g, beam) * pre * global * prev;
}

std::array<cplx, 2> aperture_coefficients(const OpticalSetup& s) {
  const LinkGeometry& g = s.geometry;
  const double k = s.beam.k();
  const double w = beamwidth(g.d1, s.beam);
  const double R = curvature_radius(g.d1, s.beam);
  const double invR = std::isinf(R) ? 0.0 : 1.0 / R;
  const double si2 = g.sin_i() * g.sin_i();
  const double sr2 = g.sin_r() * g.sin_r();
  const PhaseProfile& p = s.profile;
  if (p.kind == Profile::FP && !s.irs.is_mirror()) return {cplx(si2 / (w * w), 0.0), cplx(1.0 / (w * w), 0.0)};
  const cplx bx(si2 / (w * w), k * (si2 * 0.5 * invR + sr2 / (2.0 * g.d2) + p.phi_x2));
  const cplx by(1.0 / (w * w), k * (0.5 * invR + 1.0 / (2.0 * g.d2) + p.phi_y2));
  return {bx, by};
}

cplx gaussian_aperture_integral(cplx b, double L, double c) {
  const cplx rb = std::sqrt(b);
  const cplx p = 0.5 * rb * L;
  const cplx q = kJ * c / (2.0 * rb);
  return 0.5 * std::sqrt(kPi / b) * scaled_erf_difference(p, q);
}

cplx reflected_field_erf_form(double xp, double yp, const OpticalSetup& s) {
  if (s.profile.kind == Profile::FP && !s.irs.is_mirror())
    throw ValidationError("reflected_field_erf_form: FP profile uses fp_intensity");
  const LinkGeometry& g = s.geometry;
  const double k = s.beam.k();
  const auto b = aperture_coefficients(s);
  const cplx Fx = gaussian_aperture_integral(b[0], s.irs.Lx, k * g.sin_r() * xp / g.d2);
  const cplx Fy = gaussian_aperture_integral(b[1], s.irs.Ly, k * yp / g.d2);
  const auto ro = lens_point(xp, yp, g);
  const double ro_n = std::sqrt(ro[0] * ro[0] + ro[1] * ro[1] + ro[2] * ro[2]);
  const cplx global = std::exp(-kJ * (k * g.d1 - std::atan(g.d1 / s.beam.zR()) + k * ro_n));
  const double pre = c_ell(s.beam, g.d1, s.constants) * std::sqrt(std::abs(g.sin_i()));
  return c_r(g, s.beam) * pre * global * Fx * Fy;
}

double fp_constant(const OpticalSetup& s) {
  const LinkGeometry& g = s.geometry;
  const double w = beamwidth(g.d1, s.beam);
  return s.constants.P_tot * kPi * w * w * std::abs(g.sin_r()) /
         (8.0 * s.beam.lambda * s.beam.lambda * g.d2 * g.d2 * std::abs(g.sin_i()) * s.constants.n);
}

namespace {

// exp(-v^2) * [erf(u + j v) - erf(-u + j v)], real for real u, v.
double fp_axis_factor(double u, double v) { return scaled_erf_difference(cplx(u, 0.0), cplx(0.0, v)).real(); }

struct FpAxes {
  double ux, uy, Wx, Wy;
};

FpAxes fp_axes(const OpticalSetup& s) {
  const LinkGeometry& g = s.geometry;
  const double w = beamwidth(g.d1, s.beam);
  const double k = s.beam.k();
  const double si = std::abs(g.sin_i());
  const double sr = std::abs(g.sin_r());
  FpAxes a;
  a.ux = s.irs.Lx * si / (2.0 * w);
  a.uy = s.irs.Ly / (2.0 * w);
  a.Wx = std::sqrt(2.0) * g.d2 * si / (k * sr * w);
  a.Wy = std::sqrt(2.0) * g.d2 / (k * w);
  return a;
}

}  // namespace

FpIntensity fp_intensity(double xp, double yp, const OpticalSetup& s) {
  const FpAxes a = fp_axes(s);
  const double fx = fp_axis_factor(a.ux, xp / (std::sqrt(2.0) * a.Wx));
  const double fy = fp_axis_factor(a.uy, yp / (std::sqrt(2.0) * a.Wy));
  FpIntensity out;
  out.value = fp_constant(s) * fx * fx * fy * fy;
  out.expansion_warning = std::hypot(xp, yp) > 0.1 * s.geometry.d2;
  return out;
}

double numerical_gml(const OpticalSetup& s, const LensConfig& lens, const OracleOptions& opt) {
  lens.validate();
  const double P = s.constants.P_tot;
  const double eta = s.constants.eta;

  if (opt.tier == OracleTier::quadrature) {
    const Rule& r = gl_rule();
    std::vector<double> nodes, weights;
    const int panels = std::max(1, opt.lens_nodes / static_cast<int>(r.x.size()) + 1);
    double sum = 0.0;
    auto intensity = [&](double x, double y) {
      return std::norm(reflected_field_quadrature(x, y, s, opt.quad)) / (2.0 * eta);
    };
    if (opt.lens_mode == LensMode::square) {
      const double h = 0.5 * lens.square_side();
      composite_nodes(-h, h, panels, nodes, weights);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[i] * weights[j] * intensity(nodes[i], nodes[j]);
    } else {
      std::vector<double> tn, tw;
      composite_nodes(0.0, lens.a, panels, nodes, weights);
      composite_nodes(0.0, 2.0 * kPi, 2 * panels, tn, tw);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < tn.size(); ++j)
          sum += weights[i] * tw[j] * nodes[i] *
                 intensity(nodes[i] * std::cos(tn[j]), nodes[i] * std::sin(tn[j]));
    }
    return sum / P;
  }

  std::function<double(double)> gx, gy;
  double scale = 0.0;
  const LinkGeometry& g = s.geometry;
  if (s.profile.kind == Profile::FP && !s.irs.is_mirror()) {
    const FpAxes a = fp_axes(s);
    gx = [a](double x) {
      const double f = fp_axis_factor(a.ux, x / (std::sqrt(2.0) * a.Wx));
      return f * f;
    };
    gy = [a](double y) {
      const double f = fp_axis_factor(a.uy, y / (std::sqrt(2.0) * a.Wy));
      return f * f;
    };
    scale = fp_constant(s) / P;
  } else {
    const auto b = aperture_coefficients(s);
    const double k = s.beam.k();
    const double cx = k * g.sin_r() / g.d2;
    const double cy = k / g.d2;
    const double Lx = s.irs.Lx;
    const double Ly = s.irs.Ly;
    gx = [=](double x) { return std::norm(gaussian_aperture_integral(b[0], Lx, cx * x)); };
    gy = [=](double y) { return std::norm(gaussian_aperture_integral(b[1], Ly, cy * y)); };
    const double pre = c_ell(s.beam, g.d1, s.constants) * std::sqrt(std::abs(g.sin_i())) * std::abs(c_r(g, s.beam));
    scale = pre * pre / (2.0 * eta * P);
  }

  if (opt.lens_mode == LensMode::square) {
    const double h = 0.5 * lens.square_side();
    return scale * integrate_even(gx, h, opt.rel_tol) * integrate_even(gy, h, opt.rel_tol);
  }
  return scale * integrate_disc(gx, gy, lens.a, opt.rel_tol);
}

double numerical_relay_gml(double d, const BeamParams& beam, const LensConfig& lens, LensMode mode) {
  lens.validate();
  const double w = beamwidth(d, beam);
  auto g = [w](double t) { return std::exp(-2.0 * t * t / (w * w)); };
  const double norm = 2.0 / (kPi * w * w);
  if (mode == LensMode::square) {
    const double h = 0.5 * lens.square_side();
    const double one = integrate_even(g, h, 1e-12);
    return norm * one * one;
  }
  return norm * integrate_disc(g, g, lens.a, 1e-12);
}

std::vector<FieldSample> field_map(const OpticalSetup& s, const std::vector<double>& xs,
                                   const std::vector<double>& ys, OracleTier tier) {
  std::vector<FieldSample> out;
  out.reserve(xs.size() * ys.size());
  const bool fp = s.profile.kind == Profile::FP && !s.irs.is_mirror();
  for (double y : ys) {
    for (double x : xs) {
      FieldSample fs;
      fs.x = x;
      fs.y = y;
      if (tier == OracleTier::quadrature) {
        fs.E = reflected_field_quadrature(x, y, s);
        fs.I = std::norm(fs.E) / (2.0 * s.constants.eta);
      } else if (fp) {
        fs.I = fp_intensity(x, y, s).value;
        fs.E = std::sqrt(2.0 * s.constants.eta * fs.I);
      } else {
        fs.E = reflected_field_erf_form(x, y, s);
        fs.I = std::norm(fs.E) / (2.0 * s.constants.eta);
      }
      out.push_back(fs);
    }
  }
  return out;
}

}  // namespace fsoirs
