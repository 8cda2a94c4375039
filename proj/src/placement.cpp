// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/placement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

PlacementSymbols placement_symbols(const Ellipse& e) {
  e.validate();
  PlacementSymbols s;
  const double L2 = e.Ltr * e.Ltr;
  s.rho1 = 3.0 * L2 - e.d3 * e.d3;
  s.rho2 = std::sqrt(e.d3 * e.d3 + 24.0 * L2);
  s.z1_printed = e.He() * std::sqrt(std::max(0.0, 1.0 - s.rho1 / L2));
  s.z2_printed = e.He() * (1.0 - (e.d3 * e.d3 + 12.0 * L2 - s.rho2 * e.d3) / (8.0 * L2));
  return s;
}

namespace {

double margin_d1(const Ellipse& e, double margin) { return margin * e.d3; }

PlacementResult single_point(const Ellipse& e, double d1, Regime r) {
  PlacementResult p;
  p.regime = r;
  p.d1 = d1;
  p.representative = ellipse_position(d1, e);
  p.points.push_back(p.representative);
  p.x_lo = p.x_hi = p.representative.x;
  return p;
}

}  // namespace

std::function<double(double)> regime_objective(const Design& d, Regime r, const Ellipse& e, const BeamParams& beam,
                                               const LensConfig& lens, double irs_area) {
  return [=](double d1) {
    const LinkGeometry g = link_at_d1(e, d1);
    switch (r) {
      case Regime::quadratic: return g1_for(d, g, beam, irs_area, lens).raw;
      case Regime::linear: return g2_for(d, g, beam, irs_area).raw;
      case Regime::saturation: return g3(d, g, beam, lens).raw;
    }
    return 0.0;
  };
}

PlacementResult optimal_irs_position(const Design& d, Regime r, const Ellipse& e, const BeamParams& beam,
                                     const LensConfig& lens, double irs_area) {
  e.validate();
  if (d.is_mirror()) return optimal_mirror_position(r, e, beam, lens, irs_area);
  const PlacementSymbols s = placement_symbols(e);
  const auto obj = regime_objective(d, r, e, beam, lens, irs_area);
  const double eps = margin_d1(e, GridOptions{}.margin);

  if (r == Regime::quadratic) {
    if (s.rho1 >= 0.0) {
      const double x = std::sqrt(2.0 * s.rho1) * e.d3 / (4.0 * e.Ltr);
      PlacementResult p;
      p.regime = r;
      for (double sx : {-x, x}) p.points.push_back(ellipse_position(e.d1_from_x(sx), e));
      p.representative = p.points.back();
      p.d1 = e.d1_from_x(x);
      p.x_lo = -x;
      p.x_hi = x;
      p.objective = obj(p.d1);
      return p;
    }
    // Interior extrema are complex: compare the admissible endpoints.
    const double lo = e.d1_min() + eps;
    const double hi = e.d1_max() - eps;
    const double vlo = obj(lo);
    const double vhi = obj(hi);
    PlacementResult p = single_point(e, vlo >= vhi ? lo : hi, r);
    if (std::abs(vlo - vhi) <= 1e-9 * std::max(vlo, vhi)) p.points.push_back(ellipse_position(vlo >= vhi ? hi : lo, e));
    p.objective = std::max(vlo, vhi);
    p.fallback = true;
    p.note = "rho1 < 0: endpoint comparison";
    return p;
  }

  if (r == Regime::linear) {
    const double d1 = (5.0 * e.d3 - s.rho2) / 8.0;
    PlacementResult p = single_point(e, std::clamp(d1, e.d1_min() + eps, e.d1_max() - eps), r);
    p.objective = obj(p.d1);
    std::ostringstream os;
    os << "closed-form x = " << e.d3 * (e.d3 - s.rho2) / (8.0 * e.Ltr);
    p.note = os.str();
    return p;
  }

  switch (d.profile) {
    case Profile::LP: {
      PlacementResult p = single_point(e, 0.5 * e.d3, r);
      p.objective = obj(p.d1);
      return p;
    }
    case Profile::QP: {
      auto res = [&](double d1) { return qp_stationarity_residual(d1, d.f, e, beam, lens); };
      const auto roots = find_roots(res, e.d1_min() + eps, e.d1_max() - eps);
      if (roots.empty()) {
        std::ostringstream os;
        os << "placement: QP stationarity residual has no sign change over d1 in [" << e.d1_min() + eps << ", "
           << e.d1_max() - eps << "] (512-point scan)";
        throw ConvergenceError(os.str());
      }
      const RootResult* best = &roots.front();
      double bv = obj(best->root);
      for (const auto& rr : roots) {
        const double v = obj(rr.root);
        if (v > bv) {
          bv = v;
          best = &rr;
        }
      }
      PlacementResult p = single_point(e, best->root, r);
      p.objective = bv;
      p.diag = best->diag;
      p.diag.residual = qp_stationarity_residual_normalized(best->root, d.f, e, beam, lens);
      return p;
    }
    case Profile::FP: {
      const GridResult gr = grid_search_verify(obj, e);
      PlacementResult p;
      p.regime = r;
      p.is_interval = true;
      p.x_lo = gr.plateau_x_lo;
      p.x_hi = gr.plateau_x_hi;
      const double xm = 0.5 * (p.x_lo + p.x_hi);
      p.d1 = e.d1_from_x(xm);
      p.representative = ellipse_position(p.d1, e);
      p.points = {ellipse_position(e.d1_from_x(p.x_lo), e), ellipse_position(e.d1_from_x(p.x_hi), e)};
      p.objective = gr.best_value;
      p.note = "plateau of G3_FP";
      return p;
    }
  }
  return {};
}

PlacementResult optimal_mirror_position(Regime r, const Ellipse& e, const BeamParams& beam, const LensConfig& lens,
                                        double irs_area) {
  e.validate();
  const Design mir{Technology::mirror, Profile::LP, 0.0};
  const auto obj = regime_objective(mir, r, e, beam, lens, irs_area);
  const double eps = margin_d1(e, GridOptions{}.margin);
  const double lo = e.d1_min() + eps;
  const double hi = e.d1_max() - eps;
  if (r == Regime::quadratic) {
    PlacementResult p = single_point(e, lo, r);
    p.points.push_back(ellipse_position(hi, e));
    p.x_lo = p.points.front().x;
    p.x_hi = p.points.back().x;
    p.objective = std::max(obj(lo), obj(hi));
    p.note = "endpoints (+-d3/2, 0) inset by the ellipse margin";
    return p;
  }
  if (r == Regime::linear) {
    PlacementResult p = single_point(e, lo, r);
    p.objective = obj(lo);
    p.note = "minimal d1 (x = -d3/2 end) inset by the ellipse margin";
    return p;
  }
  PlacementResult p;
  p.regime = r;
  p.is_interval = true;
  p.flat = true;
  p.points = {ellipse_position(lo, e), ellipse_position(hi, e)};
  p.x_lo = p.points.front().x;
  p.x_hi = p.points.back().x;
  p.d1 = 0.5 * e.d3;
  p.representative = ellipse_position(p.d1, e);
  p.objective = obj(p.d1);
  p.note = "objective independent of the mirror position";
  return p;
}

PlacementResult optimal_relay_position(const Ellipse& e) {
  e.validate();
  PlacementResult p = single_point(e, 0.5 * e.d3, Regime::saturation);
  p.note = "equidistant from Tx and Rx";
  return p;
}

GridResult grid_search_verify(const std::function<double(double)>& objective, const Ellipse& e,
                              const GridOptions& opt) {
  e.validate();
  if (opt.points < 2) throw ValidationError("grid_search_verify: need at least two points");
  const double eps = margin_d1(e, opt.margin);
  const double lo = e.d1_min() + eps;
  const double hi = e.d1_max() - eps;
  GridResult g;
  const auto n = static_cast<std::size_t>(opt.points);
  g.d1.resize(n);
  g.x.resize(n);
  g.value.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.d1[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.x[i] = e.x_from_d1(g.d1[i]);
    g.value[i] = objective(g.d1[i]);
  }
  g.cell = g.x[1] - g.x[0];
  auto better = [&](double a, double b) { return opt.maximize ? a > b : a < b; };
  for (std::size_t i = 1; i < n; ++i)
    if (better(g.value[i], g.value[g.best])) g.best = i;
  g.best_d1 = g.d1[g.best];
  g.best_x = g.x[g.best];
  g.best_value = g.value[g.best];
  const double tol = opt.plateau_tol * std::abs(g.best_value);
  auto within = [&](double v) { return std::abs(v - g.best_value) <= tol; };
  std::size_t a = g.best;
  std::size_t b = g.best;
  while (a > 0 && within(g.value[a - 1])) --a;
  while (b + 1 < n && within(g.value[b + 1])) ++b;
  g.plateau_x_lo = g.x[a];
  g.plateau_x_hi = g.x[b];
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i == 0 || !better(g.value[i - 1], g.value[i]);
    const bool right = i + 1 == n || !better(g.value[i + 1], g.value[i]);
    if (left && right && within(g.value[i]) && (i == g.best || i < a || i > b)) g.ties.push_back(i);
  }
  return g;
}

double qp_omega1(double d1, double f, const Ellipse& e, const BeamParams& beam) {
  const double zR = beam.zR();
  const double d2 = e.d3 - d1;
  const double r = d2 / d1;
  return beam.lambda / (kPi * beam.w0) * std::sqrt(zR * zR * r * r * r * r + std::pow(d1, 4) / (4.0 * f * f));
}

double qp_omega2(double d1, double f, const Ellipse& e, const BeamParams& beam) {
  const double zR = beam.zR();
  const double d2 = e.d3 - d1;
  return beam.lambda / (kPi * beam.w0) *
         std::sqrt(zR * zR * d2 * d2 / (d1 * d1) + d2 * d2 * d1 * d1 / (4.0 * f * f));
}

namespace {

struct QpTerms {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

QpTerms qp_terms(double d1, double f, const Ellipse& e, const BeamParams& beam, const LensConfig& lens) {
  if (!(d1 > 0.0 && d1 < e.d3)) throw DomainError("qp_stationarity_residual: d1 outside (0, d3)");
  if (!(f > 0.0)) throw ValidationError("qp_stationarity_residual: f must be positive");
  const double a = lens.a;
  const double d3 = e.d3;
  const double d2 = d3 - d1;
  const double zR = beam.zR();
  const double w1 = qp_omega1(d1, f, e, beam);
  const double w2 = qp_omega2(d1, f, e, beam);
  const double c = 0.5 * std::sqrt(kPi) * a;
  const double ratio = std::erf(c / w1) / std::erf(c / w2);
  const double q = (w1 / w2) * (w1 / w2);
  const double ex = std::exp(-0.5 * kPi * a * a * (1.0 / (w1 * w1) - 1.0 / (w2 * w2)));
  QpTerms t;
  t.t1 = ratio * q * q * ex * (-4.0 * d3 * zR * zR * d2 * d2 * d2 * f * f + std::pow(d1, 8));
  t.t2 = -2.0 * zR * zR * d1 * d1 * f * f * d2 * d3;
  t.t3 = 0.5 * std::pow(d1, 6) * d2 * (d3 - 2.0 * d1);
  return t;
}

}  // namespace

double qp_stationarity_residual(double d1, double f, const Ellipse& e, const BeamParams& beam,
                                const LensConfig& lens) {
  const QpTerms t = qp_terms(d1, f, e, beam, lens);
  return t.t1 + t.t2 + t.t3;
}

double qp_stationarity_residual_normalized(double d1, double f, const Ellipse& e, const BeamParams& beam,
                                           const LensConfig& lens) {
  const QpTerms t = qp_terms(d1, f, e, beam, lens);
  const double s = std::abs(t.t1) + std::abs(t.t2) + std::abs(t.t3);
  return s > 0.0 ? (t.t1 + t.t2 + t.t3) / s : 0.0;
}

double fp_stationarity_residual(double d1, const Ellipse& e, const BeamParams& beam, const LensConfig& lens) {
  if (!(d1 >= 0.0 && d1 < e.d3)) throw DomainError("fp_stationarity_residual: d1 outside [0, d3)");
  const double kap = d1 / (e.d3 - d1);
  const double th = std::sqrt(0.5 * kPi) * lens.a / beam.w0;
  const double t2 = th * th;
  const double k2 = kap * kap;
  return 2.0 * kap * std::exp(-t2 * k2 * k2) * std::erf(th * kap) + std::exp(-t2 * k2) * std::erf(th * k2);
}

std::vector<RootResult> find_roots(const std::function<double(double)>& f, double lo, double hi, int scan,
                                   double xtol) {
  if (!(hi > lo) || scan < 2) throw ValidationError("find_roots: invalid bracket or scan size");
  std::vector<RootResult> out;
  std::vector<double> xs(static_cast<std::size_t>(scan)), fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan - 1);
    fs[i] = f(xs[i]);
  }
  int changes = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (std::signbit(fs[i]) != std::signbit(fs[i + 1]) || fs[i] == 0.0) ++changes;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double a = xs[i], b = xs[i + 1], fa = fs[i], fb = fs[i + 1];
    if (fa == 0.0) {
      out.push_back({a, {a, a, 0, 0.0, scan, changes}});
      continue;
    }
    if (std::signbit(fa) == std::signbit(fb)) continue;
    RootResult r;
    r.diag.bracket_lo = a;
    r.diag.bracket_hi = b;
    r.diag.scan_points = scan;
    r.diag.sign_changes = changes;
    int it = 0;
    double x = 0.5 * (a + b);
    while (it < 200 && (b - a) > xtol * std::max(1.0, std::abs(a))) {
      ++it;
      // Secant candidate, accepted only if it lands well inside the bracket.
      double s = b - fb * (b - a) / (fb - fa);
      const double m = 0.5 * (a + b);
      const double guard = 0.1 * (b - a);
      if (!(s > a + guard && s < b - guard) || it % 3 == 0) s = m;
      const double fsv = f(s);
      x = s;
      if (fsv == 0.0) {
        a = b = s;
        break;
      }
      if (std::signbit(fsv) == std::signbit(fa)) {
        a = s;
        fa = fsv;
      } else {
        b = s;
        fb = fsv;
      }
      x = 0.5 * (a + b);
    }
    r.root = x;
    r.diag.iterations = it;
    r.diag.residual = f(x);
    out.push_back(r);
  }
  return out;
}

RelayScore relay_score(double d1, const Ellipse& e, const BeamParams& beam, const LensConfig& lens,
                       const ChannelParams& ch) {
  const double d2 = e.d3 - d1;
  const std::array<LinkBudget, 2> legs{relay_leg_budget(d1, relay_gml(d1, beam, lens), ch),
                                       relay_leg_budget(d2, relay_gml(d2, beam, lens), ch)};
  const std::array<GammaGammaParams, 2> p{gg_params_for_distance(d1, beam, ch.Cn2),
                                          gg_params_for_distance(d2, beam, ch.Cn2)};
  const GainPair g = gains_relay(legs, p, ch.gamma_th);
  return {g.D, g.C};
}

GridResult relay_grid_optimum(const Ellipse& e, const BeamParams& beam, const LensConfig& lens,
                              const ChannelParams& ch, const GridOptions& opt) {
  GridOptions o = opt;
  o.maximize = true;
  GridResult g = grid_search_verify([&](double d1) { return relay_score(d1, e, beam, lens, ch).D; }, e, o);
  double bestC = -1.0;
  for (std::size_t i = 0; i < g.value.size(); ++i) {
    if (g.value[i] < g.best_value * (1.0 - 1e-12)) continue;
    const double C = relay_score(g.d1[i], e, beam, lens, ch).C;
    if (C > bestC) {
      bestC = C;
      g.best = i;
    }
  }
  g.best_d1 = g.d1[g.best];
  g.best_x = g.x[g.best];
  g.best_value = g.value[g.best];
  return g;
}

}  // namespace fsoirs
