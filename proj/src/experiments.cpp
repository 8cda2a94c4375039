// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "fso_irs_lab/errors.hpp"

namespace fsoirs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

IrsConfig irs_for(const Scenario& s, const Design& d, double L) {
  IrsConfig irs = s.irs;
  irs.technology = d.technology;
  irs.profile = d.profile;
  irs.f = d.f;
  irs.Lx = L;
  irs.Ly = L;
  return irs;
}

double oracle_gml(const Scenario& s, const Design& d, const LinkGeometry& g, double L, const LensConfig& lens) {
  return numerical_gml(make_setup(g, s.beam, irs_for(s, d, L)), lens, s.oracle_options);
}

std::string oracle_summary(const OracleOptions& o) {
  std::ostringstream os;
  os << "tier=" << (o.tier == OracleTier::erf_form ? "erf_form" : "quadrature")
     << " lens_mode=" << (o.lens_mode == LensMode::square ? "square" : "disc") << " rel_tol=" << format_number(o.rel_tol);
  return os.str();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string CsvTable::body() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::vector<std::string> RunManifest::echo() const {
  std::vector<std::string> out;
  out.push_back("# fso-irs-lab " + version + " seed=" + std::to_string(seed) + " oracle: " + oracle);
  for (const auto& [k, v] : parameters) out.push_back("# " + k + " = " + v);
  return out;
}

std::string RunManifest::text() const {
  std::ostringstream os;
  std::string current;
  for (const auto& [k, v] : parameters) {
    const auto dot = k.find('.');
    const std::string sec = dot == std::string::npos ? "" : k.substr(0, dot);
    if (sec != current) {
      os << "\n[" << sec << "]\n";
      current = sec;
    }
    os << (dot == std::string::npos ? k : k.substr(dot + 1)) << " = " << v << "\n";
  }
  os << "\n# tool_version = \"" << version << "\"\n";
  os << "# oracle = \"" << oracle << "\"\n";
  os << "# timestamp = \"" << timestamp << "\"\n";
  return os.str();
}

RunManifest make_manifest(const Scenario& s) {
  RunManifest m;
  m.parameters = resolved_parameters(s);
  m.version = FSO_IRS_LAB_VERSION;
  m.seed = s.seed;
  m.oracle = oracle_summary(s.oracle_options);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  m.timestamp = buf;
  return m;
}

void write_csv(const std::filesystem::path& path, const CsvTable& t, const RunManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  for (const auto& l : m.echo()) out << l << "\n";
  out << t.body();
}

std::vector<GmlRow> gml_vs_size(const Scenario& s, int jobs) {
  const auto g = link_at_x(s.ellipse, s.x_irs);
  const auto Ls = s.sweep.values();
  std::vector<GmlRow> rows(s.designs.size() * Ls.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const Design d = design_from_label(s.designs[i / Ls.size()], s.irs.f);
    const double L = Ls[i % Ls.size()];
    GmlRow& r = rows[i];
    r.L = L;
    r.design = design_label(d);
    r.closed = gml_piecewise(d, g, s.beam, L * L, s.lens);
    r.oracle = s.oracle ? oracle_gml(s, d, g, L, s.lens) : kNaN;
    r.rel_err = s.oracle ? std::abs(r.closed.value - r.oracle) / std::max(r.closed.value, r.oracle) : kNaN;
  });
  return rows;
}

RegimeMap compute_regime_map(const Scenario& s, int jobs) {
  const auto g = link_at_x(s.ellipse, s.x_irs);
  const auto lens_axis = s.sweep.values();
  const auto irs_axis = s.sweep2.values();
  RegimeMap m;
  m.n_lens = static_cast<int>(lens_axis.size());
  m.n_irs = static_cast<int>(irs_axis.size());
  m.cells.resize(lens_axis.size() * irs_axis.size());
  const Design lp{Technology::metamaterial, Profile::LP, s.irs.f};
  parallel_for(m.cells.size(), jobs, [&](std::size_t i) {
    RegimeCell& c = m.cells[i];
    c.sigma_lens = lens_axis[i / irs_axis.size()];
    c.sigma_irs = irs_axis[i % irs_axis.size()];
    const LensConfig lens{std::sqrt(c.sigma_lens / kPi)};
    const double L = std::sqrt(c.sigma_irs);
    double h = 0.0;
    try {
      h = oracle_gml(s, lp, g, L, lens);
    } catch (const ConvergenceError& e) {
      c.status = std::string("oracle_budget: ") + e.what();
      c.E[0] = c.E[1] = c.E[2] = kNaN;
      return;
    }
    const double G[3] = {g1_for(lp, g, s.beam, c.sigma_irs, lens).raw, g2_for(lp, g, s.beam, c.sigma_irs).raw,
                         g3(lp, g, s.beam, lens, c.sigma_irs).raw};
    for (int k = 0; k < 3; ++k) c.E[k] = std::abs(G[k] - h) / std::max(G[k], h);
    c.best = static_cast<int>(std::min_element(c.E, c.E + 3) - c.E);
  });
  std::size_t good = 0;
  for (const auto& c : m.cells)
    if (c.best >= 0 && c.E[c.best] <= 0.05) ++good;
  m.coverage = m.cells.empty() ? 0.0 : static_cast<double>(good) / static_cast<double>(m.cells.size());
  m.ordered = true;
  for (int i = 0; i < m.n_lens; ++i)
    for (int j = 1; j < m.n_irs; ++j) {
      const int a = m.cells[static_cast<std::size_t>(i * m.n_irs + j - 1)].best;
      const int b = m.cells[static_cast<std::size_t>(i * m.n_irs + j)].best;
      if (a >= 0 && b >= 0 && b < a) m.ordered = false;
    }
  std::vector<int> seen(m.cells.size(), 0);
  for (std::size_t start = 0; start < m.cells.size(); ++start) {
    const int label = m.cells[start].best;
    if (label < 0 || seen[start]) continue;
    ++m.components[label];
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(c) / m.n_irs;
      const int j = static_cast<int>(c) % m.n_irs;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k];
        const int nj = j + dj[k];
        if (ni < 0 || nj < 0 || ni >= m.n_lens || nj >= m.n_irs) continue;
        const auto n = static_cast<std::size_t>(ni * m.n_irs + nj);
        if (!seen[n] && m.cells[n].best == label) {
          seen[n] = 1;
          stack.push_back(n);
        }
      }
    }
  }
  return m;
}

std::vector<OutageCurve> outage_vs_snr(const Scenario& s, int jobs) {
  const auto g = link_at_x(s.ellipse, s.x_irs);
  const auto& ch = s.channel;
  const auto snr = s.sweep.values();
  const std::array<LinkBudget, 2> legs{relay_leg_budget(g.d1, relay_gml(g.d1, s.beam, s.lens), ch),
                                       relay_leg_budget(g.d2, relay_gml(g.d2, s.beam, s.lens), ch)};
  const std::array<GammaGammaParams, 2> pr{gg_params_for_distance(g.d1, s.beam, ch.Cn2),
                                           gg_params_for_distance(g.d2, s.beam, ch.Cn2)};
  const auto pi = gg_params_for_distance(s.ellipse.d3, s.beam, ch.Cn2);

  std::vector<OutageCurve> curves;
  for (const auto& label : s.designs)
    for (double L : s.lengths)
      for (double gth_db : s.gamma_th_db) {
        OutageCurve c;
        c.design = design_label(design_from_label(label, s.irs.f));
        c.L = L;
        c.gamma_th_db = gth_db;
        curves.push_back(c);
      }
  parallel_for(curves.size(), jobs, [&](std::size_t i) {
    OutageCurve& c = curves[i];
    const Design d = design_from_label(c.design, s.irs.f);
    c.h_gml_irs = s.oracle ? oracle_gml(s, d, g, c.L, s.lens) : gml_piecewise(d, g, s.beam, c.L * c.L, s.lens).value;
    const double gth = db_to_linear(c.gamma_th_db);
    const auto budget = irs_budget(s.ellipse.d3, c.h_gml_irs, ch);
    c.gg_irs = pi;
    c.gg_relay = pr;
    c.gains_irs = gains_irs(budget, pi, gth);
    c.gains_relay = gains_relay(legs, pr, gth);
    for (double db : snr) {
      const double gb = db_to_linear(db);
      c.snr_db.push_back(db);
      c.pout_irs.push_back(outage_irs(gb, budget, pi, gth));
      c.pout_relay.push_back(outage_relay(gb, legs, pr, gth));
      c.asym_irs.push_back(asymptotic_outage(gb, c.gains_irs));
      c.asym_relay.push_back(asymptotic_outage(gb, c.gains_relay));
    }
  });
  return curves;
}

double snr_at_outage(const std::vector<double>& snr_db, const std::vector<double>& pout, double target) {
  for (std::size_t i = 1; i < pout.size(); ++i) {
    if (pout[i - 1] > target && pout[i] <= target) {
      const double la = std::log10(pout[i - 1]);
      const double lb = std::log10(std::max(pout[i], 1e-300));
      const double t = (la - std::log10(target)) / (la - lb);
      return snr_db[i - 1] + t * (snr_db[i] - snr_db[i - 1]);
    }
  }
  return kNaN;
}

double crossover_snr(const std::vector<double>& snr_db, const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double d0 = std::log10(a[i - 1]) - std::log10(b[i - 1]);
    const double d1 = std::log10(a[i]) - std::log10(b[i]);
    if (d0 < 0.0 && d1 >= 0.0) return snr_db[i - 1] + (0.0 - d0) / (d1 - d0) * (snr_db[i] - snr_db[i - 1]);
  }
  return kNaN;
}

std::pair<double, double> admissible_x(const Ellipse& e, double margin) {
  return {e.x_from_d1(e.d1_min() + margin * e.d3), e.x_from_d1(e.d1_max() - margin * e.d3)};
}

namespace {

std::vector<double> position_grid(const Scenario& s) {
  const auto [lo, hi] = admissible_x(s.ellipse);
  auto xs = s.sweep.values();
  for (double& x : xs) x = std::clamp(x, lo, hi);
  return xs;
}

void mark_optimal(PositionCurve& c, double tol) {
  const double best = *std::max_element(c.objective.begin(), c.objective.end());
  c.is_optimal.assign(c.objective.size(), false);
  for (std::size_t i = 0; i < c.objective.size(); ++i)
    c.is_optimal[i] = c.objective[i] >= best - tol * std::abs(best);
}

}  // namespace

std::vector<PositionCurve> outage_vs_position(const Scenario& s, int jobs) {
  const auto& ch = s.channel;
  const auto xs = position_grid(s);
  const auto pi = gg_params_for_distance(s.ellipse.d3, s.beam, ch.Cn2);
  const double gb = ch.gamma_bar();
  std::vector<PositionCurve> curves;
  for (const auto& label : s.designs)
    for (double L : s.lengths)
      for (double gth_db : s.gamma_th_db) {
        PositionCurve c;
        c.design = design_label(design_from_label(label, s.irs.f));
        c.L = L;
        c.gamma_th_db = gth_db;
        curves.push_back(c);
      }
  parallel_for(curves.size(), jobs, [&](std::size_t i) {
    PositionCurve& c = curves[i];
    const Design d = design_from_label(c.design, s.irs.f);
    const double area = c.L * c.L;
    const double gth = db_to_linear(c.gamma_th_db);
    for (double x : xs) {
      const auto g = link_at_x(s.ellipse, x);
      const auto ev = gml_piecewise(d, g, s.beam, area, s.lens);
      c.x.push_back(x);
      c.d1.push_back(g.d1);
      c.objective.push_back(ev.value);
      c.regime.push_back(ev.regime);
      c.pout.push_back(outage_irs(gb, irs_budget(s.ellipse.d3, ev.value, ch), pi, gth));
    }
    mark_optimal(c, GridOptions{}.plateau_tol);
    c.placement_regime = gml_piecewise(d, link_at_x(s.ellipse, s.x_irs), s.beam, area, s.lens).regime;
    try {
      c.placement = d.is_mirror() ? optimal_mirror_position(c.placement_regime, s.ellipse, s.beam, s.lens, area)
                                  : optimal_irs_position(d, c.placement_regime, s.ellipse, s.beam, s.lens, area);
    } catch (const ConvergenceError& e) {
      c.placement.note = std::string("no closed-form optimum: ") + e.what();
      c.placement.representative.x = kNaN;
    }
    c.grid = grid_search_verify(regime_objective(d, c.placement_regime, s.ellipse, s.beam, s.lens, area), s.ellipse);
  });
  return curves;
}

PositionCurve relay_position_curve(const Scenario& s, double gamma_th_db) {
  const auto& ch = s.channel;
  PositionCurve c;
  c.design = "relay";
  c.gamma_th_db = gamma_th_db;
  const double gth = db_to_linear(gamma_th_db);
  const double gb = ch.gamma_bar();
  for (double x : position_grid(s)) {
    const auto g = link_at_x(s.ellipse, x);
    const std::array<LinkBudget, 2> legs{relay_leg_budget(g.d1, relay_gml(g.d1, s.beam, s.lens), ch),
                                         relay_leg_budget(g.d2, relay_gml(g.d2, s.beam, s.lens), ch)};
    const std::array<GammaGammaParams, 2> p{gg_params_for_distance(g.d1, s.beam, ch.Cn2),
                                            gg_params_for_distance(g.d2, s.beam, ch.Cn2)};
    c.x.push_back(x);
    c.d1.push_back(g.d1);
    c.objective.push_back(relay_score(g.d1, s.ellipse, s.beam, s.lens, ch).D);
    c.regime.push_back(Regime::saturation);
    c.pout.push_back(outage_relay(gb, legs, p, gth));
  }
  mark_optimal(c, 1e-12);
  c.placement = optimal_relay_position(s.ellipse);
  c.grid = relay_grid_optimum(s.ellipse, s.beam, s.lens, ch);
  return c;
}

std::vector<OracleCheck> oracle_cross_validation(int points, std::uint64_t seed, int jobs) {
  struct Config {
    std::string label;
    Technology tech;
    Profile profile;
    double x;
    double L;
  };
  const std::vector<Config> configs{{"LP x=1 L=1cm", Technology::metamaterial, Profile::LP, 1.0, 0.01},
                                    {"QP x=1 L=1cm", Technology::metamaterial, Profile::QP, 1.0, 0.01},
                                    {"mirror x=1 L=1cm", Technology::mirror, Profile::LP, 1.0, 0.01},
                                    {"LP x=-2 L=1cm", Technology::metamaterial, Profile::LP, -2.0, 0.01},
                                    {"QP x=2 L=6mm", Technology::metamaterial, Profile::QP, 2.0, 0.006}};
  const BeamParams beam{10e-6, 1e-3};
  const Ellipse e{8.0, 10.0};
  const double a = 5e-3;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(points));
  for (auto& p : pts) {
    const double r = a * std::sqrt(u(rng));
    const double t = 2.0 * kPi * u(rng);
    p = {r * std::cos(t), r * std::sin(t)};
  }
  std::vector<OracleCheck> out(configs.size());
  std::vector<cplx> eq(configs.size() * pts.size()), ee(eq.size());
  std::vector<OpticalSetup> setups;
  for (const auto& c : configs) {
    IrsConfig irs;
    irs.technology = c.tech;
    irs.profile = c.profile;
    irs.Lx = irs.Ly = c.L;
    irs.f = e.d3 / 4.0;
    setups.push_back(make_setup(link_at_x(e, c.x), beam, irs));
  }
  parallel_for(eq.size(), jobs, [&](std::size_t i) {
    const auto& st = setups[i / pts.size()];
    const auto& p = pts[i % pts.size()];
    eq[i] = reflected_field_quadrature(p[0], p[1], st);
    ee[i] = reflected_field_erf_form(p[0], p[1], st);
  });
  for (std::size_t c = 0; c < configs.size(); ++c) {
    double num = 0.0, den = 0.0, peak = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const std::size_t i = c * pts.size() + j;
      num += std::norm(eq[i] - ee[i]);
      den += std::norm(ee[i]);
      peak = std::max(peak, std::abs(ee[i]));
    }
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const std::size_t i = c * pts.size() + j;
      worst = std::max(worst, std::abs(eq[i] - ee[i]) / peak);
    }
    out[c] = {configs[c].label, points, std::sqrt(num / den), worst};
  }
  return out;
}

namespace {

void add_file(RunReport& r, const std::filesystem::path& p, const CsvTable& t, const RunManifest& m) {
  write_csv(p, t, m);
  r.files.push_back(p);
}

std::string curve_tag(const std::string& design, double L, double gth) {
  return design + "_L" + tag(L) + "_gth" + tag(gth);
}

}  // namespace

RunReport run_experiment(const Scenario& s, const RunOptions& opt) {
  s.validate();
  RunReport rep;
  rep.directory = opt.out / s.name;
  std::filesystem::create_directories(rep.directory);
  const RunManifest m = make_manifest(s);
  {
    std::ofstream mf(rep.directory / "manifest.toml", std::ios::binary);
    mf << m.text();
    rep.files.push_back(rep.directory / "manifest.toml");
  }

  switch (s.kind) {
    case ExperimentKind::gml_vs_size: {
      CsvTable t{{"L", "Sigma_irs", "profile", "regime", "gml_closed", "gml_oracle", "rel_err"}, {}};
      for (const auto& r : gml_vs_size(s, opt.jobs))
        t.add({format_number(r.L), format_number(r.L * r.L), r.design, to_string(r.closed.regime),
               format_number(r.closed.value), format_number(r.oracle), format_number(r.rel_err)});
      add_file(rep, rep.directory / "gml.csv", t, m);
      CsvTable b{{"profile", "S1", "S2", "S3", "G3", "branch_threshold", "three_regime", "L_at_S1", "L_at_S2"}, {}};
      const auto g = link_at_x(s.ellipse, s.x_irs);
      for (const auto& label : s.designs) {
        const Design d = design_from_label(label, s.irs.f);
        const auto rb = regime_boundaries(d, g, s.beam, s.lens);
        b.add({design_label(d), format_number(rb.S1), format_number(rb.S2), format_number(rb.S3), format_number(rb.G3),
               format_number(rb.branch_threshold), rb.three_regime ? "1" : "0", format_number(std::sqrt(rb.S1)),
               format_number(std::sqrt(rb.S2))});
        rep.summary.push_back(design_label(d) + ": G3 = " + format_number(rb.G3) + ", S1 = " + format_number(rb.S1) +
                              " m^2, S2 = " + format_number(rb.S2) + " m^2");
      }
      add_file(rep, rep.directory / "boundaries.csv", b, m);
      break;
    }
    case ExperimentKind::outage_vs_snr: {
      CsvTable gains{{"profile", "L", "gamma_th_db", "h_gml_irs", "D_irs", "C_irs", "D_rel", "C_rel", "snr_db_at_1e-2"},
                     {}};
      for (const auto& c : outage_vs_snr(s, opt.jobs)) {
        CsvTable t{{"snr_db", "pout_irs", "pout_relay", "pout_irs_asym", "pout_relay_asym"}, {}};
        for (std::size_t i = 0; i < c.snr_db.size(); ++i)
          t.add({format_number(c.snr_db[i]), format_number(c.pout_irs[i]), format_number(c.pout_relay[i]),
                 format_number(c.asym_irs[i]), format_number(c.asym_relay[i])});
        add_file(rep, rep.directory / ("outage_" + curve_tag(c.design, c.L, c.gamma_th_db) + ".csv"), t, m);
        const double at = snr_at_outage(c.snr_db, c.pout_irs, 1e-2);
        gains.add({c.design, format_number(c.L), format_number(c.gamma_th_db), format_number(c.h_gml_irs),
                   format_number(c.gains_irs.D), format_number(c.gains_irs.C), format_number(c.gains_relay.D),
                   format_number(c.gains_relay.C), format_number(at)});
        rep.summary.push_back(c.design + " L=" + tag(c.L) + " m: P_out = 1e-2 at " + format_number(at) +
                              " dB; D_rel/D_irs = " + format_number(c.gains_relay.D / c.gains_irs.D));
      }
      add_file(rep, rep.directory / "gains.csv", gains, m);
      break;
    }
    case ExperimentKind::outage_vs_position: {
      CsvTable pl{{"profile", "L", "gamma_th_db", "regime", "x_opt", "z_opt", "is_interval", "x_lo", "x_hi", "flat",
                   "fallback", "grid_x", "grid_plateau_lo", "grid_plateau_hi", "note"},
                  {}};
      auto emit = [&](const PositionCurve& c, const std::string& name) {
        CsvTable t{{"x_m", "d1_m", "objective", "pout", "regime", "is_optimal"}, {}};
        for (std::size_t i = 0; i < c.x.size(); ++i)
          t.add({format_number(c.x[i]), format_number(c.d1[i]), format_number(c.objective[i]),
                 format_number(c.pout[i]), to_string(c.regime[i]), c.is_optimal[i] ? "1" : "0"});
        add_file(rep, rep.directory / name, t, m);
        const auto& p = c.placement;
        pl.add({c.design, format_number(c.L), format_number(c.gamma_th_db), to_string(c.placement_regime),
                format_number(p.representative.x), format_number(p.representative.z), p.is_interval ? "1" : "0",
                format_number(p.x_lo), format_number(p.x_hi), p.flat ? "1" : "0", p.fallback ? "1" : "0",
                format_number(c.grid.best_x), format_number(c.grid.plateau_x_lo), format_number(c.grid.plateau_x_hi),
                "\"" + p.note + "\""});
        rep.summary.push_back(c.design + " L=" + tag(c.L) + " gth=" + tag(c.gamma_th_db) + " dB (" +
                              to_string(c.placement_regime) + "): x* = " + format_number(p.representative.x) +
                              ", grid x = " + format_number(c.grid.best_x));
      };
      for (const auto& c : outage_vs_position(s, opt.jobs))
        emit(c, "position_" + curve_tag(c.design, c.L, c.gamma_th_db) + ".csv");
      for (double gth : s.gamma_th_db) emit(relay_position_curve(s, gth), "position_relay_gth" + tag(gth) + ".csv");
      add_file(rep, rep.directory / "placement.csv", pl, m);
      break;
    }
    case ExperimentKind::regime_map: {
      const auto map = compute_regime_map(s, opt.jobs);
      CsvTable t{{"Sigma_lens", "Sigma_irs", "E1", "E2", "E3", "best_regime"}, {}};
      for (const auto& c : map.cells)
        t.add({format_number(c.sigma_lens), format_number(c.sigma_irs), format_number(c.E[0]), format_number(c.E[1]),
               format_number(c.E[2]), c.best < 0 ? c.status : to_string(static_cast<Regime>(c.best))});
      add_file(rep, rep.directory / "regime_map.csv", t, m);
      rep.summary.push_back("cells with min E_i <= 0.05: " + format_number(100.0 * map.coverage) + "%");
      rep.summary.push_back(std::string("labels ordered along Sigma_irs: ") + (map.ordered ? "yes" : "no"));
      rep.summary.push_back("components (quadratic, linear, saturation): " + std::to_string(map.components[0]) +
                            ", " + std::to_string(map.components[1]) + ", " + std::to_string(map.components[2]));
      break;
    }
    case ExperimentKind::oracle_validation: {
      CsvTable t{{"configuration", "points", "rms_rel", "max_rel"}, {}};
      for (const auto& c : oracle_cross_validation(50, s.seed, opt.jobs)) {
        t.add({"\"" + c.label + "\"", std::to_string(c.points), format_number(c.rms_rel), format_number(c.max_rel)});
        rep.summary.push_back(c.label + ": RMS relative difference " + format_number(c.rms_rel));
      }
      add_file(rep, rep.directory / "oracle_validation.csv", t, m);
      break;
    }
  }
  {
    std::ofstream sf(rep.directory / "summary.txt", std::ios::binary);
    for (const auto& l : rep.summary) sf << l << "\n";
    rep.files.push_back(rep.directory / "summary.txt");
  }
  return rep;
}

}  // namespace fsoirs
