// SPDX-License-Identifier: Apache-2.0
#include "fso_irs_lab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fso_irs_lab/errors.hpp"
#include "tomlplusplus/toml.hpp"

namespace fsoirs {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::gml_vs_size: return "gml_vs_size";
    case ExperimentKind::outage_vs_snr: return "outage_vs_snr";
    case ExperimentKind::outage_vs_position: return "outage_vs_position";
    case ExperimentKind::regime_map: return "regime_map";
    case ExperimentKind::oracle_validation: return "oracle_validation";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::gml_vs_size, ExperimentKind::outage_vs_snr, ExperimentKind::outage_vs_position,
                 ExperimentKind::regime_map, ExperimentKind::oracle_validation})
    if (s == to_string(k)) return k;
  throw ValidationError("unknown experiment kind '" + std::string(s) + "'");
}

std::vector<double> Sweep::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
  if (points == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  return v;
}

void Sweep::validate(const std::string& where) const {
  if (points < 1) throw ValidationError(where + ": sweep needs at least one point");
  if (points > 1 && !(hi > lo)) throw ValidationError(where + ": empty sweep range (hi must exceed lo)");
  if (log && !(lo > 0.0)) throw ValidationError(where + ": log sweep needs a positive lower bound");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError(where + ": sweep bounds must be finite");
}

Design design_from_label(const std::string& label, double f) {
  if (label == "mir" || label == "mirror") return {Technology::mirror, Profile::LP, f};
  return {Technology::metamaterial, parse_profile(label), f};
}

void Scenario::validate() const {
  beam.validate();
  ellipse.validate();
  irs.validate();
  lens.validate();
  channel.validate();
  sweep.validate("sweep");
  if (kind == ExperimentKind::regime_map) sweep2.validate("sweep2");
  if (std::abs(x_irs) >= 0.5 * ellipse.d3) throw ValidationError("geometry.x_irs must lie strictly inside (-d3/2, d3/2)");
  if (designs.empty()) throw ValidationError("experiment.designs must not be empty");
  for (const auto& d : designs) design_from_label(d, irs.f);
  if (lengths.empty()) throw ValidationError("experiment.lengths must not be empty");
  for (double L : lengths)
    if (!(L > 0.0)) throw ValidationError("experiment.lengths entries must be positive");
  if (gamma_th_db.empty()) throw ValidationError("experiment.gamma_th_db must not be empty");
  if (!(oracle_options.rel_tol > 0.0)) throw ValidationError("experiment.oracle_rel_tol must be positive");
}

namespace {

std::string where(const std::string& origin, const toml::node& n, const std::string& key) {
  std::ostringstream os;
  os << origin << ":" << n.source().begin.line << ": '" << key << "'";
  return os.str();
}

double num(const toml::node& n, const std::string& origin, const std::string& key) {
  if (auto v = n.value<double>()) return *v;
  throw ValidationError(where(origin, n, key) + " must be a number");
}

std::string str(const toml::node& n, const std::string& origin, const std::string& key) {
  if (auto v = n.value<std::string>()) return *v;
  throw ValidationError(where(origin, n, key) + " must be a string");
}

bool boolean(const toml::node& n, const std::string& origin, const std::string& key) {
  if (auto v = n.value<bool>()) return *v;
  throw ValidationError(where(origin, n, key) + " must be a boolean");
}

std::vector<double> num_list(const toml::node& n, const std::string& origin, const std::string& key) {
  const auto* arr = n.as_array();
  if (!arr) return {num(n, origin, key)};
  std::vector<double> out;
  for (const auto& e : *arr) out.push_back(num(e, origin, key));
  return out;
}

std::vector<std::string> str_list(const toml::node& n, const std::string& origin, const std::string& key) {
  const auto* arr = n.as_array();
  if (!arr) return {str(n, origin, key)};
  std::vector<std::string> out;
  for (const auto& e : *arr) out.push_back(str(e, origin, key));
  return out;
}

using Setter = std::function<void(const toml::node&, const std::string&)>;

void apply(const toml::table& tbl, const std::string& section, const std::map<std::string, Setter>& setters,
           const std::string& origin) {
  for (const auto& [k, v] : tbl) {
    const std::string key = section.empty() ? std::string(k.str()) : section + "." + std::string(k.str());
    auto it = setters.find(std::string(k.str()));
    if (it == setters.end()) throw ValidationError(where(origin, v, key) + " is not a recognized key");
    it->second(v, key);
  }
}

void parse_sweep(const toml::table& t, Sweep& s, const std::string& section, const std::string& origin) {
  apply(t, section,
        {{"variable", [&](auto& n, auto& k) { s.variable = str(n, origin, k); }},
         {"lo", [&](auto& n, auto& k) { s.lo = num(n, origin, k); }},
         {"hi", [&](auto& n, auto& k) { s.hi = num(n, origin, k); }},
         {"points", [&](auto& n, auto& k) { s.points = static_cast<int>(num(n, origin, k)); }},
         {"scale",
          [&](auto& n, auto& k) {
            const std::string v = str(n, origin, k);
            if (v != "log" && v != "linear") throw ValidationError(where(origin, n, k) + " must be 'log' or 'linear'");
            s.log = v == "log";
          }}},
        origin);
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& origin) {
  toml::table root;
  try {
    root = toml::parse(text, origin);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << origin << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw ValidationError(os.str());
  }
  Scenario s;
  const std::string& o = origin;
  auto section = [&](const toml::node& n, const std::string& k) -> const toml::table& {
    const auto* t = n.as_table();
    if (!t) throw ValidationError(where(o, n, k) + " must be a table");
    return *t;
  };
  apply(root, "",
        {{"name", [&](auto& n, auto& k) { s.name = str(n, o, k); }},
         {"kind", [&](auto& n, auto& k) { s.kind = parse_experiment_kind(str(n, o, k)); }},
         {"seed", [&](auto& n, auto& k) { s.seed = static_cast<std::uint64_t>(num(n, o, k)); }},
         {"beam",
          [&](auto& n, auto& k) {
            apply(section(n, k), k,
                  {{"lambda", [&](auto& m, auto& q) { s.beam.lambda = num(m, o, q); }},
                   {"w0", [&](auto& m, auto& q) { s.beam.w0 = num(m, o, q); }}},
                  o);
          }},
         {"geometry",
          [&](auto& n, auto& k) {
            apply(section(n, k), k,
                  {{"Ltr", [&](auto& m, auto& q) { s.ellipse.Ltr = num(m, o, q); }},
                   {"d3", [&](auto& m, auto& q) { s.ellipse.d3 = num(m, o, q); }},
                   {"x_irs", [&](auto& m, auto& q) { s.x_irs = num(m, o, q); }}},
                  o);
          }},
         {"irs",
          [&](auto& n, auto& k) {
            apply(section(n, k), k,
                  {{"technology",
                    [&](auto& m, auto& q) {
                      const std::string v = str(m, o, q);
                      if (v == "mirror")
                        s.irs.technology = Technology::mirror;
                      else if (v == "metamaterial")
                        s.irs.technology = Technology::metamaterial;
                      else
                        throw ValidationError(where(o, m, q) + " must be 'mirror' or 'metamaterial'");
                    }},
                   {"profile", [&](auto& m, auto& q) { s.irs.profile = parse_profile(str(m, o, q)); }},
                   {"Lx", [&](auto& m, auto& q) { s.irs.Lx = num(m, o, q); }},
                   {"Ly", [&](auto& m, auto& q) { s.irs.Ly = num(m, o, q); }},
                   {"f", [&](auto& m, auto& q) { s.irs.f = num(m, o, q); }}},
                  o);
          }},
         {"lens",
          [&](auto& n, auto& k) {
            apply(section(n, k), k, {{"a", [&](auto& m, auto& q) { s.lens.a = num(m, o, q); }}}, o);
          }},
         {"channel",
          [&](auto& n, auto& k) {
            apply(section(n, k), k,
                  {{"kappa_db_per_m", [&](auto& m, auto& q) { s.channel.kappa_db_per_m = num(m, o, q); }},
                   {"Cn2", [&](auto& m, auto& q) { s.channel.Cn2 = num(m, o, q); }},
                   {"zeta", [&](auto& m, auto& q) { s.channel.zeta = num(m, o, q); }},
                   {"P_tot", [&](auto& m, auto& q) { s.channel.P_tot = num(m, o, q); }},
                   {"N0_dbm_per_mhz", [&](auto& m, auto& q) { s.channel.N0_dbm_per_mhz = num(m, o, q); }},
                   {"bandwidth_hz", [&](auto& m, auto& q) { s.channel.bandwidth_hz = num(m, o, q); }},
                   {"gamma_th_db", [&](auto& m, auto& q) { s.channel.gamma_th = db_to_linear(num(m, o, q)); }}},
                  o);
          }},
         {"sweep", [&](auto& n, auto& k) { parse_sweep(section(n, k), s.sweep, k, o); }},
         {"sweep2", [&](auto& n, auto& k) { parse_sweep(section(n, k), s.sweep2, k, o); }},
         {"experiment",
          [&](auto& n, auto& k) {
            apply(section(n, k), k,
                  {{"designs", [&](auto& m, auto& q) { s.designs = str_list(m, o, q); }},
                   {"lengths", [&](auto& m, auto& q) { s.lengths = num_list(m, o, q); }},
                   {"gamma_th_db", [&](auto& m, auto& q) { s.gamma_th_db = num_list(m, o, q); }},
                   {"oracle", [&](auto& m, auto& q) { s.oracle = boolean(m, o, q); }},
                   {"oracle_tier",
                    [&](auto& m, auto& q) {
                      const std::string v = str(m, o, q);
                      if (v == "erf_form")
                        s.oracle_options.tier = OracleTier::erf_form;
                      else if (v == "quadrature")
                        s.oracle_options.tier = OracleTier::quadrature;
                      else
                        throw ValidationError(where(o, m, q) + " must be 'erf_form' or 'quadrature'");
                    }},
                   {"lens_mode",
                    [&](auto& m, auto& q) {
                      const std::string v = str(m, o, q);
                      if (v == "square")
                        s.oracle_options.lens_mode = LensMode::square;
                      else if (v == "disc")
                        s.oracle_options.lens_mode = LensMode::disc;
                      else
                        throw ValidationError(where(o, m, q) + " must be 'square' or 'disc'");
                    }},
                   {"oracle_rel_tol", [&](auto& m, auto& q) { s.oracle_options.rel_tol = num(m, o, q); }}},
                  o);
          }}},
        o);
  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

std::vector<std::string> builtin_names() { return {"fig3", "fig4", "fig5a", "fig5b", "fig6a", "fig6b"}; }

Scenario builtin_scenario(const std::string& name, bool fast) {
  Scenario s;
  s.name = name + (fast ? "-fast" : "");
  if (name == "fig3") {
    s.kind = ExperimentKind::regime_map;
    s.sweep = {"Sigma_lens", 1e-5, 1e-1, fast ? 20 : 40, true};
    s.sweep2 = {"Sigma_irs", 1e-8, 10.0, fast ? 20 : 40, true};
    s.oracle_options.rel_tol = 1e-6;
  } else if (name == "fig4") {
    s.kind = ExperimentKind::gml_vs_size;
    s.sweep = {"L", 1e-4, 10.0, fast ? 21 : 81, true};
    s.designs = {"LP", "QP", "FP", "mir"};
    s.irs.f = 0.25 * s.ellipse.d3;
  } else if (name == "fig5a") {
    s.kind = ExperimentKind::outage_vs_snr;
    s.sweep = {"snr_db", 0.0, 140.0, fast ? 29 : 141, false};
    s.lengths = {0.01, 0.07, 1.0};
  } else if (name == "fig5b") {
    s.kind = ExperimentKind::outage_vs_snr;
    s.sweep = {"snr_db", 0.0, 140.0, fast ? 29 : 141, false};
    s.designs = {"LP", "QP", "FP"};
  } else if (name == "fig6a") {
    s.kind = ExperimentKind::outage_vs_position;
    s.beam.w0 = 7e-3;
    s.sweep = {"x", -0.5 * s.ellipse.d3, 0.5 * s.ellipse.d3, fast ? 41 : 201, false};
    s.lengths = {1e-3, 0.03, 1.0};
    s.gamma_th_db = {0.0, -85.0};
  } else if (name == "fig6b") {
    s.kind = ExperimentKind::outage_vs_position;
    s.sweep = {"x", -0.5 * s.ellipse.d3, 0.5 * s.ellipse.d3, fast ? 41 : 201, false};
    s.designs = {"LP", "QP", "FP", "mir"};
    s.irs.f = s.ellipse.d3 / 5.0;
  } else {
    throw ValidationError("unknown built-in scenario '" + name + "' (expected fig3, fig4, fig5a, fig5b, fig6a, fig6b)");
  }
  s.validate();
  return s;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class T, class F>
std::string list(const std::vector<T>& v, F f) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
  return out + "]";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> resolved_parameters(const Scenario& s) {
  auto q = [](const std::string& v) { return "\"" + v + "\""; };
  const auto sweep = [&](const std::string& p, const Sweep& w, std::vector<std::pair<std::string, std::string>>& out) {
    out.emplace_back(p + ".variable", q(w.variable));
    out.emplace_back(p + ".lo", fmt(w.lo));
    out.emplace_back(p + ".hi", fmt(w.hi));
    out.emplace_back(p + ".points", std::to_string(w.points));
    out.emplace_back(p + ".scale", q(w.log ? "log" : "linear"));
  };
  std::vector<std::pair<std::string, std::string>> r;
  r.emplace_back("name", q(s.name));
  r.emplace_back("kind", q(to_string(s.kind)));
  r.emplace_back("seed", std::to_string(s.seed));
  r.emplace_back("beam.lambda", fmt(s.beam.lambda));
  r.emplace_back("beam.w0", fmt(s.beam.w0));
  r.emplace_back("geometry.Ltr", fmt(s.ellipse.Ltr));
  r.emplace_back("geometry.d3", fmt(s.ellipse.d3));
  r.emplace_back("geometry.x_irs", fmt(s.x_irs));
  r.emplace_back("irs.technology", q(s.irs.is_mirror() ? "mirror" : "metamaterial"));
  r.emplace_back("irs.profile", q(to_string(s.irs.profile)));
  r.emplace_back("irs.Lx", fmt(s.irs.Lx));
  r.emplace_back("irs.Ly", fmt(s.irs.Ly));
  r.emplace_back("irs.f", fmt(s.irs.f));
  r.emplace_back("lens.a", fmt(s.lens.a));
  r.emplace_back("channel.kappa_db_per_m", fmt(s.channel.kappa_db_per_m));
  r.emplace_back("channel.Cn2", fmt(s.channel.Cn2));
  r.emplace_back("channel.zeta", fmt(s.channel.zeta));
  r.emplace_back("channel.P_tot", fmt(s.channel.P_tot));
  r.emplace_back("channel.N0_dbm_per_mhz", fmt(s.channel.N0_dbm_per_mhz));
  r.emplace_back("channel.bandwidth_hz", fmt(s.channel.bandwidth_hz));
  r.emplace_back("channel.gamma_th_db", fmt(linear_to_db(s.channel.gamma_th)));
  sweep("sweep", s.sweep, r);
  sweep("sweep2", s.sweep2, r);
  r.emplace_back("experiment.designs", list(s.designs, q));
  r.emplace_back("experiment.lengths", list(s.lengths, fmt));
  r.emplace_back("experiment.gamma_th_db", list(s.gamma_th_db, fmt));
  r.emplace_back("experiment.oracle", s.oracle ? "true" : "false");
  r.emplace_back("experiment.oracle_tier",
                 q(s.oracle_options.tier == OracleTier::erf_form ? "erf_form" : "quadrature"));
  r.emplace_back("experiment.lens_mode", q(s.oracle_options.lens_mode == LensMode::square ? "square" : "disc"));
  r.emplace_back("experiment.oracle_rel_tol", fmt(s.oracle_options.rel_tol));
  return r;
}

std::string to_scenario_text(const Scenario& s) {
  std::ostringstream os;
  std::string current;
  for (const auto& [k, v] : resolved_parameters(s)) {
    const auto dot = k.find('.');
    const std::string sec = dot == std::string::npos ? "" : k.substr(0, dot);
    const std::string key = dot == std::string::npos ? k : k.substr(dot + 1);
    if (sec != current) {
      os << "\n[" << sec << "]\n";
      current = sec;
    }
    os << key << " = " << v << "\n";
  }
  return os.str();
}

}  // namespace fsoirs
