// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fso_irs_lab/placement.hpp"
#include "fso_irs_lab/scenario.hpp"

namespace fsoirs {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Rethrows the first exception.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// "%.10g"; nan and inf spelled out.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string body() const;
};

struct RunManifest {
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string version;
  std::uint64_t seed = 0;
  std::string oracle;
  std::string timestamp;

  /// Manifest echo for CSV files; the timestamp is left out so CSV files stay byte-identical.
  std::vector<std::string> echo() const;
  /// Scenario text plus a [manifest] table including the timestamp.
  std::string text() const;
};

RunManifest make_manifest(const Scenario& s);
void write_csv(const std::filesystem::path& path, const CsvTable& t, const RunManifest& m);

struct RunOptions {
  int jobs = 1;
  std::filesystem::path out = ".";
};

struct RunReport {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;
};

RunReport run_experiment(const Scenario& s, const RunOptions& opt);

// Building blocks shared with the acceptance suite.

struct GmlRow {
  double L = 0.0;
  std::string design;
  GmlEvaluation closed;
  double oracle = 0.0;
  double rel_err = 0.0;
};

std::vector<GmlRow> gml_vs_size(const Scenario& s, int jobs);

struct RegimeCell {
  double sigma_lens = 0.0;
  double sigma_irs = 0.0;
  double E[3] = {0.0, 0.0, 0.0};
  // 0 quadratic, 1 linear, 2 saturation; -1 when the oracle failed.
  int best = -1;
  std::string status = "ok";
};

struct RegimeMap {
  int n_lens = 0;
  int n_irs = 0;
  // Row-major: index = i_lens * n_irs + j_irs.
  std::vector<RegimeCell> cells;
  double coverage = 0.0;
  // Labels never decrease along increasing Sigma_irs at fixed Sigma_lens.
  bool ordered = false;
  // 4-connected components per label (0 when absent).
  int components[3] = {0, 0, 0};
  bool contiguous() const { return components[0] <= 1 && components[1] <= 1 && components[2] <= 1; }
};

/// Normalized error max-relative form |G_i - h| / max(G_i, h) against the LP oracle at the scenario position.
RegimeMap compute_regime_map(const Scenario& s, int jobs);

struct OutageCurve {
  std::string design;
  double L = 0.0;
  double gamma_th_db = 0.0;
  double h_gml_irs = 0.0;
  std::vector<double> snr_db;
  std::vector<double> pout_irs;
  std::vector<double> pout_relay;
  std::vector<double> asym_irs;
  std::vector<double> asym_relay;
  GainPair gains_irs;
  GainPair gains_relay;
  GammaGammaParams gg_irs;
  std::array<GammaGammaParams, 2> gg_relay;
};

std::vector<OutageCurve> outage_vs_snr(const Scenario& s, int jobs);

/// Transmit SNR in dB at which a decreasing outage curve first reaches `target` (log-linear interpolation);
/// NaN when it never does.
double snr_at_outage(const std::vector<double>& snr_db, const std::vector<double>& pout, double target);
/// First SNR where curve a stops beating curve b (a below b turns to a above b); NaN when none.
double crossover_snr(const std::vector<double>& snr_db, const std::vector<double>& a, const std::vector<double>& b);

struct PositionCurve {
  std::string design;
  double L = 0.0;
  double gamma_th_db = 0.0;
  std::vector<double> x;
  std::vector<double> d1;
  std::vector<double> objective;
  std::vector<double> pout;
  std::vector<Regime> regime;
  std::vector<bool> is_optimal;
  // Regime at the scenario position, used for the closed-form placement.
  Regime placement_regime = Regime::saturation;
  PlacementResult placement;
  GridResult grid;
};

/// Admissible sweep endpoints in x after the endpoint margin.
std::pair<double, double> admissible_x(const Ellipse& e, double margin = 1e-3);

std::vector<PositionCurve> outage_vs_position(const Scenario& s, int jobs);
PositionCurve relay_position_curve(const Scenario& s, double gamma_th_db);

struct OracleCheck {
  std::string label;
  int points = 0;
  // RMS of |E_quad - E_erf| over RMS of |E_erf| across the lens points.
  double rms_rel = 0.0;
  double max_rel = 0.0;
};

/// Desk-scale quadrature vs erf-form field comparison (five configurations).
std::vector<OracleCheck> oracle_cross_validation(int points, std::uint64_t seed, int jobs);

}  // namespace fsoirs
