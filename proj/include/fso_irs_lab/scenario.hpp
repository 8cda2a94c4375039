// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fso_irs_lab/geometry.hpp"
#include "fso_irs_lab/gml_models.hpp"
#include "fso_irs_lab/turbulence_channel.hpp"
#include "fso_irs_lab/wave_optics_oracle.hpp"

namespace fsoirs {

enum class ExperimentKind { gml_vs_size, outage_vs_snr, outage_vs_position, regime_map, oracle_validation };

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

struct Sweep {
  std::string variable;
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;
  bool log = false;

  std::vector<double> values() const;
  void validate(const std::string& where) const;
};

struct Scenario {
  std::string name = "custom";
  ExperimentKind kind = ExperimentKind::gml_vs_size;
  BeamParams beam;
  Ellipse ellipse;
  // x-coordinate of the IRS / relay for experiments at a fixed position.
  double x_irs = 200.0;
  IrsConfig irs;
  LensConfig lens;
  ChannelParams channel;
  Sweep sweep{"L", 1e-4, 10.0, 61, true};
  Sweep sweep2{"Sigma_irs", 1e-8, 10.0, 40, true};
  std::vector<std::string> designs{"LP"};
  std::vector<double> lengths{1.0};
  std::vector<double> gamma_th_db{0.0};
  bool oracle = true;
  OracleOptions oracle_options;
  std::uint64_t seed = 1;

  void validate() const;
};

Scenario parse_scenario(std::string_view text, const std::string& origin = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

/// Design from a label ("LP", "QP", "FP", "mir") using the scenario's focal parameter.
Design design_from_label(const std::string& label, double f);

std::vector<std::string> builtin_names();
Scenario builtin_scenario(const std::string& name, bool fast);

/// Resolved parameters as ordered key/value pairs for manifests.
std::vector<std::pair<std::string, std::string>> resolved_parameters(const Scenario& s);
/// Scenario text that parses back to the same resolved parameters.
std::string to_scenario_text(const Scenario& s);

}  // namespace fsoirs
