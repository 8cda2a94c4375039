// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fso_irs_lab/errors.hpp"
#include "fso_irs_lab/experiments.hpp"

using namespace fsoirs;

namespace {

std::filesystem::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FSO_IRS_LAB_OUT"); env && *env) return env;
  return "fso-irs-lab-out";
}

void report(const RunReport& r) {
  std::cout << "output: " << r.directory.string() << "\n";
  for (const auto& l : r.summary) std::cout << "  " << l << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical IRS and relay link analysis: GML regimes, outage, placement"};
  app.set_version_flag("--version", FSO_IRS_LAB_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  int jobs = 1;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out,-o", out, "Output root (default: $FSO_IRS_LAB_OUT or ./fso-irs-lab-out)");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](const std::uint64_t& v) { seed = v, seed_set = true; }, "Seed recorded in the manifest");

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario TOML file")->required();

  std::string figure;
  bool fast = false;
  auto* repro = app.add_subcommand("repro", "Reproduce a built-in figure scenario");
  repro->add_option("figure", figure, "fig3, fig4, fig5a, fig5b, fig6a or fig6b")
      ->required()
      ->check(CLI::IsMember(builtin_names()));
  repro->add_flag("--fast", fast, "Reduced resolution");

  int grid = 20;
  auto* validate = app.add_subcommand("validate-oracle", "Regime map against the oracle plus quadrature cross-check");
  validate->add_option("--grid", grid, "Regime map resolution per axis")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions opt;
    opt.jobs = jobs;
    opt.out = output_root(out);
    auto finish = [&](Scenario s) {
      if (seed_set) s.seed = seed;
      report(run_experiment(s, opt));
    };
    if (*run) {
      finish(load_scenario(scenario_path));
    } else if (*repro) {
      finish(builtin_scenario(figure, fast));
    } else if (*validate) {
      Scenario map = builtin_scenario("fig3", false);
      map.name = "validate-oracle";
      map.sweep.points = grid;
      map.sweep2.points = grid;
      finish(map);
      Scenario cross = map;
      cross.name = "validate-oracle-quadrature";
      cross.kind = ExperimentKind::oracle_validation;
      finish(cross);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
