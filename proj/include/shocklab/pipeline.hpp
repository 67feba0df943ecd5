#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "shocklab/data_builder.hpp"
#include "shocklab/energy_monitor.hpp"
#include "shocklab/optical_geometry.hpp"
#include "shocklab/radial_solver.hpp"
#include "shocklab/run_config.hpp"
#include "shocklab/shock_detector.hpp"

namespace shocklab {

struct SimulationSetup {
  SeedProfile seed;
  ModelParams params;
  GridSpec grid;
  SolverOptions solver;
  FanOptions fan;
  EvolveOptions evolve;
};

SimulationSetup setup_from_config(const RunConfig& cfg);

struct SimulationResult {
  InitialData data;
  RadiationRatios ratios;
  ShockMargin margin;
  Trajectory trajectory;
  CharacteristicFan fan;
  ShockReport report;  ///< residual norms attached
  std::vector<EnergyObserver::Record> energies;
  TrappingReport trapping;
  MuConsistency mu_check;
  TrChibDiagnostics trchib;
};

/// Initial data, evolution with the fan and energy observers, then all diagnostics.
SimulationResult simulate(const SimulationSetup& setup);

/// Runs one CLI subcommand ("datagen", "evolve", "burgers", "sweep") writing into `out`.
/// Returns the process exit code; failures are also recorded in out/manifest.json.
int run_command(const std::string& command, const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

}  // namespace shocklab
