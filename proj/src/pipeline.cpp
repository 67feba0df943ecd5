#include "shocklab/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "shocklab/burgers_lab.hpp"
#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"

namespace shocklab {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_json(const json& j, const fs::path& path) { std::ofstream(path) << j.dump(2) << '\n'; }

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values()) j[k] = v;
  return j;
}

}  // namespace

SimulationSetup setup_from_config(const RunConfig& cfg) {
  SimulationSetup s;
  s.params = cfg.model();
  s.seed = cfg.seed();
  s.grid = cfg.grid();
  s.solver = cfg.solver();
  s.fan = cfg.fan();
  s.evolve = cfg.evolve();
  return s;
}

SimulationResult simulate(const SimulationSetup& setup) {
  SimulationResult res;
  res.margin = shock_margin(setup.seed, setup.params);
  res.data = build_initial_data(setup.seed, setup.params, setup.grid);
  res.ratios = verify_radiation_bounds(res.data);

  RadialSolver solver(setup.params, setup.solver);
  FanTracer tracer(setup.params, setup.fan, setup.evolve.t_end);
  EnergyObserver energy(tracer, setup.params.delta);
  std::vector<EvolutionObserver*> observers{&tracer, &energy};
  res.trajectory = evolve(solver, solver.initial_state(res.data), setup.evolve, observers);
  res.energies = energy.records();
  res.fan = tracer.take_fan();

  res.report = detect_shock(res.fan, res.margin, setup.params, setup.evolve.stop_mu);
  attach_residuals(res.report, res.fan);
  res.trapping = trapping_check(res.fan);
  res.mu_check = compare_mu_routes(res.fan);
  res.trchib = trchib_diagnostics(res.fan);
  return res;
}

namespace {

struct DatagenSummary {
  RadiationRatios ratios;
  ShockMargin margin;
};

json initial_json(const RadiationRatios& ratios, const ShockMargin& margin, const ModelParams& p) {
  return json{{"ratio1", ratios.ratio1},
              {"ratio2", ratios.ratio2},
              {"margin", margin.value},
              {"s_star", margin.s_min},
              {"margin_fires", margin.fires},
              {"t_star_predicted", optional_number(predicted_shock_time(margin.value, p.r0))}};
}

DatagenSummary do_datagen(const RunConfig& cfg, const fs::path& out) {
  SimulationSetup s = setup_from_config(cfg);
  DatagenSummary sum;
  sum.margin = shock_margin(s.seed, s.params);
  InitialData data = build_initial_data(s.seed, s.params, s.grid);
  sum.ratios = verify_radiation_bounds(data);
  write_initial_data_csv(data, out / "initial_data.csv");
  write_json(initial_json(sum.ratios, sum.margin, s.params), out / "initial_data.json");
  return sum;
}

SimulationResult do_evolve(const RunConfig& cfg, const fs::path& out) {
  SimulationSetup s = setup_from_config(cfg);
  SimulationResult res = simulate(s);
  write_initial_data_csv(res.data, out / "initial_data.csv");
  write_json(initial_json(res.ratios, res.margin, s.params), out / "initial_data.json");
  write_trajectory_csv(res.trajectory, out / "trajectory.csv");
  write_fan_csv(res.fan, out / "fan.csv", cfg.integer("fan.csv_ray_stride"));
  write_mu_min_csv(res.fan, out / "mu_min.csv");
  write_energies_csv(res.energies, out / "energies.csv");
  write_shock_report_json(res.report, out / "shock_report.json");
  json run{{"t_start", -s.params.r0},
           {"t_final", res.trajectory.final_state.t},
           {"steps", res.trajectory.steps},
           {"stop_reason", to_string(res.trajectory.reason)},
           {"first_dt", res.trajectory.first_dt},
           {"last_dt", res.trajectory.last_dt},
           {"mu_min_final", res.report.mu_min_final},
           {"fan_truncated", res.fan.any_truncated},
           {"mu_routes_max_rel_diff", res.mu_check.max_rel_diff},
           {"trchib_transport_residual", res.trchib.max_transport_residual},
           {"trapping", {{"checked", res.trapping.checked}, {"violations", res.trapping.violations}}}};
  write_json(run, out / "run.json");
  return res;
}

json do_burgers(const RunConfig& cfg, const fs::path& out) {
  BurgersProblem prob = make_burgers_problem(cfg.get("burgers.profile"));
  auto n = static_cast<std::size_t>(cfg.integer("burgers.n_rays"));
  BurgersFanReport rep = burgers_fan_validate(prob, n, cfg.number("burgers.t_check"), cfg.number("burgers.dt"),
                                              cfg.number("burgers.window_fraction"));
  write_burgers_report_json(rep, out / "burgers_report.json");
  CsvWriter w(out / "burgers_fan.csv", {"x0", "mu_fan", "mu_exact"});
  for (std::size_t i = 0; i < rep.x0.size(); ++i) w.row({rep.x0[i], rep.mu_fan[i], rep.mu_exact[i]});
  return json{{"t_star", rep.t_star}, {"t_detect", rep.t_detect}, {"max_mu_error", rep.max_mu_error}};
}

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  std::string error;
  RadiationRatios ratios;
  ShockMargin margin;
  std::optional<SimulationResult> sim;
};

int do_sweep(const RunConfig& cfg, const fs::path& out, std::ostream& log, json& manifest) {
  const std::string param = cfg.get("sweep.param");
  const std::string mode = cfg.get("sweep.mode");
  if (param != "r0" && param != "delta") throw ConfigError("sweep.param must be r0 or delta");
  if (mode != "datagen" && mode != "evolve") throw ConfigError("sweep.mode must be datagen or evolve");
  const std::vector<double> values = cfg.number_list("sweep.values");
  if (values.empty()) throw ConfigError("sweep.values is empty");

  std::vector<SweepPoint> points(values.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepPoint& pt = points[i];
      pt.value = values[i];
      fs::path dir = out / (param + "_" + format_number(values[i]));
      try {
        fs::create_directories(dir);
        RunConfig local = cfg;
        local.set("model." + param, format_number(values[i]));
        if (mode == "datagen") {
          DatagenSummary s = do_datagen(local, dir);
          pt.ratios = s.ratios;
          pt.margin = s.margin;
        } else {
          pt.sim = do_evolve(local, dir);
          pt.ratios = pt.sim->ratios;
          pt.margin = pt.sim->margin;
          // keep the summary only; the fan and trajectory are already on disk
          pt.sim->fan = CharacteristicFan{};
          pt.sim->trajectory = Trajectory{};
        }
        pt.ok = true;
      } catch (const std::exception& e) {
        pt.error = e.what();
      }
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "sweep " << param << "=" << format_number(values[i]) << ": " << (pt.ok ? "ok" : "FAILED " + pt.error)
          << '\n';
    }
  };
  unsigned workers = static_cast<unsigned>(cfg.integer("sweep.workers"));
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  CsvWriter w(out / "sweep.csv", {param, "ok", "ratio1", "ratio2", "margin", "fired", "t_star_observed",
                                  "t_star_predicted", "mu_expansion", "lb_mu_expansion", "l_psi_expansion",
                                  "t_psi_expansion", "psi_expansion", "trapping_violations"});
  json failures = json::array();
  for (const auto& pt : points) {
    if (!pt.ok) failures.push_back({{param, pt.value}, {"error", pt.error}});
    double fired = nan, tso = nan, tsp = nan, trap = nan;
    double r1 = nan, r2 = nan, r3 = nan, r4 = nan, r5 = nan;
    if (pt.sim) {
      const auto& rep = pt.sim->report;
      fired = rep.fired ? 1.0 : 0.0;
      tso = rep.t_star_observed.value_or(nan);
      tsp = rep.t_star_predicted.value_or(nan);
      r1 = rep.residual_norms.at("mu_expansion");
      r2 = rep.residual_norms.at("lb_mu_expansion");
      r3 = rep.residual_norms.at("l_psi_expansion");
      r4 = rep.residual_norms.at("t_psi_expansion");
      r5 = rep.residual_norms.at("psi_expansion");
      trap = static_cast<double>(pt.sim->trapping.violations);
    }
    w.row({pt.value, pt.ok ? 1.0 : 0.0, pt.ok ? pt.ratios.ratio1 : nan, pt.ok ? pt.ratios.ratio2 : nan,
           pt.ok ? pt.margin.value : nan, fired, tso, tsp, r1, r2, r3, r4, r5, trap});
  }

  if (param == "r0") {
    ModelParams mp = cfg.model();
    ScatteringTable table =
        scattering_probe(cfg.seed(), mp.g2, mp.delta, values, cfg.integer("grid.cells_per_delta"));
    write_scattering_json(table, out / "scattering.json");
  }
  manifest["failures"] = failures;
  return failures.empty() ? 0 : 3;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  auto start = std::chrono::steady_clock::now();
  json manifest{{"command", command}, {"version", kVersion}, {"config", config_json(cfg)}};
  int code = 0;
  fs::create_directories(out);
  try {
    if (command == "datagen") {
      DatagenSummary s = do_datagen(cfg, out);
      manifest["result"] = {{"ratio1", s.ratios.ratio1}, {"ratio2", s.ratios.ratio2}, {"margin", s.margin.value}};
    } else if (command == "evolve") {
      SimulationResult r = do_evolve(cfg, out);
      manifest["stop_reason"] = to_string(r.trajectory.reason);
      manifest["result"] = {{"fired", r.report.fired},
                            {"t_star_observed", optional_number(r.report.t_star_observed)},
                            {"t_star_predicted", optional_number(r.report.t_star_predicted)}};
    } else if (command == "burgers") {
      manifest["result"] = do_burgers(cfg, out);
    } else if (command == "sweep") {
      code = do_sweep(cfg, out, log, manifest);
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    manifest["status"] = code == 0 ? "ok" : "partial_failure";
  } catch (const HyperbolicityError& e) {
    manifest["status"] = "hyperbolicity_lost";
    manifest["error"] = {{"message", e.what()}, {"t", e.t()}, {"r", e.r()}, {"p", e.p()}};
    log << "error: " << e.what() << '\n';
    code = 4;
  } catch (const ConfigError& e) {
    manifest["status"] = "config_error";
    manifest["error"] = {{"message", e.what()}};
    log << "error: " << e.what() << '\n';
    code = 2;
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = {{"message", e.what()}};
    log << "error: " << e.what() << '\n';
    code = 1;
  }
  manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_json(manifest, out / "manifest.json");
  return code;
}

}  // namespace shocklab
