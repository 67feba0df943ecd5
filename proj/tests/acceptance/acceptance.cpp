// Acceptance gate: one PASS/FAIL line per primary criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "shocklab/burgers_lab.hpp"
#include "shocklab/csv.hpp"
#include "shocklab/pipeline.hpp"

using namespace shocklab;

namespace {

constexpr double kShockMargin = -1.5 * std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig shock_config(double margin, double delta, double r0, int cells_per_delta) {
  RunConfig cfg;
  cfg.set("seed.target_margin", format_number(margin));
  cfg.set("model.delta", format_number(delta));
  cfg.set("model.r0", format_number(r0));
  cfg.set("grid.cells_per_delta", std::to_string(cells_per_delta));
  return cfg;
}

/// Largest over smallest of a list of positive numbers.
double spread(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

bool report(int id, const std::string& title, Verdict& v, double secs) {
  std::printf("%s C%d %s:%s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.str().c_str(), secs);
  std::fflush(stdout);
  return v.pass;
}

const std::vector<std::string> kResidualNames{"mu_expansion", "lb_mu_expansion", "l_psi_expansion", "t_psi_expansion",
                                              "psi_expansion"};

}  // namespace

int main() {
  int failures = 0;
  auto total = std::chrono::steady_clock::now();

  // 1. Burgers oracle
  {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    BurgersFanReport rep = burgers_fan_validate(make_burgers_problem("sine"), 1024, 0.5, 1e-3);
    double secs = seconds_since(t0);
    v.detail << " max|mu_fan - mu_exact| = " << rep.max_mu_error << ", t_detect = " << rep.t_detect
             << " (dt = " << rep.dt << ")";
    v.require(rep.max_mu_error <= 1e-6, "mu error <= 1e-6");
    v.require(std::abs(rep.t_detect - 1.0) <= rep.dt, "|t_detect - 1| <= dt");
    v.require(secs < 5.0, "runtime < 5 s");
    failures += !report(1, "Burgers fan oracle", v, secs);
  }

  // 2. Radiation bounds over delta x r0
  {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    std::vector<double> r1, r2;
    for (double delta : {0.1, 0.05, 0.025}) {
      for (double r0 : {5.0, 10.0, 20.0}) {
        RunConfig cfg;
        cfg.set("model.delta", format_number(delta));
        cfg.set("model.r0", format_number(r0));
        SimulationSetup s = setup_from_config(cfg);
        RadiationRatios rr = verify_radiation_bounds(build_initial_data(s.seed, s.params, s.grid));
        r1.push_back(rr.ratio1);
        r2.push_back(rr.ratio2);
      }
    }
    double secs = seconds_since(t0);
    v.detail << " ratio1 in [" << *std::min_element(r1.begin(), r1.end()) << ", "
             << *std::max_element(r1.begin(), r1.end()) << "] spread " << spread(r1) << "; ratio2 in ["
             << *std::min_element(r2.begin(), r2.end()) << ", " << *std::max_element(r2.begin(), r2.end())
             << "] spread " << spread(r2);
    v.require(spread(r1) < 2.0 && spread(r2) < 2.0, "spread < 2");
    v.require(secs < 10.0, "runtime < 10 s");
    failures += !report(2, "radiation ratios uniformly bounded", v, secs);
  }

  // The canonical shock run feeds criteria 3, 4, 5 and 7.
  auto t_shock = std::chrono::steady_clock::now();
  SimulationResult shock = simulate(setup_from_config(shock_config(kShockMargin, 0.05, 10.0, 512)));
  double shock_secs = seconds_since(t_shock);

  // 3. Shock criterion and timing
  {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    const ShockReport& rep = shock.report;
    double t_obs = rep.t_star_observed.value_or(NAN), t_pred = rep.t_star_predicted.value_or(NAN);
    double rel = std::abs(t_obs - t_pred) / std::abs(t_pred);
    v.detail << " margin " << rep.margin << ", fired " << rep.fired << ", t*_obs = " << t_obs
             << ", t*_pred = " << t_pred << ", rel diff " << rel << ", run " << shock_secs << " s";
    v.require(rep.fired, "detector fires");
    v.require(t_obs < -1.0, "t* before -1");
    v.require(rel <= 0.05, "t* within 5%");
    v.require(shock_secs < 300.0, "shock run < 5 min");

    auto t_calm = std::chrono::steady_clock::now();
    SimulationResult calm = simulate(setup_from_config(shock_config(-0.5, 0.05, 10.0, 512)));
    double calm_secs = seconds_since(t_calm);
    v.detail << "; margin -0.5: fired " << calm.report.fired << ", reached t = " << calm.trajectory.final_state.t
             << ", mu_m = " << calm.report.mu_min_final << ", run " << calm_secs << " s";
    v.require(!calm.report.fired, "margin -0.5 does not fire");
    v.require(calm.trajectory.reason == StopReason::kReachedEnd, "margin -0.5 run reaches t = -1");
    v.require(calm_secs < 300.0, "no-shock run < 5 min");
    failures += !report(3, "shock criterion and timing", v, seconds_since(t0) + shock_secs);
  }

  // 4. Residual stability under delta-halving and r0-doubling
  {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    std::map<std::string, std::map<std::string, double>> norms;
    auto run = [&](const std::string& tag, double delta, double r0) {
      SimulationResult r = simulate(setup_from_config(shock_config(kShockMargin, delta, r0, 512)));
      norms[tag] = r.report.residual_norms;
    };
    norms["d0.05_r10"] = shock.report.residual_norms;
    run("d0.1_r10", 0.1, 10.0);
    run("d0.025_r10", 0.025, 10.0);
    run("d0.05_r20", 0.05, 20.0);

    RunConfig trivial;
    trivial.set("seed.family=zero");
    trivial.set("seed.amplitude=0");
    trivial.set("grid.cells_per_delta=128");
    trivial.set("run.t_end=-5");
    SimulationResult triv = simulate(setup_from_config(trivial));

    const std::vector<std::pair<std::string, std::string>> pairs{
        {"d0.1_r10", "d0.05_r10"}, {"d0.05_r10", "d0.025_r10"}, {"d0.05_r10", "d0.05_r20"}};
    for (const auto& name : kResidualNames) {
      v.detail << " " << name << ":";
      for (const char* tag : {"d0.1_r10", "d0.05_r10", "d0.025_r10", "d0.05_r20"}) {
        double x = norms[tag].at(name);
        v.detail << " " << tag << "=" << x;
        v.require(std::isfinite(x) && x > 0.0, name + " finite and nonzero at " + tag);
      }
      for (const auto& [a, b] : pairs) {
        double ratio = norms[a].at(name) / norms[b].at(name);
        v.require(ratio <= 3.0 && ratio >= 1.0 / 3.0, name + " stable within 3x between " + a + " and " + b);
      }
      double z = triv.report.residual_norms.at(name);
      v.detail << " trivial=" << z << ";";
      v.require(z == 0.0, name + " zero on the trivial run");
    }
    failures += !report(4, "expansion residuals finite, trivial-zero, delta- and r0-stable", v,
                        seconds_since(t0) + shock_secs);
  }

  // 5. Trapping
  {
    Verdict v;
    v.detail << " samples with mu < 0.1: " << shock.trapping.checked << ", violations " << shock.trapping.violations
             << ", max t^2 Lb mu = " << shock.trapping.worst;
    v.require(shock.trapping.checked > 0, "some samples reach mu < 0.1");
    v.require(shock.trapping.violations == 0, "zero violations");
    failures += !report(5, "trapping once mu < 1/10", v, 0.0);
  }

  // 6. Scattering limit
  {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    std::vector<double> r0s{10.0, 20.0, 40.0, 80.0};
    ScatteringTable tab = scattering_probe(setup_from_config(shock_config(kShockMargin, 0.05, 10.0, 512)).seed, 1.0,
                                           0.05, r0s, 512);
    v.detail << " E0 differences";
    for (double d : tab.e0_differences) v.detail << " " << d;
    v.detail << "; ratios";
    for (double q : tab.difference_ratios) {
      v.detail << " " << q;
      v.require(std::abs(q - 2.0) <= 0.2 * 2.0, "difference ratio within 20% of 2");
    }
    for (std::size_t k = 1; k < tab.e0_differences.size(); ++k) {
      v.require(std::abs(tab.e0_differences[k]) < std::abs(tab.e0_differences[k - 1]), "differences shrink");
    }
    v.detail << "; |T psi|^2 at r0=80 vs limit rel error " << tab.rel_error_last;
    v.require(tab.rel_error_last <= 1e-3, "rel error <= 1e-3");
    failures += !report(6, "scattering limit", v, seconds_since(t0));
  }

  // 7. Solver quality
  {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    // self-convergence on dt phi at a pre-shock time
    const double t_conv = 1.1 * shock.report.t_star_predicted.value_or(-3.2);
    std::vector<FieldState> finals;
    for (int cpd : {128, 256, 512}) {
      SimulationSetup s = setup_from_config(shock_config(kShockMargin, 0.05, 10.0, cpd));
      RadialSolver solver(s.params, s.solver);
      EvolveOptions eo;
      eo.t_end = t_conv;
      finals.push_back(evolve(solver, solver.initial_state(build_initial_data(s.seed, s.params, s.grid)), eo).final_state);
    }
    auto diff = [&](const FieldState& coarse, const FieldState& fine) {
      double e = 0.0;
      for (std::size_t i = 0; i < coarse.size(); ++i) e = std::max(e, std::abs(coarse.p[i] - fine.p[2 * i]));
      return e;
    };
    double e1 = diff(finals[0], finals[1]), e2 = diff(finals[1], finals[2]);
    double order = std::log2(e1 / e2);
    v.detail << " self-convergence on dt phi at t = " << t_conv << ": |p128 - p256| = " << e1
             << ", |p256 - p512| = " << e2 << ", order " << order;
    v.require(order >= 1.8, "order >= 1.8");

    v.detail << "; mu_geom vs mu_trans max rel diff " << shock.mu_check.max_rel_diff << " over "
             << shock.mu_check.compared << " samples";
    v.require(shock.mu_check.compared > 0 && shock.mu_check.max_rel_diff <= 0.01, "mu routes within 1%");

    RunConfig lin = shock_config(kShockMargin, 0.05, 10.0, 256);
    lin.set("model.g2=0");
    lin.set("seed.target_margin=");
    lin.set("seed.amplitude", format_number(shock.data.seed.phi1.amplitude()));
    SimulationResult linear = simulate(setup_from_config(lin));
    double worst = 0.0;
    for (const auto& row : linear.fan.samples) {
      for (const auto& s : row) worst = std::max(worst, std::abs(s.mu_geom - 1.0));
    }
    v.detail << "; G''=0 max |mu - 1| = " << worst << " up to t = " << linear.trajectory.final_state.t;
    v.require(worst <= 1e-6, "linear mu = 1 +- 1e-6");
    v.require(linear.trajectory.reason == StopReason::kReachedEnd, "linear run reaches t = -1");
    failures += !report(7, "solver quality", v, seconds_since(t0));
  }

  std::printf("%s: %d of 7 primary criteria failed (%.1f s)\n", failures ? "FAIL" : "PASS", failures,
              seconds_since(total));
  return failures ? 1 : 0;
}
