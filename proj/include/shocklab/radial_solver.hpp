#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "shocklab/data_builder.hpp"
#include "shocklab/seed_profiles.hpp"
#include "shocklab/wave_speed.hpp"

namespace shocklab {

/// Fields on a window that moves inward with the incoming null cones.
///
/// Nodes sit at fixed x = r + t, so r_i(t) = x_lo + i dx - t. Everything left of the
/// window is inside the incoming cone (trivial), everything right of it is the quiet exterior.
struct FieldState {
  double t = 0.0;
  double x_lo = 0.0;
  double dx = 0.0;
  long step_index = 0;
  std::vector<double> p;    ///< dt phi
  std::vector<double> q;    ///< dr phi
  std::vector<double> phi;

  std::size_t size() const { return p.size(); }
  double r(std::size_t i) const { return x_lo + static_cast<double>(i) * dx - t; }
  double x(std::size_t i) const { return x_lo + static_cast<double>(i) * dx; }
};

struct SolverOptions {
  double cfl = 0.8;
  double viscosity = 1e-3;           ///< fourth-difference damping coefficient
  double viscosity_threshold = 0.1;  ///< damping is switched on where |p_{i+1} - p_{i-1}|/2 > threshold * max|p|
  double dt_floor_fraction = 1e-3;   ///< steps shorter than this fraction of the first step count as CFL collapse
};

/// MacCormack predictor-corrector on the co-moving window, alternating the
/// forward/backward ordering every step. Second order in smooth regions.
class RadialSolver {
 public:
  RadialSolver(const ModelParams& params, const SolverOptions& options);

  FieldState initial_state(const InitialData& data) const;

  /// cfl * dx / (1 + max c): the characteristic speeds in the co-moving frame are 1 -+ c.
  double cfl_dt(const FieldState& state) const;

  /// Advances by dt. Throws HyperbolicityError if any stage leaves the hyperbolic regime.
  FieldState step(const FieldState& state, double dt) const;

  const ModelParams& params() const { return params_; }
  const SolverOptions& options() const { return options_; }

 private:
  void rhs(const FieldState& s, double t, bool forward, std::vector<double>& rp, std::vector<double>& rq,
           std::vector<double>& rphi) const;
  void damp(std::vector<double>& p, std::vector<double>& q) const;

  ModelParams params_;
  SolverOptions options_;
};

/// Callback invoked after each accepted step.
class EvolutionObserver {
 public:
  virtual ~EvolutionObserver() = default;
  virtual void on_start(const FieldState& /*state*/) {}
  /// Return false to request a stop.
  virtual bool on_step(const FieldState& before, const FieldState& after) = 0;
  /// Called once with the last state, whatever the stop reason.
  virtual void on_finish(const FieldState& /*state*/) {}
  /// Observers that track the inverse density report its current minimum here.
  virtual std::optional<double> mu_min() const { return std::nullopt; }
};

enum class StopReason { kReachedEnd, kMuThreshold, kObserverStop, kCflCollapse };

const char* to_string(StopReason reason);

struct EvolveOptions {
  double t_end = -1.0;
  double stop_mu = 0.05;
  int snapshot_count = 20;
  long max_steps = 100'000'000;
};

struct Trajectory {
  std::vector<FieldState> snapshots;  ///< initial, evenly spaced in time, final
  FieldState final_state;
  StopReason reason = StopReason::kReachedEnd;
  long steps = 0;
  double first_dt = 0.0;
  double last_dt = 0.0;
};

/// Steps from `initial` to t_end (landing on it exactly) unless an observer reports
/// mu_min < stop_mu, an observer asks to stop, or the time step collapses.
Trajectory evolve(const RadialSolver& solver, const FieldState& initial, const EvolveOptions& options,
                  std::span<EvolutionObserver* const> observers = {});

/// Rows t,r,p,q,phi for every snapshot node.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

}  // namespace shocklab
