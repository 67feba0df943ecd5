#include "shocklab/radial_solver.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"

namespace shocklab {

RadialSolver::RadialSolver(const ModelParams& params, const SolverOptions& options)
    : params_(params), options_(options) {
  if (!(options.cfl > 0.0) || options.cfl > 0.9) throw ConfigError("cfl must lie in (0, 0.9]");
  if (options.viscosity < 0.0 || options.viscosity > 0.1) throw ConfigError("viscosity must lie in [0, 0.1]");
}

FieldState RadialSolver::initial_state(const InitialData& data) const {
  FieldState s;
  s.t = -data.params.r0;
  s.dx = data.grid.dr();
  s.x_lo = data.grid.r_min + s.t;
  s.p = data.dtphi;
  s.q = data.drphi;
  s.phi = data.phi;
  return s;
}

double RadialSolver::cfl_dt(const FieldState& state) const {
  double cmax = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    cmax = std::max(cmax, wave_speed(state.p[i], params_.g2, state.r(i), state.t).c);
  }
  return options_.cfl * state.dx / (1.0 + cmax);
}

void RadialSolver::rhs(const FieldState& s, double t, bool forward, std::vector<double>& rp, std::vector<double>& rq,
                       std::vector<double>& rphi) const {
  const std::size_t n = s.size();
  const double inv_dx = 1.0 / s.dx;
  const double g2 = params_.g2;
  const auto& p = s.p;
  const auto& q = s.q;
  // left ghost: trivial interior; right ghost: linear extrapolation (outflow)
  auto pe = [&](std::ptrdiff_t i) {
    if (i < 0) return 0.0;
    if (i >= static_cast<std::ptrdiff_t>(n)) return 2.0 * p[n - 1] - p[n - 2];
    return p[i];
  };
  auto qe = [&](std::ptrdiff_t i) {
    if (i < 0) return 0.0;
    if (i >= static_cast<std::ptrdiff_t>(n)) return 2.0 * q[n - 1] - q[n - 2];
    return q[i];
  };
  for (std::size_t k = 0; k < n; ++k) {
    auto i = static_cast<std::ptrdiff_t>(k);
    double dp, dq;
    if (forward) {
      dp = (pe(i + 1) - p[k]) * inv_dx;
      dq = (qe(i + 1) - q[k]) * inv_dx;
    } else {
      dp = (p[k] - pe(i - 1)) * inv_dx;
      dq = (q[k] - qe(i - 1)) * inv_dx;
    }
    double r = s.x(k) - t;
    double a = 1.0 + 3.0 * g2 * p[k] * p[k];
    if (!(a > kHyperbolicityFloor)) throw HyperbolicityError(r, p[k], t);
    double c2 = 1.0 / a;
    rp[k] = c2 * (dq + 2.0 * q[k] / r) - dp;
    rq[k] = dp - dq;
    rphi[k] = p[k] - q[k];
  }
}

void RadialSolver::damp(std::vector<double>& p, std::vector<double>& q) const {
  if (options_.viscosity == 0.0) return;
  const std::size_t n = p.size();
  double pmax = 0.0;
  for (double v : p) pmax = std::max(pmax, std::abs(v));
  if (pmax == 0.0) return;
  const double trigger = options_.viscosity_threshold * pmax;
  std::vector<char> on(n, 0);
  bool any = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (0.5 * std::abs(p[i + 1] - p[i - 1]) > trigger) {
      for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min(n - 1, i + 2); ++j) on[j] = 1;
      any = true;
    }
  }
  if (!any) return;
  const double eps = options_.viscosity;
  auto apply = [&](std::vector<double>& u) {
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i) {
      if (on[i]) d[i] = u[i + 2] - 4.0 * u[i + 1] + 6.0 * u[i] - 4.0 * u[i - 1] + u[i - 2];
    }
    for (std::size_t i = 0; i < n; ++i) u[i] -= eps * d[i];
  };
  apply(p);
  apply(q);
}

FieldState RadialSolver::step(const FieldState& state, double dt) const {
  const std::size_t n = state.size();
  if (n < 5) throw ResolutionError("solver window needs at least five nodes");
  const bool forward_first = (state.step_index % 2) == 0;

  std::vector<double> rp(n), rq(n), rphi(n);
  rhs(state, state.t, forward_first, rp, rq, rphi);

  FieldState pred = state;
  pred.t = state.t + dt;
  for (std::size_t i = 0; i < n; ++i) {
    pred.p[i] += dt * rp[i];
    pred.q[i] += dt * rq[i];
    pred.phi[i] += dt * rphi[i];
  }

  std::vector<double> cp(n), cq(n), cphi(n);
  rhs(pred, pred.t, !forward_first, cp, cq, cphi);

  FieldState next = state;
  next.t = state.t + dt;
  next.step_index = state.step_index + 1;
  for (std::size_t i = 0; i < n; ++i) {
    next.p[i] = 0.5 * (state.p[i] + pred.p[i] + dt * cp[i]);
    next.q[i] = 0.5 * (state.q[i] + pred.q[i] + dt * cq[i]);
    next.phi[i] = 0.5 * (state.phi[i] + pred.phi[i] + dt * cphi[i]);
  }
  damp(next.p, next.q);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(1.0 + 3.0 * params_.g2 * next.p[i] * next.p[i] > kHyperbolicityFloor)) {
      throw HyperbolicityError(next.r(i), next.p[i], next.t);
    }
  }
  return next;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kReachedEnd: return "reached_end";
    case StopReason::kMuThreshold: return "mu_threshold";
    case StopReason::kObserverStop: return "observer_stop";
    case StopReason::kCflCollapse: return "cfl_collapse";
  }
  return "unknown";
}

Trajectory evolve(const RadialSolver& solver, const FieldState& initial, const EvolveOptions& options,
                  std::span<EvolutionObserver* const> observers) {
  if (!(options.t_end > initial.t)) throw ConfigError("t_end must be later than the initial time");
  if (options.snapshot_count < 1) throw ConfigError("snapshot_count must be positive");

  Trajectory traj;
  traj.snapshots.push_back(initial);
  for (auto* obs : observers) obs->on_start(initial);

  const double t0 = initial.t;
  const double span = options.t_end - t0;
  int next_snapshot = 1;
  FieldState state = initial;
  // land exactly on t_end without a sliver step
  const double end_tol = 1e-12 * std::max(1.0, std::abs(options.t_end));

  while (state.t < options.t_end - end_tol) {
    if (traj.steps >= options.max_steps) {
      traj.reason = StopReason::kObserverStop;
      break;
    }
    double dt = solver.cfl_dt(state);
    if (traj.steps == 0) traj.first_dt = dt;
    if (dt < solver.options().dt_floor_fraction * traj.first_dt) {
      traj.reason = StopReason::kCflCollapse;
      break;
    }
    if (state.t + dt > options.t_end - end_tol) dt = options.t_end - state.t;
    FieldState next = solver.step(state, dt);
    if (state.t + dt >= options.t_end - end_tol) next.t = options.t_end;
    ++traj.steps;
    traj.last_dt = dt;

    bool keep = true;
    for (auto* obs : observers) keep = obs->on_step(state, next) && keep;
    state = std::move(next);

    while (next_snapshot < options.snapshot_count && state.t >= t0 + span * next_snapshot / options.snapshot_count) {
      traj.snapshots.push_back(state);
      ++next_snapshot;
    }

    bool mu_stop = false;
    for (auto* obs : observers) {
      if (auto mu = obs->mu_min(); mu && *mu < options.stop_mu) mu_stop = true;
    }
    if (mu_stop) {
      traj.reason = StopReason::kMuThreshold;
      break;
    }
    if (!keep) {
      traj.reason = StopReason::kObserverStop;
      break;
    }
  }
  for (auto* obs : observers) obs->on_finish(state);
  if (traj.snapshots.back().t != state.t) traj.snapshots.push_back(state);
  traj.final_state = std::move(state);
  return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  CsvWriter w(path, {"t", "r", "p", "q", "phi"});
  for (const auto& s : traj.snapshots) {
    for (std::size_t i = 0; i < s.size(); ++i) w.row({s.t, s.r(i), s.p[i], s.q[i], s.phi[i]});
  }
}

}  // namespace shocklab
