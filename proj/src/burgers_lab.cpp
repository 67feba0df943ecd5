#include "shocklab/burgers_lab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <nlohmann/json.hpp>

#include "shocklab/errors.hpp"
#include "shocklab/optical_geometry.hpp"

namespace shocklab {

BurgersProblem make_burgers_problem(const std::string& name, double slope) {
  BurgersProblem p;
  p.name = name;
  if (name == "sine") {
    p.u0 = [](double x) { return std::sin(x); };
    p.du0 = [](double x) { return std::cos(x); };
    p.x_min = 0.0;
    p.x_max = 2.0 * std::numbers::pi;
  } else if (name == "linear") {
    p.u0 = [slope](double x) { return -slope * x; };
    p.du0 = [slope](double) { return -slope; };
    p.x_min = -1.0;
    p.x_max = 1.0;
  } else {
    throw ConfigError("unknown Burgers initial profile '" + name + "'");
  }
  return p;
}

namespace {

struct SlopeMin {
  double x;
  double value;
};

SlopeMin min_slope(const BurgersProblem& p) {
  const int n = 4096;
  double h = (p.x_max - p.x_min) / n;
  int best = 0;
  double best_v = p.du0(p.x_min);
  for (int i = 1; i <= n; ++i) {
    double v = p.du0(p.x_min + i * h);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = p.x_min + std::max(best - 1, 0) * h;
  double hi = p.x_min + std::min(best + 1, n) * h;
  auto [x, v] = boost::math::tools::brent_find_minima(p.du0, lo, hi, std::numeric_limits<double>::digits / 2);
  if (v < best_v) return {x, v};
  return {p.x_min + best * h, best_v};
}

/// Walks from x_start towards x_end until du0 exceeds level, then brackets the crossing.
double window_edge(const BurgersProblem& p, double x_start, double x_end, double level) {
  const int n = 2048;
  double h = (x_end - x_start) / n;
  auto g = [&](double x) { return p.du0(x) - level; };
  double prev = x_start;
  for (int i = 1; i <= n; ++i) {
    double x = x_start + i * h;
    if (g(x) > 0.0) {
      boost::uintmax_t iters = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(52);
      auto [a, b] = boost::math::tools::toms748_solve(g, std::min(prev, x), std::max(prev, x), tol, iters);
      return 0.5 * (a + b);
    }
    prev = x;
  }
  return x_end;
}

}  // namespace

std::optional<double> burgers_shock_time(const BurgersProblem& problem) {
  SlopeMin m = min_slope(problem);
  if (!(m.value < 0.0)) return std::nullopt;
  return -1.0 / m.value;
}

double burgers_mu(const BurgersProblem& problem, double x0, double t) {
  double d = problem.du0(x0);
  // slopes at rounding level (cos at pi/2) count as zero
  if (std::abs(d) <= 1e-14) throw InfiniteInitialDensityError("u0'(x0) = 0: initial inverse density is infinite");
  return -1.0 / d - t;
}

BurgersFanReport burgers_fan_validate(const BurgersProblem& problem, std::size_t n_rays, double t_check, double dt,
                                      double window_fraction) {
  if (n_rays < 3) throw ResolutionError("the Burgers fan needs at least three rays");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(window_fraction > 0.0 && window_fraction < 1.0)) throw ConfigError("window_fraction must lie in (0, 1)");
  SlopeMin m = min_slope(problem);
  if (!(m.value < 0.0)) throw ConfigError("initial profile has no compressive region");
  const double t_star = -1.0 / m.value;
  if (!(t_check >= 0.0 && t_check < t_star)) throw ConfigError("t_check must lie in [0, t*)");

  BurgersFanReport rep;
  rep.n_rays = n_rays;
  rep.t_star = t_star;
  rep.dt = dt;
  rep.t_check = t_check;
  const double level = window_fraction * m.value;
  rep.window_lo = window_edge(problem, m.x, problem.x_min, level);
  rep.window_hi = window_edge(problem, m.x, problem.x_max, level);

  std::vector<double> x0(n_rays), u(n_rays), labels(n_rays), ones(n_rays, 1.0), pos(n_rays);
  for (std::size_t i = 0; i < n_rays; ++i) {
    x0[i] = rep.window_lo + (rep.window_hi - rep.window_lo) * static_cast<double>(i) / static_cast<double>(n_rays - 1);
    u[i] = problem.u0(x0[i]);
    labels[i] = -u[i];
  }
  for (std::size_t i = 0; i < n_rays; ++i) pos[i] = x0[i] + u[i] * t_check;
  rep.x0 = x0;
  rep.mu_fan = inverse_density(labels, pos, ones);
  rep.mu_exact.resize(n_rays);
  for (std::size_t i = 0; i < n_rays; ++i) {
    rep.mu_exact[i] = burgers_mu(problem, x0[i], t_check);
    rep.max_mu_error = std::max(rep.max_mu_error, std::abs(rep.mu_fan[i] - rep.mu_exact[i]));
  }

  // step until two neighbouring rays cross; gaps are linear in t, so the crossing
  // inside the detecting step is located exactly
  rep.t_detect = std::numeric_limits<double>::quiet_NaN();
  const long max_steps = static_cast<long>(std::ceil(10.0 * t_star / dt));
  for (long k = 1; k <= max_steps; ++k) {
    double t = k * dt;
    double first = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n_rays; ++i) {
      double g0 = x0[i + 1] - x0[i];
      double du = u[i + 1] - u[i];
      if (g0 + du * t <= 0.0) first = std::min(first, -g0 / du);
    }
    if (std::isfinite(first)) {
      rep.t_detect = std::clamp(first, t - dt, t);
      break;
    }
  }
  return rep;
}

void write_burgers_report_json(const BurgersFanReport& rep, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["n_rays"] = rep.n_rays;
  j["window"] = {rep.window_lo, rep.window_hi};
  j["t_star"] = rep.t_star;
  j["t_detect"] = rep.t_detect;
  j["dt"] = rep.dt;
  j["t_check"] = rep.t_check;
  j["max_mu_error"] = rep.max_mu_error;
  std::ofstream(path) << j.dump(2) << '\n';
}

}  // namespace shocklab
