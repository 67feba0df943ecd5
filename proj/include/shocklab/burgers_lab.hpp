#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shocklab {

/// Inviscid Burgers u_t + u u_x = 0 written with incoming-style labels:
/// the ray from x0 carries label l = -u0(x0) and sits at x0 + u0(x0) t.
struct BurgersProblem {
  std::function<double(double)> u0;
  std::function<double(double)> du0;
  double x_min = 0.0;
  double x_max = 6.283185307179586;
  std::string name;
};

/// "sine" (sin x on [0, 2 pi]) or "linear" (u0 = -slope x on [-1, 1]).
BurgersProblem make_burgers_problem(const std::string& name, double slope = 1.0);

/// t* = -1 / min u0'. Empty if u0' >= 0 everywhere. Dense sampling plus Brent refinement.
std::optional<double> burgers_shock_time(const BurgersProblem& problem);

/// Exact inverse density -1/u0'(x0) - t. Throws InfiniteInitialDensityError when |u0'(x0)| <= 1e-14.
double burgers_mu(const BurgersProblem& problem, double x0, double t);

struct BurgersFanReport {
  std::size_t n_rays = 0;
  double window_lo = 0.0;        ///< x0 range of the compressive window
  double window_hi = 0.0;
  double t_star = 0.0;           ///< closed form
  double t_detect = 0.0;         ///< first adjacent-ray crossing, located within the step
  double dt = 0.0;
  double t_check = 0.0;          ///< time of the mu comparison
  double max_mu_error = 0.0;     ///< max |mu_fan - mu_exact| over rays at t_check
  std::vector<double> x0;
  std::vector<double> mu_fan;
  std::vector<double> mu_exact;
};

/// Traces n_rays straight characteristics from the window {u0' <= window_fraction * min u0'},
/// uniform in x0, measures mu by the shared label-differencing routine at t_check, then steps
/// with dt until two neighbouring rays cross.
BurgersFanReport burgers_fan_validate(const BurgersProblem& problem, std::size_t n_rays, double t_check,
                                      double dt = 1e-3, double window_fraction = 0.9);

void write_burgers_report_json(const BurgersFanReport& report, const std::filesystem::path& path);

}  // namespace shocklab
