#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shocklab/optical_geometry.hpp"
#include "shocklab/seed_profiles.hpp"

namespace shocklab {

struct ShockReport {
  bool fired = false;
  std::optional<double> t_star_observed;   ///< zero of the a + b/t fit to the tail of mu_m
  std::optional<double> t_star_predicted;  ///< closed-form leading-order prediction
  double ub_star = 0.0;                    ///< label of the ray carrying mu_m at the last step
  double margin = 0.0;
  double s_star = 0.0;
  double mu_min_final = 1.0;
  double fit_a = 0.0;
  double fit_b = 0.0;
  std::size_t fit_points = 0;
  std::string diagnostic;
  std::map<std::string, double> residual_norms;
};

/// Fires when mu_m fell below stop_mu and the tail fit crosses zero at t* <= -1.
/// The fit uses the last quarter of the steps with mu_m < 0.5.
ShockReport detect_shock(const CharacteristicFan& fan, const ShockMargin& margin, const ModelParams& params,
                         double stop_mu);

/// Residual norms are sups over the reported rays at recorded times with mu_m > mu_floor.
/// Closer to the shock the front is under-resolved and the norms measure the grid, not the expansion.
inline constexpr double kResidualMuFloor = 0.3;

/// sup |mu - 1 + (1/t + 1/r0) r0^2 Lb mu(-r0)| t^2 / delta.
double residual_mu_expansion(const CharacteristicFan& fan, double mu_floor = kResidualMuFloor);

/// sup |t^2 Lb mu(t) - r0^2 Lb mu(-r0)| |t| / delta.
double residual_lb_mu_expansion(const CharacteristicFan& fan, double mu_floor = kResidualMuFloor);

/// sup |(-t) X(t) - r0 X(-r0)| |t| / delta^k for X = L psi0, T psi0 (k = 1/2) and psi0 (k = 3/2).
struct PsiResiduals {
  double l_psi = 0.0;
  double t_psi = 0.0;
  double psi = 0.0;
};
PsiResiduals residual_lpsi_expansion(const CharacteristicFan& fan, double mu_floor = kResidualMuFloor);

/// Samples with mu < mu_threshold must satisfy t^2 Lb mu <= -1/4 + slack.
struct TrappingReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst = -1e300;  ///< largest t^2 Lb mu among checked samples
};
TrappingReport trapping_check(const CharacteristicFan& fan, double slack = 0.05, double mu_threshold = 0.1);

/// Fills report.residual_norms with all residual operators.
void attach_residuals(ShockReport& report, const CharacteristicFan& fan, double mu_floor = kResidualMuFloor);

void write_shock_report_json(const ShockReport& report, const std::filesystem::path& path);

}  // namespace shocklab
