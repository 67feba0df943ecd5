#pragma once

#include <filesystem>
#include <vector>

#include "shocklab/seed_profiles.hpp"
#include "shocklab/stencils.hpp"

namespace shocklab {

enum class ProfileForm {
  kFull,     ///< phi0'' + (delta/r0) phi0' = phi1'/c + (delta^2/r0^4) phi2
  kReduced,  ///< phi0'' = phi1'/c
};

/// Solution of the profile ODE for phi0 on [0, 1] with phi0(0) = phi0'(0) = 0.
class Phi0Profile {
 public:
  Phi0Profile() = default;
  Phi0Profile(std::vector<double> s, std::vector<double> value, std::vector<double> slope, std::vector<double> curvature);

  /// Cubic Hermite interpolation between samples; zero for s <= 0, clamped at s = 1.
  double value(double s) const;
  double slope(double s) const;
  double curvature(double s) const;

  const std::vector<double>& s() const { return s_; }
  const std::vector<double>& values() const { return value_; }
  const std::vector<double>& slopes() const { return slope_; }

 private:
  std::vector<double> s_, value_, slope_, curvature_;
  std::vector<double> curvature_slope_;
};

/// Classical RK4 with fixed step 1/n_samples (n_samples >= 64).
/// Throws HyperbolicityError if 1 + 3 G'' psi0^2 <= 0 anywhere on the profile.
Phi0Profile solve_phi0_ode(const SeedProfile& seed, const ModelParams& params, int n_samples,
                           ProfileForm form = ProfileForm::kFull);

/// Initial slice at t = -r0 on a uniform grid.
///
/// Inside the incoming cone (r <= r0) every column is exactly zero. Past r0 + delta the
/// field is the static tail A/r matching phi at the outer edge, with dtphi = 0.
struct InitialData {
  ModelParams params;
  GridSpec grid;
  std::vector<double> r;
  std::vector<double> phi;
  std::vector<double> dtphi;
  std::vector<double> drphi;
  std::vector<double> drr_phi;   ///< analytic d^2 phi / dr^2 (from the profile ODE)
  std::vector<double> dr_dtphi;  ///< analytic d(dtphi)/dr
  double tail_amplitude = 0.0;   ///< A in phi = A/r beyond r0 + delta
  Phi0Profile profile;
  SeedProfile seed;
};

/// Requires grid coverage of [r0 - 2 delta, r0 + 2 delta] and >= 64 cells across the annulus.
InitialData build_initial_data(const SeedProfile& seed, const ModelParams& params, const GridSpec& grid,
                               ProfileForm form = ProfileForm::kFull);

struct RadiationRatios {
  double ratio1 = 0.0;  ///< max |Lb phi| r0^2 / delta^{3/2} over the annulus
  double ratio2 = 0.0;  ///< max |Lb^2 phi| r0^3 / delta^{3/2} over the annulus
};

/// Evaluates the incoming-null derivatives of the initial slice on r0 <= r <= r0 + delta.
RadiationRatios verify_radiation_bounds(const InitialData& data);

/// Writes r,phi,dtphi,drphi.
void write_initial_data_csv(const InitialData& data, const std::filesystem::path& path);

}  // namespace shocklab
