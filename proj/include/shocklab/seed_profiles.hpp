#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shocklab {

/// Physical parameters of the radial problem.
struct ModelParams {
  double g2 = 1.0;      ///< second derivative of the quasilinear coupling; 0 gives the linear wave equation
  double delta = 0.05;  ///< pulse width
  double r0 = 10.0;     ///< initial radius of the pulse front

  /// Throws ConfigError unless r0 >= 2 and 0 < delta < r0/4.
  void validate() const;
};

enum class ProfileFamily { kZero, kSine, kBump, kRamp, kTable };

/// A scalar profile on s in [0, 1]; identically zero outside.
///
/// Presets are analytic. Tabulated profiles use modified Akima interpolation,
/// which is C^1 and free of overshoot for monotone data.
class Profile {
 public:
  static Profile zero();
  /// A sin(pi s).
  static Profile sine(double amplitude);
  /// A exp(4 - 1/(s(1-s))), a smooth compact bump with peak A at s = 1/2.
  static Profile bump(double amplitude);
  /// A s. Not zero at s = 1, so only meaningful as a formal seed in tests.
  static Profile ramp(double amplitude);
  static Profile table(std::vector<double> s, std::vector<double> values);

  double value(double s) const;
  double derivative(double s) const;

  Profile scaled(double factor) const;
  ProfileFamily family() const { return family_; }
  double amplitude() const { return amplitude_; }

 private:
  struct Table;

  ProfileFamily family_ = ProfileFamily::kZero;
  double amplitude_ = 0.0;
  std::shared_ptr<const Table> table_;
};

/// Radiation data seed: phi1 drives the pulse, phi2 is the optional source term of the profile ODE.
struct SeedProfile {
  Profile phi1 = Profile::bump(1.0);
  Profile phi2 = Profile::zero();

  /// Throws InvalidSeedError when phi1(0) != 0 or the profile is not finite on [0, 1].
  void validate() const;
};

/// Builds a preset seed by family name: "bump", "sine", "ramp" or "zero".
SeedProfile make_seed(const std::string& family, double amplitude);

/// Reads a seed table with columns s,phi1[,phi2]; a header line is optional.
SeedProfile load_seed_csv(const std::filesystem::path& path);

struct ShockMargin {
  double value = 0.0;   ///< min over s of 3 G'' phi1 phi1'
  double s_min = 0.0;   ///< minimizer
  bool fires = false;   ///< value <= -1
};

/// Dense sampling on `grid_points` intervals, then Brent refinement around the three best local minima.
ShockMargin shock_margin(const SeedProfile& seed, const ModelParams& params, int grid_points = 4096);

/// Leading-order shock time t* = -r0 |P| / (r0 + |P|) for margin P < 0.
/// Empty when P >= 0 or when |t*| < 1 (no shock before t = -1).
std::optional<double> predicted_shock_time(double margin, double r0);

/// Rescales phi1 so that the shock margin equals `target` (< 0). The margin is quadratic in the amplitude.
SeedProfile scale_to_margin(const SeedProfile& seed, const ModelParams& params, double target);

}  // namespace shocklab
