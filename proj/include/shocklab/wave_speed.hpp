#pragma once

#include <limits>

namespace shocklab {

/// Smallest admissible 1 + 3 G'' p^2 before the equation is declared non-hyperbolic.
inline constexpr double kHyperbolicityFloor = 1e-6;

struct WaveSpeed {
  double c = 1.0;          ///< (1 + 3 G'' p^2)^{-1/2}
  double dc2_drho = 0.0;   ///< d(c^2)/d(p^2) = -3 G'' c^4
};

/// Throws HyperbolicityError (reporting r, p, t) when 1 + 3 G'' p^2 <= kHyperbolicityFloor.
WaveSpeed wave_speed(double p, double g2, double r = std::numeric_limits<double>::quiet_NaN(),
                     double t = std::numeric_limits<double>::quiet_NaN());

/// Derivatives of phi along the incoming null direction Lb = dt - c dr, from spatial data on one slice.
struct NullDerivatives {
  double lb_phi = 0.0;   ///< p - c q
  double lb_p = 0.0;     ///< c^2 (dr q + 2 q / r) - c dr p
  double lb2_phi = 0.0;  ///< (1 + 3 G'' c^3 p q) Lb p - c dr p + c^2 dr q
};

/// p = dt phi, q = dr phi. Time derivatives come from the equation itself.
NullDerivatives null_derivatives(double g2, double r, double p, double q, double dr_q, double dr_p);

}  // namespace shocklab
