#include "shocklab/wave_speed.hpp"

#include <cmath>

#include "shocklab/errors.hpp"

namespace shocklab {

WaveSpeed wave_speed(double p, double g2, double r, double t) {
  double a = 1.0 + 3.0 * g2 * p * p;
  if (!(a > kHyperbolicityFloor)) throw HyperbolicityError(r, p, t);
  WaveSpeed w;
  w.c = 1.0 / std::sqrt(a);
  double c2 = w.c * w.c;
  w.dc2_drho = -3.0 * g2 * c2 * c2;
  return w;
}

NullDerivatives null_derivatives(double g2, double r, double p, double q, double dr_q, double dr_p) {
  double c = wave_speed(p, g2, r).c;
  NullDerivatives nd;
  nd.lb_phi = p - c * q;
  nd.lb_p = c * c * (dr_q + 2.0 * q / r) - c * dr_p;
  // Lb c = dc/dp * Lb p with dc/dp = -3 G'' p c^3
  double lb_c = -3.0 * g2 * p * c * c * c * nd.lb_p;
  double lb_q = dr_p - c * dr_q;
  nd.lb2_phi = nd.lb_p - c * lb_q - q * lb_c;
  return nd;
}

}  // namespace shocklab
