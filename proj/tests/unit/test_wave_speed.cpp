#include <cmath>

#include <doctest.h>

#include "../support/generators.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/wave_speed.hpp"

using namespace shocklab;

namespace {

/// Smooth slice data p(r), q(r) with closed-form r-derivatives.
struct Slice {
  double a, b, k;
  double p(double r) const { return a * std::cos(k * r) + 0.1 * a; }
  double q(double r) const { return b * std::sin(1.3 * k * r); }
  double dp(double r) const { return -a * k * std::sin(k * r); }
  double dq(double r) const { return 1.3 * k * b * std::cos(1.3 * k * r); }
};

double speed(double p, double g2) { return 1.0 / std::sqrt(1.0 + 3.0 * g2 * p * p); }

/// Lb(p - c q) built without the closed form: the time derivative of h(p, q) along the flow
/// (dt p from the equation, dt q = dr p) by a central difference in the direction of the flow,
/// and the radial derivative of h by a central difference in r.
double lb2_oracle(const Slice& f, double g2, double r) {
  auto h_at = [&](double p, double q) { return p - speed(p, g2) * q; };
  auto dtp = [&](double rr) {
    double c = speed(f.p(rr), g2);
    return c * c * (f.dq(rr) + 2.0 * f.q(rr) / rr);
  };
  const double e = 1e-5;
  double p = f.p(r), q = f.q(r);
  double dth = (h_at(p + e * dtp(r), q + e * f.dp(r)) - h_at(p - e * dtp(r), q - e * f.dp(r))) / (2.0 * e);
  double drh = (h_at(f.p(r + e), f.q(r + e)) - h_at(f.p(r - e), f.q(r - e))) / (2.0 * e);
  return dth - speed(p, g2) * drh;
}

}  // namespace

TEST_CASE("wave speed and its density derivative") {
  WaveSpeed w = wave_speed(0.5, 2.0);
  double c = 1.0 / std::sqrt(2.5);
  CHECK(w.c == doctest::Approx(c));
  CHECK(w.dc2_drho == doctest::Approx(-6.0 * std::pow(c, 4)));
  CHECK(wave_speed(0.0, 7.0).c == 1.0);
  CHECK(wave_speed(3.0, 0.0).c == 1.0);
}

TEST_CASE("loss of hyperbolicity reports where it happened") {
  try {
    wave_speed(1.0, -1.0, 4.5, -2.0);
    FAIL("expected HyperbolicityError");
  } catch (const HyperbolicityError& e) {
    CHECK(e.r() == 4.5);
    CHECK(e.p() == 1.0);
    CHECK(e.t() == -2.0);
  }
  CHECK_NOTHROW(wave_speed(0.5, -1.0));
}

TEST_CASE("second incoming derivative matches a characteristic finite-difference oracle") {
  testing::Gen gen(21);
  for (int k = 0; k < 40; ++k) {
    Slice f{gen.uniform(-0.6, 0.6), gen.uniform(-0.6, 0.6), gen.uniform(0.5, 3.0)};
    double g2 = gen.uniform(-0.3, 2.0);
    double r = gen.uniform(2.0, 12.0);
    NullDerivatives nd = null_derivatives(g2, r, f.p(r), f.q(r), f.dq(r), f.dp(r));
    double c = speed(f.p(r), g2);
    CHECK(nd.lb_phi == doctest::Approx(f.p(r) - c * f.q(r)).epsilon(1e-14));
    double oracle = lb2_oracle(f, g2, r);
    CHECK(nd.lb2_phi == doctest::Approx(oracle).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("incoming derivative of p matches the equation") {
  Slice f{0.4, -0.3, 1.7};
  const double g2 = 1.0, r = 5.0;
  NullDerivatives nd = null_derivatives(g2, r, f.p(r), f.q(r), f.dq(r), f.dp(r));
  double c = speed(f.p(r), g2);
  CHECK(nd.lb_p == doctest::Approx(c * c * (f.dq(r) + 2.0 * f.q(r) / r) - c * f.dp(r)).epsilon(1e-14));
}
