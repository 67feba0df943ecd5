#include <cmath>
#include <numbers>

#include <doctest.h>

#include "../support/generators.hpp"
#include "shocklab/burgers_lab.hpp"
#include "shocklab/errors.hpp"

using namespace shocklab;

TEST_CASE("linear Burgers profile: the fan is exact") {
  BurgersProblem prob = make_burgers_problem("linear", 1.0);
  REQUIRE(burgers_shock_time(prob).has_value());
  CHECK(*burgers_shock_time(prob) == doctest::Approx(1.0).epsilon(1e-14));
  testing::Gen gen(41);
  for (int k = 0; k < 20; ++k) {
    double x0 = gen.uniform(-1.0, 1.0), t = gen.uniform(0.0, 0.99);
    CHECK(burgers_mu(prob, x0, t) == doctest::Approx(1.0 - t).epsilon(1e-14));
  }
  BurgersFanReport rep = burgers_fan_validate(prob, 64, 0.5);
  CHECK(rep.max_mu_error < 1e-13);
  CHECK(std::abs(rep.t_detect - 1.0) <= rep.dt);
}

TEST_CASE("sine Burgers: mu within 1e-6 at 1024 rays, shock within one step") {
  BurgersProblem prob = make_burgers_problem("sine");
  BurgersFanReport rep = burgers_fan_validate(prob, 1024, 0.5);
  CHECK(rep.t_star == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.max_mu_error <= 1e-6);
  CHECK(std::abs(rep.t_detect - 1.0) <= rep.dt);
  CHECK(rep.window_lo < std::numbers::pi);
  CHECK(rep.window_hi > std::numbers::pi);
}

TEST_CASE("sine Burgers: label differencing converges at second order") {
  BurgersProblem prob = make_burgers_problem("sine");
  double coarse = burgers_fan_validate(prob, 256, 0.5).max_mu_error;
  double fine = burgers_fan_validate(prob, 1024, 0.5).max_mu_error;
  double order = std::log(coarse / fine) / std::log(1023.0 / 255.0);
  CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("flat initial slope gives an infinite initial inverse density") {
  BurgersProblem prob = make_burgers_problem("sine");
  CHECK_THROWS_AS(burgers_mu(prob, std::numbers::pi / 2, 0.0), InfiniteInitialDensityError);
  CHECK_THROWS_AS(make_burgers_problem("square"), ConfigError);
  CHECK_THROWS_AS(burgers_fan_validate(prob, 2, 0.5), ResolutionError);
  CHECK_THROWS_AS(burgers_fan_validate(prob, 64, 1.5), ConfigError);
}
