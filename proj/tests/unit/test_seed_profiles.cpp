#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <doctest.h>

#include "../support/generators.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/seed_profiles.hpp"

using namespace shocklab;
using std::numbers::pi;

namespace {

/// Independent oracle: brute-force minimum of 3 G'' phi1 phi1' with analytic bump derivative.
double bump_margin_oracle(double amplitude, double g2) {
  double best = 0.0;
  const int n = 1'000'000;
  for (int i = 1; i < n; ++i) {
    double s = static_cast<double>(i) / n;
    double e = std::exp(4.0 - 1.0 / (s * (1.0 - s)));
    double v = amplitude * e;
    double d = v * (1.0 - 2.0 * s) / (s * s * (1.0 - s) * (1.0 - s));
    best = std::min(best, 3.0 * g2 * v * d);
  }
  return best;
}

}  // namespace

TEST_CASE("sine seed of unit amplitude has margin -3 pi / 2 at s = 3/4") {
  ModelParams mp{1.0, 0.05, 10.0};
  ShockMargin m = shock_margin(make_seed("sine", 1.0), mp);
  CHECK(m.value == doctest::Approx(-1.5 * pi).epsilon(1e-12));
  CHECK(m.s_min == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(m.fires);
}

TEST_CASE("bump margin matches a brute-force oracle") {
  ModelParams mp{1.0, 0.05, 10.0};
  ShockMargin m = shock_margin(make_seed("bump", 1.0), mp);
  CHECK(m.value == doctest::Approx(bump_margin_oracle(1.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("margin is invariant under grid refinement and quadratic in the amplitude") {
  testing::Gen gen(11);
  for (int k = 0; k < 25; ++k) {
    double a = gen.uniform(0.1, 3.0);
    double g2 = gen.uniform(0.2, 2.0);
    ModelParams mp{g2, 0.05, 10.0};
    for (const char* fam : {"sine", "bump"}) {
      SeedProfile seed = make_seed(fam, a);
      double coarse = shock_margin(seed, mp, 64).value;
      double fine = shock_margin(seed, mp, 16384).value;
      CHECK(coarse == doctest::Approx(fine).epsilon(1e-9));
      double unit = shock_margin(make_seed(fam, 1.0), mp).value;
      CHECK(fine == doctest::Approx(a * a * unit).epsilon(1e-9));
    }
  }
}

TEST_CASE("scale_to_margin hits the requested margin") {
  testing::Gen gen(12);
  ModelParams mp{1.0, 0.05, 10.0};
  for (int k = 0; k < 20; ++k) {
    double target = gen.uniform(-10.0, -0.1);
    SeedProfile s = scale_to_margin(make_seed("bump", 1.0), mp, target);
    CHECK(shock_margin(s, mp).value == doctest::Approx(target).epsilon(1e-9));
  }
  CHECK_THROWS_AS(scale_to_margin(make_seed("bump", 1.0), mp, 0.5), ConfigError);
  CHECK_THROWS_AS(scale_to_margin(make_seed("zero", 0.0), mp, -1.0), InvalidSeedError);
}

TEST_CASE("predicted shock time agrees with a root of the leading-order mu expansion") {
  const double r0 = 10.0, P = -1.5 * pi;
  // mu(t) = 1 + (1/|t| - 1/r0) P vanishes at t*
  auto mu = [&](double t) { return 1.0 + (1.0 / std::abs(t) - 1.0 / r0) * P; };
  boost::uintmax_t iters = 200;
  auto root = boost::math::tools::toms748_solve(mu, -r0, -1e-3, boost::math::tools::eps_tolerance<double>(50), iters);
  double oracle = 0.5 * (root.first + root.second);
  auto t = predicted_shock_time(P, r0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(*t == doctest::Approx(-3.2030073).epsilon(1e-7));
  CHECK_FALSE(predicted_shock_time(-0.5, r0).has_value());
  CHECK_FALSE(predicted_shock_time(0.3, r0).has_value());
}

TEST_CASE("seeds that do not vanish at s = 0 are rejected") {
  SeedProfile s;
  s.phi1 = Profile::table({0.0, 0.3, 0.6, 1.0}, {0.5, 1.0, 0.2, 0.0});
  CHECK_THROWS_AS(s.validate(), InvalidSeedError);
  CHECK_THROWS_AS(Profile::table({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}), InvalidSeedError);
  CHECK_THROWS_AS(Profile::table({0.0, 0.5, 0.4, 1.0}, {0.0, 1.0, 1.0, 0.0}), InvalidSeedError);
  CHECK_THROWS_AS(make_seed("triangle", 1.0), ConfigError);
}

TEST_CASE("profiles vanish outside [0, 1]") {
  for (const char* fam : {"sine", "bump", "ramp"}) {
    SeedProfile s = make_seed(fam, 2.0);
    CHECK(s.phi1.value(-0.1) == 0.0);
    CHECK(s.phi1.value(1.1) == 0.0);
    CHECK(s.phi1.derivative(-0.1) == 0.0);
  }
  Profile p = Profile::sine(2.0);
  CHECK(p.value(0.25) == doctest::Approx(2.0 * std::sin(0.25 * pi)));
  CHECK(p.derivative(0.25) == doctest::Approx(2.0 * pi * std::cos(0.25 * pi)));
}

TEST_CASE("tabulated seed reproduces a sampled sine") {
  auto path = std::filesystem::temp_directory_path() / "shocklab_seed_table.csv";
  {
    std::ofstream out(path);
    out << "s,phi1\n";
    for (int i = 0; i <= 200; ++i) {
      double s = i / 200.0;
      out << s << ',' << std::sin(pi * s) << '\n';
    }
  }
  SeedProfile seed = load_seed_csv(path);
  ModelParams mp{1.0, 0.05, 10.0};
  CHECK(shock_margin(seed, mp).value == doctest::Approx(-1.5 * pi).epsilon(1e-3));
  CHECK(seed.phi1.value(0.3) == doctest::Approx(std::sin(0.3 * pi)).epsilon(1e-6));
  std::filesystem::remove(path);
}

TEST_CASE("model parameters are validated") {
  CHECK_THROWS_AS((ModelParams{1.0, 0.05, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{1.0, 3.0, 10.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{1.0, 0.0, 10.0}.validate()), ConfigError);
  CHECK_NOTHROW((ModelParams{0.0, 0.05, 10.0}.validate()));
}
