#include "shocklab/seed_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/interpolators/makima.hpp>
#include <boost/math/tools/minima.hpp>

#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"

namespace shocklab {

void ModelParams::validate() const {
  if (!std::isfinite(g2)) throw ConfigError("g2 must be finite");
  if (!(r0 >= 2.0)) throw ConfigError("r0 must be >= 2");
  if (!(delta > 0.0) || !(delta < r0 / 4.0)) throw ConfigError("delta must satisfy 0 < delta < r0/4");
}

struct Profile::Table {
  std::vector<double> s;
  std::vector<double> v;
  boost::math::interpolators::makima<std::vector<double>> spline;

  Table(std::vector<double> s_in, std::vector<double> v_in)
      : s(s_in), v(v_in), spline(std::move(s_in), std::move(v_in)) {}
};

Profile Profile::zero() { return Profile(); }

Profile Profile::sine(double amplitude) {
  Profile p;
  p.family_ = ProfileFamily::kSine;
  p.amplitude_ = amplitude;
  return p;
}

Profile Profile::bump(double amplitude) {
  Profile p;
  p.family_ = ProfileFamily::kBump;
  p.amplitude_ = amplitude;
  return p;
}

Profile Profile::ramp(double amplitude) {
  Profile p;
  p.family_ = ProfileFamily::kRamp;
  p.amplitude_ = amplitude;
  return p;
}

Profile Profile::table(std::vector<double> s, std::vector<double> values) {
  if (s.size() != values.size()) throw InvalidSeedError("seed table columns differ in length");
  if (s.size() < 4) throw InvalidSeedError("seed table needs at least four rows");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(values[i])) throw InvalidSeedError("seed table has non-finite entries");
    if (i > 0 && !(s[i] > s[i - 1])) throw InvalidSeedError("seed table abscissae must increase strictly");
  }
  if (s.front() > 0.0 || s.back() < 1.0) throw InvalidSeedError("seed table must cover [0, 1]");
  Profile p;
  p.family_ = ProfileFamily::kTable;
  p.amplitude_ = 1.0;
  p.table_ = std::make_shared<const Table>(std::move(s), std::move(values));
  return p;
}

double Profile::value(double s) const {
  if (!(s > 0.0 && s < 1.0)) {
    if (family_ == ProfileFamily::kTable && (s == 0.0 || s == 1.0)) return amplitude_ * table_->spline(s);
    if (family_ == ProfileFamily::kRamp && s == 1.0) return amplitude_;
    return 0.0;
  }
  switch (family_) {
    case ProfileFamily::kZero: return 0.0;
    case ProfileFamily::kSine: return amplitude_ * std::sin(std::numbers::pi * s);
    case ProfileFamily::kBump: return amplitude_ * std::exp(4.0 - 1.0 / (s * (1.0 - s)));
    case ProfileFamily::kRamp: return amplitude_ * s;
    case ProfileFamily::kTable: return amplitude_ * table_->spline(s);
  }
  return 0.0;
}

double Profile::derivative(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) return 0.0;
  switch (family_) {
    case ProfileFamily::kZero: return 0.0;
    case ProfileFamily::kSine: return amplitude_ * std::numbers::pi * std::cos(std::numbers::pi * s);
    case ProfileFamily::kBump: {
      if (s == 0.0 || s == 1.0) return 0.0;
      double w = s * (1.0 - s);
      return amplitude_ * std::exp(4.0 - 1.0 / w) * (1.0 - 2.0 * s) / (w * w);
    }
    case ProfileFamily::kRamp: return amplitude_;
    case ProfileFamily::kTable: return amplitude_ * table_->spline.prime(s);
  }
  return 0.0;
}

Profile Profile::scaled(double factor) const {
  Profile p = *this;
  p.amplitude_ *= factor;
  return p;
}

void SeedProfile::validate() const {
  double scale = 0.0;
  for (int i = 0; i <= 256; ++i) {
    double s = i / 256.0;
    double v = phi1.value(s);
    double d = phi1.derivative(s);
    double w = phi2.value(s);
    if (!std::isfinite(v) || !std::isfinite(d) || !std::isfinite(w)) throw InvalidSeedError("seed is not finite on [0, 1]");
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(phi1.value(0.0)) > 1e-12 * std::max(scale, 1.0)) throw InvalidSeedError("phi1(0) must vanish");
}

SeedProfile make_seed(const std::string& family, double amplitude) {
  SeedProfile seed;
  if (family == "bump") {
    seed.phi1 = Profile::bump(amplitude);
  } else if (family == "sine") {
    seed.phi1 = Profile::sine(amplitude);
  } else if (family == "ramp") {
    seed.phi1 = Profile::ramp(amplitude);
  } else if (family == "zero") {
    seed.phi1 = Profile::zero();
  } else {
    throw ConfigError("unknown seed family '" + family + "'");
  }
  return seed;
}

SeedProfile load_seed_csv(const std::filesystem::path& path) {
  CsvTable t = read_csv(path);
  std::vector<double> s, v1, v2;
  for (const auto& row : t.rows) {
    if (row.size() < 2) throw InvalidSeedError("seed table rows need s and phi1");
    s.push_back(row[0]);
    v1.push_back(row[1]);
    v2.push_back(row.size() > 2 ? row[2] : 0.0);
  }
  SeedProfile seed;
  seed.phi1 = Profile::table(s, v1);
  bool has_phi2 = std::any_of(v2.begin(), v2.end(), [](double x) { return x != 0.0; });
  seed.phi2 = has_phi2 ? Profile::table(s, v2) : Profile::zero();
  seed.validate();
  return seed;
}

ShockMargin shock_margin(const SeedProfile& seed, const ModelParams& params, int grid_points) {
  if (grid_points < 16) throw ConfigError("shock_margin needs at least 16 grid intervals");
  auto f = [&](double s) { return 3.0 * params.g2 * seed.phi1.value(s) * seed.phi1.derivative(s); };

  std::vector<double> vals(grid_points + 1);
  for (int i = 0; i <= grid_points; ++i) {
    vals[i] = f(double(i) / grid_points);
    if (!std::isfinite(vals[i])) throw InvalidSeedError("shock margin integrand is not finite");
  }

  std::vector<int> minima;
  for (int i = 0; i <= grid_points; ++i) {
    bool left = i == 0 || vals[i] <= vals[i - 1];
    bool right = i == grid_points || vals[i] <= vals[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  if (minima.size() > 3) minima.resize(3);

  ShockMargin out;
  out.value = vals[minima.front()];
  out.s_min = double(minima.front()) / grid_points;
  for (int i : minima) {
    double lo = double(std::max(i - 1, 0)) / grid_points;
    double hi = double(std::min(i + 1, grid_points)) / grid_points;
    auto [s, v] = boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits / 2);
    if (v < out.value) {
      out.value = v;
      out.s_min = s;
    }
  }
  out.fires = out.value <= -1.0;
  return out;
}

std::optional<double> predicted_shock_time(double margin, double r0) {
  if (!(margin < 0.0)) return std::nullopt;
  double a = std::abs(margin);
  double t_abs = r0 * a / (r0 + a);
  if (t_abs < 1.0) return std::nullopt;
  return -t_abs;
}

SeedProfile scale_to_margin(const SeedProfile& seed, const ModelParams& params, double target) {
  if (!(target < 0.0)) throw ConfigError("target margin must be negative");
  double base = shock_margin(seed, params).value;
  if (!(base < 0.0)) throw InvalidSeedError("seed has no compressive region; cannot reach a negative margin");
  SeedProfile out = seed;
  out.phi1 = seed.phi1.scaled(std::sqrt(target / base));
  return out;
}

}  // namespace shocklab
