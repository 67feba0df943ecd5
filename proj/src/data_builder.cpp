#include "shocklab/data_builder.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/wave_speed.hpp"

namespace shocklab {

Phi0Profile::Phi0Profile(std::vector<double> s, std::vector<double> value, std::vector<double> slope,
                         std::vector<double> curvature)
    : s_(std::move(s)), value_(std::move(value)), slope_(std::move(slope)), curvature_(std::move(curvature)) {}

namespace {

struct HermiteSpan {
  std::size_t k;
  double h;
  double t;
};

HermiteSpan locate(const std::vector<double>& s, double x) {
  std::size_t n = s.size() - 1;
  double h = 1.0 / static_cast<double>(n);
  double pos = x / h;
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(pos), n - 1);
  return {k, h, pos - static_cast<double>(k)};
}

double hermite(double y0, double y1, double d0, double d1, double h, double t) {
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace

double Phi0Profile::value(double s) const {
  if (s <= 0.0 || s_.empty()) return 0.0;
  s = std::min(s, 1.0);
  auto [k, h, t] = locate(s_, s);
  return hermite(value_[k], value_[k + 1], slope_[k], slope_[k + 1], h, t);
}

double Phi0Profile::slope(double s) const {
  if (s <= 0.0 || s_.empty()) return 0.0;
  s = std::min(s, 1.0);
  auto [k, h, t] = locate(s_, s);
  return hermite(slope_[k], slope_[k + 1], curvature_[k], curvature_[k + 1], h, t);
}

double Phi0Profile::curvature(double s) const {
  if (s < 0.0 || s_.empty()) return 0.0;
  s = std::min(s, 1.0);
  auto [k, h, t] = locate(s_, s);
  return (1.0 - t) * curvature_[k] + t * curvature_[k + 1];
}

Phi0Profile solve_phi0_ode(const SeedProfile& seed, const ModelParams& params, int n_samples, ProfileForm form) {
  params.validate();
  if (n_samples < 64) throw ResolutionError("profile ODE needs at least 64 samples");
  const double amp = std::sqrt(params.delta) / params.r0;
  const bool full = form == ProfileForm::kFull;
  const double damping = full ? params.delta / params.r0 : 0.0;
  const double source = full ? std::pow(params.delta, 2) / std::pow(params.r0, 4) : 0.0;
  const double g2 = full ? params.g2 : 0.0;

  using State = std::array<double, 2>;
  auto rhs_at = [&](const State& y, double s) {
    double psi0 = amp * seed.phi1.value(s);
    double c = wave_speed(psi0, g2, params.r0 + params.delta * s, -params.r0).c;
    return seed.phi1.derivative(s) / c - damping * y[1] + source * seed.phi2.value(s);
  };
  auto system = [&](const State& y, State& dy, double s) {
    dy[0] = y[1];
    dy[1] = rhs_at(y, s);
  };

  boost::numeric::odeint::runge_kutta4<State> stepper;
  const double h = 1.0 / n_samples;
  std::vector<double> s(n_samples + 1), v(n_samples + 1), d(n_samples + 1), dd(n_samples + 1);
  State y{0.0, 0.0};
  for (int i = 0; i <= n_samples; ++i) {
    double si = i * h;
    s[i] = si;
    v[i] = y[0];
    d[i] = y[1];
    dd[i] = rhs_at(y, si);
    if (i < n_samples) stepper.do_step(system, y, si, h);
  }
  return Phi0Profile(std::move(s), std::move(v), std::move(d), std::move(dd));
}

InitialData build_initial_data(const SeedProfile& seed, const ModelParams& params, const GridSpec& grid,
                               ProfileForm form) {
  params.validate();
  grid.validate();
  seed.validate();
  const double delta = params.delta, r0 = params.r0;
  if (grid.r_min > r0 - 2.0 * delta * (1 - 1e-12) || grid.r_max < r0 + 2.0 * delta * (1 - 1e-12)) {
    throw ConfigError("grid must cover [r0 - 2 delta, r0 + 2 delta]");
  }
  const double cells_per_delta = delta / grid.dr();
  if (cells_per_delta < 64.0 - 1e-9) throw ResolutionError("grid needs at least 64 cells across the pulse");

  // Profile samples land on grid nodes when the grid is aligned with r0 (pulse_grid).
  int n_samples = std::max(64, 4 * static_cast<int>(std::lround(cells_per_delta)));

  InitialData data;
  data.params = params;
  data.grid = grid;
  data.seed = seed;
  data.profile = solve_phi0_ode(seed, params, n_samples, form);

  const double a32 = std::pow(delta, 1.5) / r0;
  const double a12 = std::sqrt(delta) / r0;
  const double am12 = 1.0 / (std::sqrt(delta) * r0);
  const double r_edge = r0 + delta;
  const double phi_edge = a32 * data.profile.value(1.0);
  data.tail_amplitude = phi_edge * r_edge;

  const int n = grid.n_nodes();
  data.r.resize(n);
  data.phi.assign(n, 0.0);
  data.dtphi.assign(n, 0.0);
  data.drphi.assign(n, 0.0);
  data.drr_phi.assign(n, 0.0);
  data.dr_dtphi.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double r = grid.r(i);
    data.r[i] = r;
    double s = (r - r0) / delta;
    if (std::abs(s) < 1e-10) s = 0.0;
    if (std::abs(s - 1.0) < 1e-10) s = 1.0;
    if (s <= 0.0) continue;
    if (s <= 1.0) {
      data.phi[i] = a32 * data.profile.value(s);
      data.dtphi[i] = a12 * seed.phi1.value(s);
      data.drphi[i] = a12 * data.profile.slope(s);
      data.drr_phi[i] = am12 * data.profile.curvature(s);
      data.dr_dtphi[i] = am12 * seed.phi1.derivative(s);
    } else {
      data.phi[i] = data.tail_amplitude / r;
      data.drphi[i] = -data.tail_amplitude / (r * r);
      data.drr_phi[i] = 2.0 * data.tail_amplitude / (r * r * r);
    }
  }
  return data;
}

RadiationRatios verify_radiation_bounds(const InitialData& data) {
  const double delta = data.params.delta, r0 = data.params.r0;
  RadiationRatios out;
  for (std::size_t i = 0; i < data.r.size(); ++i) {
    double s = (data.r[i] - r0) / delta;
    if (s < -1e-10 || s > 1.0 + 1e-10) continue;
    NullDerivatives nd = null_derivatives(data.params.g2, data.r[i], data.dtphi[i], data.drphi[i], data.drr_phi[i],
                                          data.dr_dtphi[i]);
    out.ratio1 = std::max(out.ratio1, std::abs(nd.lb_phi));
    out.ratio2 = std::max(out.ratio2, std::abs(nd.lb2_phi));
  }
  out.ratio1 *= r0 * r0 / std::pow(delta, 1.5);
  out.ratio2 *= r0 * r0 * r0 / std::pow(delta, 1.5);
  return out;
}

void write_initial_data_csv(const InitialData& data, const std::filesystem::path& path) {
  CsvWriter w(path, {"r", "phi", "dtphi", "drphi"});
  for (std::size_t i = 0; i < data.r.size(); ++i) w.row({data.r[i], data.phi[i], data.dtphi[i], data.drphi[i]});
}

}  // namespace shocklab
