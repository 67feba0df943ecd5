#include "shocklab/optical_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/stencils.hpp"

namespace shocklab {

FieldSampler::FieldSampler(const FieldState& state, double g2, std::size_t lo, std::size_t hi)
    : state_(&state), g2_(g2), dp_(state.size(), 0.0), dq_(state.size(), 0.0) {
  derivative4(state.p, state.dx, dp_, lo, hi);
  derivative4(state.q, state.dx, dq_, lo, hi);
}

double FieldSampler::p_at(double x) const { return cubic_interpolate(state_->p, state_->x_lo, state_->dx, x); }

PointFields FieldSampler::at(double x) const {
  const FieldState& s = *state_;
  PointFields f;
  f.r = x - s.t;
  f.p = cubic_interpolate(s.p, s.x_lo, s.dx, x);
  f.q = cubic_interpolate(s.q, s.x_lo, s.dx, x);
  f.dr_p = cubic_interpolate(dp_, s.x_lo, s.dx, x);
  f.dr_q = cubic_interpolate(dq_, s.x_lo, s.dx, x);
  WaveSpeed w = wave_speed(f.p, g2_, f.r, s.t);
  f.c = w.c;
  f.dc2_drho = w.dc2_drho;
  return f;
}

std::vector<double> CharacteristicFan::inverse_density(std::size_t index) const {
  std::vector<double> mu;
  mu.reserve(samples.at(index).size());
  for (const auto& s : samples[index]) mu.push_back(s.mu_geom);
  return mu;
}

std::vector<double> inverse_density(std::span<const double> labels, std::span<const double> positions,
                                    std::span<const double> speed_factor) {
  if (speed_factor.size() != labels.size()) throw std::invalid_argument("inverse_density: size mismatch");
  std::vector<double> mu = label_derivative(labels, positions);
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] *= speed_factor[i];
  return mu;
}

FanTracer::FanTracer(const ModelParams& params, const FanOptions& options, double t_end)
    : params_(params), options_(options), t_end_(t_end) {
  if (options.n_rays < 17) throw ResolutionError("the fan needs at least 17 reported rays");
  if (options.buffer_fraction < 0.0) throw ConfigError("buffer_fraction must be non-negative");
  if (options.sample_count < 1) throw ConfigError("sample_count must be positive");
}

FieldSampler FanTracer::make_sampler(const FieldState& state) const {
  double xmin = rays_.front().x(), xmax = rays_.front().x();
  for (const auto& r : rays_) {
    xmin = std::min(xmin, r.x());
    xmax = std::max(xmax, r.x());
  }
  auto idx = [&](double x) { return std::floor((x - state.x_lo) / state.dx); };
  double lo = std::max(0.0, idx(xmin) - 8.0);
  double hi = std::min(static_cast<double>(state.size()), idx(xmax) + 9.0);
  return FieldSampler(state, params_.g2, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
}

double FanTracer::transport_rhs(const PointFields& f, double mu) const {
  double dr_rho = 2.0 * f.p * f.dr_p;
  double lb_rho = 2.0 * f.p * f.lb_p();
  double m = -0.5 * f.dc2_drho * (mu / f.c) * dr_rho;
  double e = f.dc2_drho * lb_rho / (2.0 * f.c * f.c);
  return m + mu * e;
}

double FanTracer::riccati_rhs(const PointFields& f, double y) const {
  double e = f.dc2_drho * 2.0 * f.p * f.lb_p() / (2.0 * f.c * f.c);
  return e * y - 0.5 * y * y;
}

std::vector<double> FanTracer::geometric_mu() const {
  std::vector<double> labels(rays_.size()), disp(rays_.size());
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    labels[i] = rays_[i].label;
    disp[i] = rays_[i].disp;
  }
  // x0 is affine in the label with unit slope, so kappa = 1 + d(disp)/d(label)
  std::vector<double> mu = label_derivative(labels, disp);
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = rays_[i].f.c * (1.0 + mu[i]);
  return mu;
}

void FanTracer::on_start(const FieldState& state) {
  const double delta = params_.delta;
  const int n = options_.n_rays;
  const double h = delta / (n - 1);
  const int n_buffer = static_cast<int>(std::ceil(options_.buffer_fraction * (n - 1)));
  rays_.clear();
  for (int j = 0; j < n + n_buffer; ++j) {
    Ray ray{};
    ray.label = j < n ? delta * j / (n - 1) : delta + (j - n + 1) * h;
    ray.x0 = params_.r0 + ray.label + state.t;
    ray.disp = 0.0;
    rays_.push_back(ray);
  }
  n_reported_ = static_cast<std::size_t>(n);
  x_lo_ = state.x_lo + 2.0 * state.dx;
  x_hi_ = state.x(state.size() - 1) - 3.0 * state.dx;

  FieldSampler sampler = make_sampler(state);
  for (auto& ray : rays_) {
    if (ray.x0 < x_lo_ || ray.x0 > x_hi_) throw ResolutionError("solver window does not contain the fan");
    ray.f = sampler.at(ray.x0);
    ray.mu_trans = ray.f.c;
    ray.y = -2.0 * ray.f.c / ray.f.r;
  }
  t_start_ = state.t;
  t_ = state.t;
  fan_ = CharacteristicFan{};
  fan_.r0 = params_.r0;
  fan_.delta = delta;
  for (std::size_t i = 0; i < n_reported_; ++i) fan_.labels.push_back(rays_[i].label);

  std::vector<double> mu = geometric_mu();
  mu_min_ = 1.0;
  for (std::size_t i = 0; i < n_reported_; ++i) mu_min_ = std::min(mu_min_, mu[i]);
  fan_.mu_min_t.push_back(t_);
  fan_.mu_min_value.push_back(mu_min_);
  fan_.mu_min_label.push_back(0.0);
  next_timed_sample_ = 1;
  record(t_, mu);
}

bool FanTracer::should_sample(double t) const {
  double due = t_start_ + (t_end_ - t_start_) * next_timed_sample_ / options_.sample_count;
  return t >= due || mu_at_last_sample_ - mu_min_ >= options_.sample_mu_step;
}

bool FanTracer::on_step(const FieldState& before, const FieldState& after) {
  const double dt = after.t - before.t;
  FieldSampler prev(before, params_.g2, 0, 0);
  FieldSampler next = make_sampler(after);
  const double g2 = params_.g2;
  for (auto& ray : rays_) {
    if (ray.truncated) continue;
    double xh = ray.x() + 0.5 * dt * (1.0 - ray.f.c);
    double cm = 0.5 * (wave_speed(prev.p_at(xh), g2, xh - before.t, before.t).c +
                       wave_speed(next.p_at(xh), g2, xh - after.t, after.t).c);
    double disp_new = ray.disp + dt * (1.0 - cm);
    double x_new = ray.x0 + disp_new;
    if (x_new < x_lo_ || x_new > x_hi_) {
      ray.truncated = true;
      fan_.any_truncated = true;
      continue;
    }
    PointFields f_new = next.at(x_new);

    double k1 = transport_rhs(ray.f, ray.mu_trans);
    double k2 = transport_rhs(f_new, ray.mu_trans + dt * k1);
    double y1 = riccati_rhs(ray.f, ray.y);
    double y2 = riccati_rhs(f_new, ray.y + dt * y1);
    ray.mu_trans += 0.5 * dt * (k1 + k2);
    ray.y += 0.5 * dt * (y1 + y2);
    ray.disp = disp_new;
    ray.f = f_new;
  }
  t_ = after.t;

  std::vector<double> mu = geometric_mu();
  mu_min_ = 1.0;
  double arg = fan_.labels.front();
  for (std::size_t i = 0; i < n_reported_; ++i) {
    if (mu[i] < mu_min_) {
      mu_min_ = mu[i];
      arg = rays_[i].label;
    }
  }
  fan_.mu_min_t.push_back(t_);
  fan_.mu_min_value.push_back(mu_min_);
  fan_.mu_min_label.push_back(arg);

  sampled_last_ = false;
  if (should_sample(t_)) {
    record(t_, mu);
    sampled_last_ = true;
    double span = t_end_ - t_start_;
    while (t_start_ + span * next_timed_sample_ / options_.sample_count <= t_) ++next_timed_sample_;
  }
  return true;
}

void FanTracer::on_finish(const FieldState& state) {
  if (!fan_.times.empty() && fan_.times.back() == state.t) return;
  record(state.t, geometric_mu());
}

void FanTracer::record(double t, const std::vector<double>& mu_geom) {
  std::vector<OpticalSample> row;
  row.reserve(n_reported_);
  for (std::size_t i = 0; i < n_reported_; ++i) {
    const Ray& ray = rays_[i];
    const PointFields& f = ray.f;
    OpticalSample s;
    s.t = t;
    s.ub = ray.label;
    s.r = f.r;
    s.c = f.c;
    s.mu_geom = mu_geom[i];
    s.mu_trans = ray.mu_trans;
    double kappa = s.mu_geom / f.c;
    s.m = -0.5 * f.dc2_drho * kappa * 2.0 * f.p * f.dr_p;
    s.e = f.dc2_drho * 2.0 * f.p * f.lb_p() / (2.0 * f.c * f.c);
    s.lb_mu = s.m + s.mu_geom * s.e;
    s.trchib = -2.0 * f.c / f.r;
    s.trchib_prime = s.trchib + 2.0 / (ray.label - t);
    s.trchib_transport = ray.y;
    s.psi0 = f.p;
    s.t_psi0 = kappa * f.dr_p;
    s.l_psi0 = s.mu_geom / (f.c * f.c) * (f.dt_p() + f.c * f.dr_p);
    s.truncated = ray.truncated;
    row.push_back(s);
  }
  fan_.times.push_back(t);
  fan_.samples.push_back(std::move(row));
  mu_at_last_sample_ = mu_min_;
}

std::vector<FanTracer::SlicePoint> FanTracer::current_slice() const {
  std::vector<double> mu = geometric_mu();
  std::vector<SlicePoint> out;
  out.reserve(n_reported_);
  for (std::size_t i = 0; i < n_reported_; ++i) out.push_back({rays_[i].label, mu[i], rays_[i].f});
  return out;
}

MuConsistency compare_mu_routes(const CharacteristicFan& fan, double mu_floor) {
  MuConsistency out;
  for (const auto& row : fan.samples) {
    double row_min = 1.0;
    for (const auto& s : row) {
      if (!s.truncated) row_min = std::min(row_min, s.mu_geom);
    }
    if (!(row_min > mu_floor)) continue;
    for (const auto& s : row) {
      if (s.truncated) continue;
      double rel = std::abs(s.mu_geom - s.mu_trans) / s.mu_geom;
      ++out.compared;
      if (rel > out.max_rel_diff) {
        out.max_rel_diff = rel;
        out.at_t = s.t;
        out.at_label = s.ub;
      }
    }
  }
  return out;
}

TrChibDiagnostics trchib_diagnostics(const CharacteristicFan& fan) {
  TrChibDiagnostics out;
  for (const auto& row : fan.samples) {
    for (const auto& s : row) {
      if (s.truncated) continue;
      out.max_transport_residual = std::max(out.max_transport_residual, std::abs(s.trchib_transport - s.trchib) * s.t * s.t);
      out.max_abs_trchib_prime = std::max(out.max_abs_trchib_prime, std::abs(s.trchib_prime));
    }
  }
  return out;
}

void write_fan_csv(const CharacteristicFan& fan, const std::filesystem::path& path, int ray_stride) {
  CsvWriter w(path, {"t", "ub", "r", "c", "mu_geom", "mu_trans", "lb_mu", "m", "e", "trchib", "trchib_prime",
                     "trchib_transport", "psi0", "t_psi0", "l_psi0", "truncated"});
  ray_stride = std::max(ray_stride, 1);
  for (const auto& row : fan.samples) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i % static_cast<std::size_t>(ray_stride) != 0 && i + 1 != row.size()) continue;
      const auto& s = row[i];
      w.row({s.t, s.ub, s.r, s.c, s.mu_geom, s.mu_trans, s.lb_mu, s.m, s.e, s.trchib, s.trchib_prime,
             s.trchib_transport, s.psi0, s.t_psi0, s.l_psi0, s.truncated ? 1.0 : 0.0});
    }
  }
}

void write_mu_min_csv(const CharacteristicFan& fan, const std::filesystem::path& path, std::size_t max_rows) {
  CsvWriter w(path, {"t", "mu_min", "ub"});
  const std::size_t n = fan.mu_min_t.size();
  if (n == 0) return;
  std::size_t stride = std::max<std::size_t>(1, (n + max_rows - 1) / std::max<std::size_t>(max_rows, 1));
  for (std::size_t i = 0; i < n; i += stride) w.row({fan.mu_min_t[i], fan.mu_min_value[i], fan.mu_min_label[i]});
  if ((n - 1) % stride != 0) w.row({fan.mu_min_t[n - 1], fan.mu_min_value[n - 1], fan.mu_min_label[n - 1]});
}

}  // namespace shocklab
