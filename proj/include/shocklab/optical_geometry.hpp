#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "shocklab/radial_solver.hpp"

namespace shocklab {

/// Fields at one point of a slice, interpolated from the solver window.
struct PointFields {
  double r = 0.0;
  double p = 0.0;
  double q = 0.0;
  double dr_p = 0.0;
  double dr_q = 0.0;
  double c = 1.0;
  double dc2_drho = 0.0;

  double lb_p() const { return c * c * (dr_q + 2.0 * q / r) - c * dr_p; }
  /// dt p from the equation.
  double dt_p() const { return c * c * (dr_q + 2.0 * q / r); }
};

/// Nodal first derivatives of p and q plus interpolation to arbitrary x.
/// Holds a pointer to the state, so it must not outlive it.
class FieldSampler {
 public:
  FieldSampler() = default;
  /// Derivatives are computed on nodes [lo, hi) only.
  FieldSampler(const FieldState& state, double g2, std::size_t lo, std::size_t hi);

  PointFields at(double x) const;
  double p_at(double x) const;

 private:
  const FieldState* state_ = nullptr;
  double g2_ = 0.0;
  std::vector<double> dp_, dq_;
};

/// One reported ray at one recorded time.
struct OpticalSample {
  double t = 0.0;
  double ub = 0.0;               ///< ray label (initial distance from r0)
  double r = 0.0;
  double c = 1.0;
  double mu_geom = 1.0;          ///< c * dr/dub from neighbouring rays
  double mu_trans = 1.0;         ///< integrated along the ray from the transport equation
  double lb_mu = 0.0;            ///< m + mu e, evaluated with mu_geom
  double m = 0.0;
  double e = 0.0;
  double trchib = 0.0;           ///< -2c/r
  double trchib_prime = 0.0;     ///< trchib + 2/(ub - t)
  double trchib_transport = 0.0; ///< integrated from the Riccati transport
  double psi0 = 0.0;             ///< dt phi
  double t_psi0 = 0.0;           ///< kappa dr p with kappa = mu_geom / c
  double l_psi0 = 0.0;           ///< (mu/c^2)(dt + c dr) p
  bool truncated = false;        ///< ray left the solver window
};

/// Rays (labels) crossed with recorded times.
struct CharacteristicFan {
  double r0 = 0.0;
  double delta = 0.0;
  std::vector<double> labels;                       ///< reported rays, uniform in [0, delta]
  std::vector<double> times;                        ///< recorded times
  std::vector<std::vector<OpticalSample>> samples;  ///< samples[time][ray]
  /// mu_m(t) = min(min over reported rays of mu_geom, 1) after every solver step
  std::vector<double> mu_min_t;
  std::vector<double> mu_min_value;
  std::vector<double> mu_min_label;
  bool any_truncated = false;

  /// mu_geom over the reported rays at recorded time `index`.
  std::vector<double> inverse_density(std::size_t index) const;
};

/// Inverse density of a family of straight or curved characteristics:
/// mu = speed_factor * d(position)/d(label). Shared by the wave fan and the Burgers fan.
std::vector<double> inverse_density(std::span<const double> labels, std::span<const double> positions,
                                    std::span<const double> speed_factor);

struct FanOptions {
  int n_rays = 257;              ///< reported rays over [0, delta]; >= 17
  double buffer_fraction = 0.2;  ///< extra rays beyond delta (traced, not reported)
  int sample_count = 200;        ///< time-driven samples over the run
  double sample_mu_step = 0.01;  ///< also sample whenever mu_m dropped by this much
};

/// Traces incoming characteristics dr/dt = -c in lock-step with the solver.
///
/// Rays advance with the midpoint rule in the co-moving coordinate, mu_trans and the
/// Riccati quantity with Heun's method, so everything is second order in dt.
class FanTracer : public EvolutionObserver {
 public:
  FanTracer(const ModelParams& params, const FanOptions& options, double t_end);

  void on_start(const FieldState& state) override;
  bool on_step(const FieldState& before, const FieldState& after) override;
  void on_finish(const FieldState& state) override;
  std::optional<double> mu_min() const override { return mu_min_; }

  const CharacteristicFan& fan() const { return fan_; }
  CharacteristicFan take_fan() { return std::move(fan_); }

  /// True if the most recent step produced a recorded sample.
  bool sampled_last_step() const { return sampled_last_; }

  /// Fields and mu_geom at the reported rays for the current state.
  struct SlicePoint {
    double label;
    double mu;
    PointFields f;
  };
  std::vector<SlicePoint> current_slice() const;
  double current_time() const { return t_; }

 private:
  struct Ray {
    double label;
    double x0;    ///< initial co-moving position
    double disp;  ///< displacement since the start, kept separately so kappa = 1 + d(disp)/d(label) has no cancellation
    double mu_trans;
    double y;
    PointFields f;
    bool truncated = false;

    double x() const { return x0 + disp; }
  };

  FieldSampler make_sampler(const FieldState& state) const;
  double transport_rhs(const PointFields& f, double mu) const;
  double riccati_rhs(const PointFields& f, double y) const;
  std::vector<double> geometric_mu() const;
  void record(double t, const std::vector<double>& mu_geom);
  bool should_sample(double t) const;

  ModelParams params_;
  FanOptions options_;
  double t_start_ = 0.0;
  double t_end_ = 0.0;
  std::size_t n_reported_ = 0;
  std::vector<Ray> rays_;
  double t_ = 0.0;
  double x_lo_ = 0.0, x_hi_ = 0.0;
  double mu_min_ = 1.0;
  double mu_at_last_sample_ = 1.0;
  int next_timed_sample_ = 1;
  bool sampled_last_ = false;
  CharacteristicFan fan_;
};

/// Geometric vs transported mu over the recorded times at which mu_m > mu_floor.
struct MuConsistency {
  double max_rel_diff = 0.0;
  double at_t = 0.0;
  double at_label = 0.0;
  std::size_t compared = 0;
};
MuConsistency compare_mu_routes(const CharacteristicFan& fan, double mu_floor = 0.1);

/// Riccati transport vs the closed form -2c/r: max |trchib_transport - trchib| * |t|^2.
struct TrChibDiagnostics {
  double max_transport_residual = 0.0;
  double max_abs_trchib_prime = 0.0;  ///< largest |trchib'|, flat-cone deviation
};
TrChibDiagnostics trchib_diagnostics(const CharacteristicFan& fan);

/// One row per sample; every `ray_stride`-th reported ray is written.
void write_fan_csv(const CharacteristicFan& fan, const std::filesystem::path& path, int ray_stride = 1);

/// t,mu_min,label with at most `max_rows` rows (uniformly thinned).
void write_mu_min_csv(const CharacteristicFan& fan, const std::filesystem::path& path, std::size_t max_rows = 5000);

}  // namespace shocklab
