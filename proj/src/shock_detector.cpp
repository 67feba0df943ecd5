#include "shocklab/shock_detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace shocklab {

ShockReport detect_shock(const CharacteristicFan& fan, const ShockMargin& margin, const ModelParams& params,
                         double stop_mu) {
  ShockReport rep;
  rep.margin = margin.value;
  rep.s_star = margin.s_min;
  rep.t_star_predicted = predicted_shock_time(margin.value, params.r0);
  if (fan.mu_min_t.empty()) {
    rep.diagnostic = "empty fan";
    return rep;
  }
  rep.mu_min_final = fan.mu_min_value.back();
  rep.ub_star = fan.mu_min_label.back();

  std::vector<std::size_t> low;
  for (std::size_t i = 0; i < fan.mu_min_t.size(); ++i) {
    if (fan.mu_min_value[i] < 0.5) low.push_back(i);
  }
  std::size_t take = std::max<std::size_t>(4, (low.size() + 3) / 4);
  if (low.size() < 4) {
    rep.diagnostic = "mu_m never dropped below 0.5";
    return rep;
  }
  std::vector<std::size_t> tail(low.end() - static_cast<std::ptrdiff_t>(std::min(take, low.size())), low.end());

  double worst_rise = 0.0;
  for (std::size_t k = 1; k < tail.size(); ++k) {
    worst_rise = std::max(worst_rise, fan.mu_min_value[tail[k]] - fan.mu_min_value[tail[k - 1]]);
  }

  // least squares for mu = a + b / t, centred for conditioning
  double mx = 0.0, my = 0.0;
  for (auto i : tail) {
    mx += 1.0 / fan.mu_min_t[i];
    my += fan.mu_min_value[i];
  }
  mx /= tail.size();
  my /= tail.size();
  double sxx = 0.0, sxy = 0.0;
  for (auto i : tail) {
    double dx = 1.0 / fan.mu_min_t[i] - mx;
    sxx += dx * dx;
    sxy += dx * (fan.mu_min_value[i] - my);
  }
  rep.fit_points = tail.size();
  if (sxx <= 0.0) {
    rep.diagnostic = "degenerate fit window";
    return rep;
  }
  rep.fit_b = sxy / sxx;
  rep.fit_a = my - rep.fit_b * mx;
  if (rep.fit_a != 0.0) {
    double tc = -rep.fit_b / rep.fit_a;
    if (tc < 0.0 && tc >= -params.r0) rep.t_star_observed = tc;
  }

  bool reached = *std::min_element(fan.mu_min_value.begin(), fan.mu_min_value.end()) < stop_mu;
  if (worst_rise > 1e-3) {
    rep.diagnostic = "mu_m tail is not monotone";
  } else if (!reached) {
    rep.diagnostic = "mu_m did not reach the stop threshold";
  } else if (!rep.t_star_observed) {
    rep.diagnostic = "tail fit has no crossing in (-r0, 0)";
  } else if (*rep.t_star_observed > -1.0) {
    rep.diagnostic = "extrapolated crossing after t = -1";
  } else {
    rep.fired = true;
    rep.diagnostic = "ok";
  }
  return rep;
}

namespace {

double row_mu_min(const std::vector<OpticalSample>& row) {
  double m = 1.0;
  for (const auto& s : row) {
    if (!s.truncated) m = std::min(m, s.mu_geom);
  }
  return m;
}

/// Visits samples of recorded times whose mu_m exceeds mu_floor, paired with the initial sample of the same ray.
template <class F>
void for_each_sample(const CharacteristicFan& fan, double mu_floor, F&& f) {
  if (fan.samples.empty()) return;
  const auto& first = fan.samples.front();
  for (const auto& row : fan.samples) {
    if (!(row_mu_min(row) > mu_floor)) continue;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].truncated) continue;
      f(row[j], first[j]);
    }
  }
}

}  // namespace

double residual_mu_expansion(const CharacteristicFan& fan, double mu_floor) {
  const double r0 = fan.r0, delta = fan.delta;
  double sup = 0.0;
  for_each_sample(fan, mu_floor, [&](const OpticalSample& s, const OpticalSample& s0) {
    double lead = 1.0 - (1.0 / s.t + 1.0 / r0) * r0 * r0 * s0.lb_mu;
    sup = std::max(sup, std::abs(s.mu_geom - lead) * s.t * s.t / delta);
  });
  return sup;
}

double residual_lb_mu_expansion(const CharacteristicFan& fan, double mu_floor) {
  const double r0 = fan.r0, delta = fan.delta;
  double sup = 0.0;
  for_each_sample(fan, mu_floor, [&](const OpticalSample& s, const OpticalSample& s0) {
    sup = std::max(sup, std::abs(s.t * s.t * s.lb_mu - r0 * r0 * s0.lb_mu) * std::abs(s.t) / delta);
  });
  return sup;
}

PsiResiduals residual_lpsi_expansion(const CharacteristicFan& fan, double mu_floor) {
  const double r0 = fan.r0;
  const double d12 = std::sqrt(fan.delta), d32 = std::pow(fan.delta, 1.5);
  PsiResiduals out;
  for_each_sample(fan, mu_floor, [&](const OpticalSample& s, const OpticalSample& s0) {
    double w = std::abs(s.t);
    out.l_psi = std::max(out.l_psi, std::abs(-s.t * s.l_psi0 - r0 * s0.l_psi0) * w / d12);
    out.t_psi = std::max(out.t_psi, std::abs(-s.t * s.t_psi0 - r0 * s0.t_psi0) * w / d12);
    out.psi = std::max(out.psi, std::abs(-s.t * s.psi0 - r0 * s0.psi0) * w / d32);
  });
  return out;
}

TrappingReport trapping_check(const CharacteristicFan& fan, double slack, double mu_threshold) {
  TrappingReport rep;
  for_each_sample(fan, 0.0, [&](const OpticalSample& s, const OpticalSample&) {
    if (!(s.mu_geom < mu_threshold)) return;
    ++rep.checked;
    double v = s.t * s.t * s.lb_mu;
    rep.worst = std::max(rep.worst, v);
    if (v > -0.25 + slack) ++rep.violations;
  });
  return rep;
}

void attach_residuals(ShockReport& report, const CharacteristicFan& fan, double mu_floor) {
  report.residual_norms["mu_expansion"] = residual_mu_expansion(fan, mu_floor);
  report.residual_norms["lb_mu_expansion"] = residual_lb_mu_expansion(fan, mu_floor);
  PsiResiduals psi = residual_lpsi_expansion(fan, mu_floor);
  report.residual_norms["l_psi_expansion"] = psi.l_psi;
  report.residual_norms["t_psi_expansion"] = psi.t_psi;
  report.residual_norms["psi_expansion"] = psi.psi;
}

void write_shock_report_json(const ShockReport& report, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["fired"] = report.fired;
  j["t_star_observed"] = report.t_star_observed ? nlohmann::ordered_json(*report.t_star_observed) : nlohmann::ordered_json(nullptr);
  j["t_star_predicted"] = report.t_star_predicted ? nlohmann::ordered_json(*report.t_star_predicted) : nlohmann::ordered_json(nullptr);
  j["ub_star"] = report.ub_star;
  j["margin"] = report.margin;
  j["s_star"] = report.s_star;
  j["mu_min_final"] = report.mu_min_final;
  j["fit"] = {{"a", report.fit_a}, {"b", report.fit_b}, {"points", report.fit_points}};
  j["diagnostic"] = report.diagnostic;
  j["residual_norms"] = report.residual_norms;
  std::ofstream(path) << j.dump(2) << '\n';
}

}  // namespace shocklab
