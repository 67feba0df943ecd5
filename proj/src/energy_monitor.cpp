#include "shocklab/energy_monitor.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

struct Densities {
  double e0, e1, t_norm;
};

Densities densities(const FanTracer::SlicePoint& pt, double t, PsiChoice which) {
  const PointFields& f = pt.f;
  const double mu = pt.mu;
  double psi, dt_psi, dr_psi;
  if (which == PsiChoice::kDtPhi) {
    psi = f.p;
    dt_psi = f.dt_p();
    dr_psi = f.dr_p;
  } else {
    psi = f.q;
    dt_psi = f.dr_p;
    dr_psi = f.dr_q;
  }
  double l_psi = mu / (f.c * f.c) * (dt_psi + f.c * dr_psi);
  double lb_psi = dt_psi - f.c * dr_psi;
  // Lb(1/c) = -f' Lb rho / (2 c^3)
  double lb_inv_c = -f.dc2_drho * 2.0 * f.p * f.lb_p() / (2.0 * f.c * f.c * f.c);
  double trchib_tilde = 2.0 * lb_inv_c - 2.0 * f.c / f.r;
  double kappa = mu / f.c;
  double w = 4.0 * std::numbers::pi * f.r * f.r;
  double a = lb_psi + 0.5 * trchib_tilde * psi;
  return {w * (l_psi * l_psi + mu * lb_psi * lb_psi), w * t * t * mu * a * a, w * kappa * kappa * dr_psi * dr_psi};
}

}  // namespace

SliceEnergy slice_energy(std::span<const FanTracer::SlicePoint> points, double t, double ub, PsiChoice psi) {
  std::size_t n = 0;
  while (n < points.size() && points[n].label <= ub * (1.0 + 1e-12) + 1e-15) ++n;
  SliceEnergy out;
  if (n < 2) return out;
  const double h = (points[n - 1].label - points[0].label) / static_cast<double>(n - 1);
  std::vector<Densities> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = densities(points[i], t, psi);

  std::size_t intervals = n - 1;
  std::size_t simpson = intervals - intervals % 2;
  auto acc = [&](double Densities::*field) {
    double s = 0.0;
    for (std::size_t i = 0; i + 2 <= simpson; i += 2) {
      s += h / 3.0 * (d[i].*field + 4.0 * d[i + 1].*field + d[i + 2].*field);
    }
    if (simpson < intervals) s += 0.5 * h * (d[n - 2].*field + d[n - 1].*field);
    return s;
  };
  out.e0 = acc(&Densities::e0);
  out.e1 = acc(&Densities::e1);
  out.t_norm = acc(&Densities::t_norm);
  return out;
}

SliceEnergy initial_slice_energy(const InitialData& data, double ub, PsiChoice psi) {
  const ModelParams& mp = data.params;
  const double delta = mp.delta, r0 = mp.r0, t = -r0;
  const double a12 = std::sqrt(delta) / r0;
  const double am12 = 1.0 / (std::sqrt(delta) * r0);
  const auto& s_grid = data.profile.s();
  if (s_grid.empty()) throw std::logic_error("initial data has no profile");
  std::vector<FanTracer::SlicePoint> pts;
  pts.reserve(s_grid.size());
  for (double s : s_grid) {
    FanTracer::SlicePoint pt{};
    pt.label = s * delta;
    PointFields& f = pt.f;
    f.r = r0 + pt.label;
    f.p = a12 * data.seed.phi1.value(s);
    f.q = a12 * data.profile.slope(s);
    f.dr_p = am12 * data.seed.phi1.derivative(s);
    // right-hand limit of phi0'' at s = 0
    f.dr_q = am12 * data.profile.curvature(s);
    WaveSpeed w = wave_speed(f.p, mp.g2, f.r, t);
    f.c = w.c;
    f.dc2_drho = w.dc2_drho;
    pt.mu = f.c;
    pts.push_back(pt);
  }
  return slice_energy(pts, t, ub, psi);
}

void EnergyObserver::on_start(const FieldState&) {
  records_.clear();
  capture();
}

bool EnergyObserver::on_step(const FieldState&, const FieldState&) {
  if (fan_.sampled_last_step()) capture();
  return true;
}

void EnergyObserver::capture() {
  auto slice = fan_.current_slice();
  double t = fan_.current_time();
  records_.push_back({t, slice_energy(slice, t, delta_, PsiChoice::kDtPhi), slice_energy(slice, t, delta_, PsiChoice::kDrPhi)});
}

void write_energies_csv(const std::vector<EnergyObserver::Record>& records, const std::filesystem::path& path) {
  CsvWriter w(path, {"t", "e0_dtphi", "e1_dtphi", "tnorm_dtphi", "e0_drphi", "e1_drphi", "tnorm_drphi"});
  for (const auto& r : records) {
    w.row({r.t, r.dtphi.e0, r.dtphi.e1, r.dtphi.t_norm, r.drphi.e0, r.drphi.e1, r.drphi.t_norm});
  }
}

double scattering_limit(const SeedProfile& seed) {
  auto f = [&](double s) {
    double d = seed.phi1.derivative(s);
    return d * d;
  };
  double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-13);
  return 4.0 * std::numbers::pi * integral;
}

ScatteringTable scattering_probe(const SeedProfile& seed, double g2, double delta, std::span<const double> r0_list,
                                 int cells_per_delta) {
  if (r0_list.empty()) throw ConfigError("scattering probe needs at least one r0");
  ScatteringTable table;
  table.delta = delta;
  table.limit = scattering_limit(seed);
  for (double r0 : r0_list) {
    ModelParams mp{g2, delta, r0};
    InitialData data = build_initial_data(seed, mp, pulse_grid(mp, cells_per_delta));
    table.rows.push_back({r0, initial_slice_energy(data, delta, PsiChoice::kDtPhi)});
  }
  table.rel_error_last = std::abs(table.rows.back().dtphi.t_norm - table.limit) / table.limit;
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    table.e0_differences.push_back(table.rows[k].dtphi.e0 - table.rows[k - 1].dtphi.e0);
  }
  for (std::size_t k = 1; k < table.e0_differences.size(); ++k) {
    table.difference_ratios.push_back(table.e0_differences[k - 1] / table.e0_differences[k]);
  }
  return table;
}

void write_scattering_json(const ScatteringTable& table, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["delta"] = table.delta;
  j["limit_t_norm"] = table.limit;
  j["rel_error_at_largest_r0"] = table.rel_error_last;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"r0", r.r0}, {"e0", r.dtphi.e0}, {"e1", r.dtphi.e1}, {"t_norm", r.dtphi.t_norm}});
  }
  j["rows"] = rows;
  j["e0_differences"] = table.e0_differences;
  j["difference_ratios"] = table.difference_ratios;
  std::ofstream(path) << j.dump(2) << '\n';
}

}  // namespace shocklab
