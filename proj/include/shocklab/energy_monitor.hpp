#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "shocklab/data_builder.hpp"
#include "shocklab/optical_geometry.hpp"

namespace shocklab {

/// Which first derivative of phi plays the role of psi.
enum class PsiChoice { kDtPhi, kDrPhi };

struct SliceEnergy {
  double e0 = 0.0;      ///< 4 pi int [(L psi)^2 + mu (Lb psi)^2] r^2 dub
  double e1 = 0.0;      ///< t^2 4 pi int mu (Lb psi + trchib~ psi / 2)^2 r^2 dub
  double t_norm = 0.0;  ///< 4 pi int (kappa dr psi)^2 r^2 dub
};

/// Integrates over the points with label <= ub (uniform labels; composite Simpson,
/// with a trapezoid on a trailing odd interval).
SliceEnergy slice_energy(std::span<const FanTracer::SlicePoint> points, double t, double ub, PsiChoice psi);

/// Energies on the initial slice, using the analytic derivative columns (kappa = 1, mu = c).
SliceEnergy initial_slice_energy(const InitialData& data, double ub, PsiChoice psi);

/// Records slice energies at u_b = delta whenever the fan records a sample.
/// Must be registered after the FanTracer it reads.
class EnergyObserver : public EvolutionObserver {
 public:
  struct Record {
    double t;
    SliceEnergy dtphi;
    SliceEnergy drphi;
  };

  EnergyObserver(const FanTracer& fan, double delta) : fan_(fan), delta_(delta) {}

  void on_start(const FieldState& state) override;
  bool on_step(const FieldState& before, const FieldState& after) override;

  const std::vector<Record>& records() const { return records_; }

 private:
  void capture();

  const FanTracer& fan_;
  double delta_;
  std::vector<Record> records_;
};

void write_energies_csv(const std::vector<EnergyObserver::Record>& records, const std::filesystem::path& path);

/// Initial-slice energies over a list of r0 at fixed delta, compared with the
/// scattering limit 4 pi int_0^1 (phi1')^2 ds (adaptive Gauss-Kronrod).
struct ScatteringRow {
  double r0;
  SliceEnergy dtphi;
};
struct ScatteringTable {
  double delta = 0.0;
  double limit = 0.0;
  std::vector<ScatteringRow> rows;
  double rel_error_last = 0.0;            ///< |t_norm - limit| / limit at the largest r0
  std::vector<double> e0_differences;     ///< e0(r0_{k+1}) - e0(r0_k)
  std::vector<double> difference_ratios;  ///< successive difference ratios (2 for doubling r0 at 1/r0 decay)
};
ScatteringTable scattering_probe(const SeedProfile& seed, double g2, double delta, std::span<const double> r0_list,
                                 int cells_per_delta = 512);

double scattering_limit(const SeedProfile& seed);

void write_scattering_json(const ScatteringTable& table, const std::filesystem::path& path);

}  // namespace shocklab
