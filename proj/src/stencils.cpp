#include "shocklab/stencils.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/errors.hpp"

namespace shocklab {

void GridSpec::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ConfigError("grid needs 0 < r_min < r_max");
  if (n_cells < 512) throw ConfigError("grid needs at least 512 cells");
  if (!(cfl > 0.0) || cfl > 0.9) throw ConfigError("cfl must lie in (0, 0.9]");
}

GridSpec pulse_grid(const ModelParams& params, int cells_per_delta, int pad_in, int pad_out, double cfl) {
  if (pad_in < 2 || pad_out < 2) throw ConfigError("grid padding must be at least two pulse widths on each side");
  if (cells_per_delta < 1) throw ConfigError("cells_per_delta must be positive");
  GridSpec g;
  g.r_min = params.r0 - pad_in * params.delta;
  g.r_max = params.r0 + pad_out * params.delta;
  g.n_cells = (pad_in + pad_out) * cells_per_delta;
  g.cfl = cfl;
  g.validate();
  return g;
}

void derivative4(std::span<const double> u, double h, std::span<double> out, std::size_t lo, std::size_t hi) {
  const std::size_t n = u.size();
  if (n < 5) throw ResolutionError("derivative4 needs at least five nodes");
  hi = std::min(hi, n);
  const double inv = 1.0 / (12.0 * h);
  for (std::size_t i = lo; i < hi; ++i) {
    if (i >= 2 && i + 2 < n) {
      out[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) * inv;
    } else if (i < 2) {
      // one-sided five-point stencils
      if (i == 0) {
        out[i] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * inv;
      } else {
        out[i] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * inv;
      }
    } else {
      std::size_t k = n - 1;
      if (i == k) {
        out[i] = (25.0 * u[k] - 48.0 * u[k - 1] + 36.0 * u[k - 2] - 16.0 * u[k - 3] + 3.0 * u[k - 4]) * inv;
      } else {
        out[i] = (3.0 * u[k] + 10.0 * u[k - 1] - 18.0 * u[k - 2] + 6.0 * u[k - 3] - u[k - 4]) * inv;
      }
    }
  }
}

double cubic_interpolate(std::span<const double> u, double x0, double h, double x) {
  const long n = static_cast<long>(u.size());
  double xi = (x - x0) / h;
  long j = static_cast<long>(std::floor(xi)) - 1;
  j = std::clamp(j, 0L, n - 4);
  double t = xi - j;  // position relative to node j, nominally in [1, 2]
  double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return w0 * u[j] + w1 * u[j + 1] + w2 * u[j + 2] + w3 * u[j + 3];
}

std::vector<double> label_derivative(std::span<const double> labels, std::span<const double> positions) {
  const std::size_t n = labels.size();
  if (n < 3 || positions.size() != n) throw ResolutionError("label_derivative needs at least three rays");
  std::vector<double> d(n);
  auto at = [&](std::size_t a, std::size_t b, std::size_t c, double l) {
    // derivative at l of the quadratic through (labels[a..c], positions[a..c])
    double la = labels[a], lb = labels[b], lc = labels[c];
    return positions[a] * ((l - lb) + (l - lc)) / ((la - lb) * (la - lc)) +
           positions[b] * ((l - la) + (l - lc)) / ((lb - la) * (lb - lc)) +
           positions[c] * ((l - la) + (l - lb)) / ((lc - la) * (lc - lb));
  };
  d[0] = at(0, 1, 2, labels[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = at(i - 1, i, i + 1, labels[i]);
  d[n - 1] = at(n - 3, n - 2, n - 1, labels[n - 1]);
  return d;
}

}  // namespace shocklab
