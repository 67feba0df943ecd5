#pragma once

#include <span>
#include <vector>

#include "shocklab/seed_profiles.hpp"

namespace shocklab {

/// Uniform radial grid with n_cells + 1 nodes.
struct GridSpec {
  double r_min = 0.0;
  double r_max = 1.0;
  int n_cells = 512;
  double cfl = 0.8;

  double dr() const { return (r_max - r_min) / n_cells; }
  double r(int i) const { return r_min + i * dr(); }
  int n_nodes() const { return n_cells + 1; }

  /// Throws ConfigError unless r_min > 0, r_max > r_min, n_cells >= 512 and 0 < cfl <= 0.9.
  void validate() const;
};

/// Grid around the pulse with r0 and r0 + delta on nodes: [r0 - pad_in delta, r0 + pad_out delta].
GridSpec pulse_grid(const ModelParams& params, int cells_per_delta, int pad_in = 2, int pad_out = 3, double cfl = 0.8);

/// Fourth-order central first derivative on a uniform grid; one-sided of matching order near the ends.
/// Only nodes in [lo, hi) are written.
void derivative4(std::span<const double> u, double h, std::span<double> out, std::size_t lo, std::size_t hi);

/// Four-point Lagrange interpolation of nodal values u (spacing h, first node at x0).
/// Outside the node range the nearest stencil is used (extrapolation).
double cubic_interpolate(std::span<const double> u, double x0, double h, double x);

/// d(position)/d(label) along a nonuniform family of labels: three-point second-order
/// differences in the interior, one-sided second-order at both ends. Needs at least three points.
std::vector<double> label_derivative(std::span<const double> labels, std::span<const double> positions);

}  // namespace shocklab
