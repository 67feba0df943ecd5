#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace shocklab::testing {

/// Deterministic generator for property tests; every test seeds its own instance.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  /// Strictly increasing labels on [lo, hi] with spacings varying by up to a factor `ratio`.
  std::vector<double> increasing(std::size_t n, double lo, double hi, double ratio = 3.0) {
    std::vector<double> gaps(n - 1);
    double total = 0.0;
    for (auto& g : gaps) {
      g = uniform(1.0, ratio);
      total += g;
    }
    std::vector<double> out(n, lo);
    for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + gaps[i - 1] * (hi - lo) / total;
    out.back() = hi;
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace shocklab::testing
