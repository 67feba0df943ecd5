#pragma once

#include <stdexcept>
#include <string>

namespace shocklab {

/// Seed profile fails its structural requirements (nonzero at s=0, non-finite values, bad table).
class InvalidSeedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration or argument outside the documented preconditions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid or fan too coarse for the requested operation.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1 + 3 G'' p^2 dropped below the hyperbolicity floor.
class HyperbolicityError : public std::runtime_error {
 public:
  HyperbolicityError(double r, double p, double t);

  double r() const { return r_; }
  double p() const { return p_; }
  double t() const { return t_; }

 private:
  double r_;
  double p_;
  double t_;
};

/// Burgers initial slope vanishes at the requested label, so the initial inverse density is infinite.
class InfiniteInitialDensityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace shocklab
