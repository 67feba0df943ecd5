#include "shocklab/errors.hpp"

#include <sstream>

namespace shocklab {

namespace {

std::string hyperbolicity_message(double r, double p, double t) {
  std::ostringstream os;
  os.precision(10);
  os << "hyperbolicity lost at t=" << t << ", r=" << r << ", p=" << p;
  return os.str();
}

}  // namespace

HyperbolicityError::HyperbolicityError(double r, double p, double t)
    : std::runtime_error(hyperbolicity_message(r, p, t)), r_(r), p_(p), t_(t) {}

}  // namespace shocklab
