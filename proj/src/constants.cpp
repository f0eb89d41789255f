#include "longwave/constants.hpp"

#include <cmath>
#include <sstream>

#include "longwave/error.hpp"

namespace longwave {

Constants Constants::natural() { return Constants{1.0, 1.0, 1.0, 1.0}; }

Constants Constants::make(double c, double hbar, double mu0) {
  return make_checked(c, hbar, mu0, 1.0 / (mu0 * c * c));
}

Constants Constants::make_checked(double c, double hbar, double mu0, double eps0) {
  if (!(c > 0.0) || !(hbar > 0.0) || !(mu0 > 0.0)) {
    std::ostringstream msg;
    msg << "constants: c, hbar, mu0 must be positive (got c=" << c << ", hbar=" << hbar
        << ", mu0=" << mu0 << ")";
    throw physics_error(msg.str());
  }
  const double rel = std::abs(eps0 * mu0 * c * c - 1.0);
  if (!(rel <= 1e-12)) {
    std::ostringstream msg;
    msg << "constants: eps0*mu0*c^2 = " << eps0 * mu0 * c * c
        << " violates eps0*mu0*c^2 = 1 beyond 1e-12";
    throw physics_error(msg.str());
  }
  return Constants{c, hbar, mu0, eps0};
}

}  // namespace longwave
