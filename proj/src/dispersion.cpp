#include "longwave/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "longwave/error.hpp"

namespace longwave {

DispersionParams DispersionParams::make(double m, int spinor_sign, const Constants& constants) {
  if (!(m >= 0.0)) {
    std::ostringstream msg;
    msg << "dispersion: mass must be nonnegative (got " << m << ")";
    throw physics_error(msg.str());
  }
  if (spinor_sign != 1 && spinor_sign != -1) {
    std::ostringstream msg;
    msg << "dispersion: spinor sign must be +1 or -1 (got " << spinor_sign << ")";
    throw physics_error(msg.str());
  }
  return DispersionParams(m, spinor_sign, constants);
}

BranchPair omega_branches(double k, const DispersionParams& params) {
  const double c = params.constants().c;
  const double b = params.spinor_sign() * params.m() * c * c / params.constants().hbar;
  const double ck = c * k;
  // Roots of w^2 + b w - ck^2 = 0 via the cancellation-free form: the root
  // away from b is -(b + sgn(b) D)/2, the other comes from the product -ck^2.
  const double disc = std::sqrt(b * b + 4.0 * ck * ck);
  double hi, lo;
  if (b >= 0.0) {
    lo = -0.5 * (b + disc);
    hi = (lo == 0.0) ? 0.0 : (ck * ck) / (-lo);
  } else {
    hi = 0.5 * (-b + disc);
    lo = (hi == 0.0) ? 0.0 : -(ck * ck) / hi;
  }
  return BranchPair{hi, lo, k};
}

double group_velocity(double k, const DispersionParams& params) {
  const double c = params.constants().c;
  if (k == 0.0) {
    // Massless limit of c^2 k/sqrt(c^2 k^2 + m*^2 c^4/hbar^2); +c by convention.
    if (params.m_star() == 0.0) return c;
    return 0.0;
  }
  const double mc = params.m_star() * c * c / params.constants().hbar;  // m* c^2 / hbar
  return c * c * k / std::hypot(c * k, mc);
}

EnergyLevels energy_levels(double p, const DispersionParams& params) {
  const double c = params.constants().c;
  const double e0 = params.m_star() * c * c;
  const double estar = std::hypot(c * p, e0);  // exact e0 at p = 0
  // -e0 + estar in the cancellation-free product form; exact 0 at p = 0.
  const double e1 = (p == 0.0) ? 0.0 : (c * p) * (c * p) / (e0 + estar);
  return EnergyLevels{e1, -e1, e0, estar};
}

EinsteinCheck einstein_relation_check(double v, double m, const Constants& constants) {
  const double c = constants.c;
  if (!(m > 0.0)) {
    std::ostringstream msg;
    msg << "einstein check: mass must be positive (got " << m << ")";
    throw physics_error(msg.str());
  }
  if (!(std::abs(v) < c)) {
    std::ostringstream msg;
    msg << "einstein check: |v| = " << std::abs(v) << " must be below c = " << c;
    throw physics_error(msg.str());
  }
  const double gamma = 1.0 / std::sqrt(1.0 - (v / c) * (v / c));
  const double p = gamma * m * v;
  const double e = gamma * m * c * c;
  return EinsteinCheck{p, e, p - v * e / (c * c)};
}

LabeledRoots labeled_roots(double k, double m, const Constants& constants) {
  const BranchPair plus = omega_branches(k, DispersionParams::make(m, +1, constants));
  const BranchPair minus = omega_branches(k, DispersionParams::make(m, -1, constants));
  return LabeledRoots{plus.omega_hi, minus.omega_lo};
}

}  // namespace longwave
