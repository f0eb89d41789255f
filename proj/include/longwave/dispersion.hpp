#ifndef LONGWAVE_DISPERSION_HPP
#define LONGWAVE_DISPERSION_HPP

#include "longwave/constants.hpp"

namespace longwave {

// Mass, spinor sign and constants of the telegraph dispersion problem.
// spinor_sign is +1 for the upper component, -1 for the lower.
class DispersionParams {
 public:
  static DispersionParams make(double m, int spinor_sign,
                               const Constants& constants = Constants::natural());
  double m() const { return m_; }
  int spinor_sign() const { return sign_; }
  const Constants& constants() const { return constants_; }
  double m_star() const { return 0.5 * m_; }

 private:
  DispersionParams(double m, int sign, const Constants& constants)
      : m_(m), sign_(sign), constants_(constants) {}
  double m_;
  int sign_;
  Constants constants_;
};

// The two real roots of w^2 + sign*(m c^2/hbar) w - c^2 k^2 = 0, ordered.
// Vieta: hi + lo = -sign*m c^2/hbar, hi*lo = -c^2 k^2.
struct BranchPair {
  double omega_hi;
  double omega_lo;
  double k;
};

BranchPair omega_branches(double k, const DispersionParams& params);

// d(omega_hi)/dk: c*sgn(k)/sqrt(1 + (m_star c/(hbar k))^2). Zero at k = 0
// for massive particles; the massless k = 0 limit returns +c (documented).
double group_velocity(double k, const DispersionParams& params);

// E1 = -E0 + Estar, E2 = -E1, with E0 = m_star c^2 the zero-point offset and
// Estar = sqrt(c^2 p^2 + m_star^2 c^4). Both levels vanish at p = 0.
struct EnergyLevels {
  double E1;
  double E2;
  double E0;
  double Estar;
};

EnergyLevels energy_levels(double p, const DispersionParams& params);

// p = gamma m v, E = gamma m c^2; residual = p - v E/c^2 (identically zero).
// Rejects |v| >= c.
struct EinsteinCheck {
  double p;
  double E;
  double residual;
};

EinsteinCheck einstein_relation_check(double v, double m, const Constants& constants);

// The conventional two-root labeling: omega1 is the hi root of the +1 spinor
// component, omega2 the lo root of the -1 component.
struct LabeledRoots {
  double omega1;
  double omega2;
};

LabeledRoots labeled_roots(double k, double m,
                           const Constants& constants = Constants::natural());

}  // namespace longwave

#endif
