#ifndef LONGWAVE_CONSTANTS_HPP
#define LONGWAVE_CONSTANTS_HPP

namespace longwave {

// Physical constants of the medium. eps0 is tied to (c, mu0) by
// eps0*mu0*c^2 = 1; the factories below enforce it to 1e-12 relative.
struct Constants {
  double c = 1.0;
  double hbar = 1.0;
  double mu0 = 1.0;
  double eps0 = 1.0;

  // Natural units c = hbar = mu0 = eps0 = 1; the default everywhere.
  static Constants natural();
  // Derives eps0 = 1/(mu0 c^2).
  static Constants make(double c, double hbar, double mu0);
  // Validates all four against the invariants; throws physics_error.
  static Constants make_checked(double c, double hbar, double mu0, double eps0);
};

}  // namespace longwave

#endif
