#ifndef LONGWAVE_MATTER_CHECKS_HPP
#define LONGWAVE_MATTER_CHECKS_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "longwave/constants.hpp"
#include "longwave/gauge_em.hpp"
#include "longwave/history.hpp"
#include "longwave/residual.hpp"

namespace longwave {

// Two-component spinor evolution samples on a rank-1 grid. The 2x2 matrices
// are fixed: alpha = [[0,1],[1,0]], beta = [[1,0],[0,-1]], so alpha swaps
// the components and beta flips the sign of `down`.
struct SpinorHistory {
  ScalarHistory up;
  ScalarHistory down;

  static SpinorHistory make(ScalarHistory up, ScalarHistory down);
};

// Residual of (1/c) dpsi/dt + alpha dpsi/dx + (i m c beta/hbar) psi over
// interior snapshots, both components aggregated into one report.
ResidualReport dirac_residual(const SpinorHistory& psi, double m, const Constants& constants);

// The matrix relation -(1/c) df/dt I + alpha . grad f projected onto the
// +-1 eigenvectors (1, +-1)/sqrt(2) of alpha_x. Each channel reduces to
// (+-|v|/c^2 - 1/c) df/dt, so the + channel vanishes exactly when |v| = c.
// Requires the wave velocity along +x (the 1+1D representation fixes the
// projection axis) and a time-dependent f.
struct AlphaVResiduals {
  ResidualReport plus;
  ResidualReport minus;
};

AlphaVResiduals alpha_v_constraint(const GaugeWave& f, const Grid& grid, double t);

// Residual of (1/c^2) d2psi/dt2 - lap psi + spinor_sign (i m/hbar) dpsi/dt
// over interior snapshots.
ResidualReport telegraph_residual(const ScalarHistory& psi, double m, int spinor_sign,
                                  const Constants& constants);

// Charge density and current histories with the flow velocity they are
// meant to represent. Rank-3 grid (the curl law needs all components).
struct ContinuitySet {
  ScalarHistory rho;
  VectorHistory J;
  std::array<double, 3> v;

  static ContinuitySet make(ScalarHistory rho, VectorHistory J, const std::array<double, 3>& v);
};

struct ContinuityResiduals {
  ResidualReport grad_rho;  // grad rho + (1/c^2) dJ/dt
  ResidualReport curl_j;    // curl J
  ResidualReport charge;    // div J + drho/dt
};

ContinuityResiduals continuity_residuals(const ContinuitySet& set, const Constants& constants);

// The first and third residual fields at one interior snapshot, exposed so
// the boosted combinations below can be recombined independently.
struct ContinuityResidualFields {
  VectorField grad_rho;
  ScalarField charge;
};

ContinuityResidualFields continuity_residual_fields(const ContinuitySet& set,
                                                    const Constants& constants, std::size_t at);

// What the gauge construction demands of (rho, J): (grad f).J - f_t rho,
// rho grad f - (1/c^2) f_t J, and (grad f) x J. No time stencils; every
// snapshot contributes.
struct ContinuityInvarianceResiduals {
  ResidualReport j_dot_gradf;
  ResidualReport rho_gradf;
  ResidualReport j_cross_gradf;
};

ContinuityInvarianceResiduals continuity_invariance_residuals(const ContinuitySet& set,
                                                              const GaugeWave& f);

// Boosted-frame continuity: the scalar law v.R_grad + R_charge and the
// vector law R_grad + (v/c^2) R_charge, where R_grad and R_charge are the
// rest-frame residual fields above. Linear combinations by construction.
struct PostGalileanResiduals {
  ResidualReport boosted_charge;    // v.R_grad + R_charge
  ResidualReport boosted_gradient;  // R_grad + (v/c^2) R_charge
};

PostGalileanResiduals post_galilean_residuals(const ContinuitySet& set,
                                              const Constants& constants);

struct PostGalileanFields {
  ScalarField boosted_charge;
  VectorField boosted_gradient;
};

PostGalileanFields post_galilean_fields(const ContinuitySet& set, const Constants& constants,
                                        std::size_t at);

// Spatially uniform velocity samples v(t_i) = v[i] at uniform spacing dt.
struct FlowHistory {
  double dt;
  std::vector<std::array<double, 3>> v;

  static FlowHistory make(double dt, std::vector<std::array<double, 3>> v);
};

// omega = (v/c^2) x (-dv/dt) by centered differences; one sample per
// interior time. Orthogonal to both v and dv/dt by construction.
struct VorticityResult {
  std::vector<double> times;
  std::vector<std::array<double, 3>> omega;
};

VorticityResult vorticity(const FlowHistory& flow, const Constants& constants);

}  // namespace longwave

#endif
