#ifndef LONGWAVE_GAUGE_EM_HPP
#define LONGWAVE_GAUGE_EM_HPP

#include <array>
#include <cstddef>
#include <optional>

#include "longwave/constants.hpp"
#include "longwave/field.hpp"
#include "longwave/history.hpp"
#include "longwave/residual.hpp"

namespace longwave {

enum class Waveform { sin, cos };

// Traveling scalar gauge function f = amplitude*w(k*(r.vhat + s*t)) with
// phase speed s = c^2/|v|, built so that grad f = (v/c^2)*df/dt holds in
// closed form for every point and time. f itself solves the wave equation
// only when |v| = c; in general (1/c^2)f_tt - lap f = amplitude*k^2*
// (s^2/c^2 - 1)*w''. All derivatives are exact, no stencils involved.
class GaugeWave {
 public:
  static GaugeWave make(const std::array<double, 3>& v, double k, double amplitude,
                        Waveform waveform, const Constants& constants = Constants::natural());

  double f(double x, double y, double z, double t) const;
  double f_t(double x, double y, double z, double t) const;
  double f_tt(double x, double y, double z, double t) const;
  double lap_f(double x, double y, double z, double t) const;
  std::array<double, 3> grad_f(double x, double y, double z, double t) const;
  std::array<double, 3> grad_f_t(double x, double y, double z, double t) const;

  ScalarField sample_f(const Grid& grid, double t) const;
  ScalarField sample_f_t(const Grid& grid, double t) const;
  ScalarField sample_f_tt(const Grid& grid, double t) const;
  ScalarField sample_lap_f(const Grid& grid, double t) const;
  VectorField sample_grad_f(const Grid& grid, double t) const;
  VectorField sample_grad_f_t(const Grid& grid, double t) const;

  const std::array<double, 3>& v() const { return v_; }
  double speed() const { return speed_; }
  // s = c^2/|v|: superluminal for sub-c boosts.
  double phase_speed() const { return s_; }
  double k() const { return k_; }
  double amplitude() const { return amplitude_; }
  Waveform waveform() const { return waveform_; }
  const Constants& constants() const { return constants_; }

 private:
  GaugeWave(const std::array<double, 3>& v, double k, double amplitude, Waveform waveform,
            const Constants& constants);
  // waveform derivative chain: w, w', w''
  double w0(double arg) const;
  double w1(double arg) const;
  double w2(double arg) const;
  double phase(double x, double y, double z, double t) const;

  std::array<double, 3> v_;
  std::array<double, 3> vhat_;
  double speed_;
  double s_;
  double k_;
  double amplitude_;
  Waveform waveform_;
  Constants constants_;
};

// grad f - (v/c^2) df/dt sampled on a grid; zero in closed form, so the
// report is a floating-point sanity check, not a physics statement.
ResidualReport gauge_constraint_residual(const GaugeWave& wave, const Grid& grid, double t);
// (1/c^2) f_tt - lap f from the exact derivatives; vanishes only at |v| = c.
ResidualReport wave_residual(const GaugeWave& wave, const Grid& grid, double t);

// Aligned time histories of electromagnetic fields and sources on one rank-3
// grid. rho and J may be absent; residual operations treat them as vacuum
// zeros. E and B are required by the operations that differentiate in time.
struct EMFieldSet {
  std::optional<VectorHistory> E;
  std::optional<VectorHistory> B;
  std::optional<ScalarHistory> rho;
  std::optional<VectorHistory> J;

  static EMFieldSet make(std::optional<VectorHistory> E, std::optional<VectorHistory> B,
                         std::optional<ScalarHistory> rho, std::optional<VectorHistory> J);
};

struct MaxwellResiduals {
  ResidualReport faraday;  // curl E + dB/dt
  ResidualReport gauss_e;  // div E - rho/eps0
  ResidualReport gauss_b;  // div B
  ResidualReport ampere;   // curl B - mu0 J - (1/c^2) dE/dt
};

// Interior snapshots only (centered time stencils).
MaxwellResiduals maxwell_residuals(const EMFieldSet& fields, const Constants& constants);

// The four conditions the gauge construction imposes on E and B. No time
// stencils: f derivatives are analytic, so every snapshot contributes.
// scale carries the typical magnitude of the constituent terms so callers
// can judge the raw norms.
struct InvarianceResiduals {
  ResidualReport gradf_dot_b;    // (grad f).B
  ResidualReport gradf_dot_e;    // (grad f).E
  ResidualReport gradf_cross_e;  // (grad f) x E - f_t B
  ResidualReport gradf_cross_b;  // (grad f) x B + (1/c^2) f_t E
};

InvarianceResiduals invariance_condition_residuals(const EMFieldSet& fields,
                                                   const GaugeWave& wave);

// Deviation from the boost relations B = (v/c^2) x E and E = -v x B.
struct BoostResiduals {
  ResidualReport boost_b;  // B - (v/c^2) x E
  ResidualReport boost_e;  // E + v x B
};

BoostResiduals boost_consistency_residual(const VectorField& E, const VectorField& B,
                                          const std::array<double, 3>& v,
                                          const Constants& constants);

// Aligned potential histories (vector A, scalar phi) on one grid.
struct Potentials {
  std::optional<VectorHistory> A;
  std::optional<ScalarHistory> phi;

  static Potentials make(std::optional<VectorHistory> A, std::optional<ScalarHistory> phi);
};

// A' = A + grad f, phi' = phi - df/dt, with exact f derivatives.
Potentials gauge_transform(const Potentials& p, const GaugeWave& f);
// Same with a sampled gauge history aligned to the potentials; df/dt uses
// centered differences, so the result covers the interior snapshots only
// (f needs >= 5 snapshots to leave a valid history).
Potentials gauge_transform(const Potentials& p, const ScalarHistory& f);

// div A + (1/c^2) dphi/dt over interior snapshots.
ResidualReport lorenz_residual(const Potentials& p, const Constants& constants);
// The residual field at one interior snapshot, for field-wise comparisons.
ScalarField lorenz_residual_field(const Potentials& p, const Constants& constants,
                                  std::size_t at);

// Mode-space split A = perp + par: par is the projection onto khat (a pure
// gradient), perp the remainder (divergence-free). The k = 0 mode goes to
// perp, so par never carries a mean. Reconstruction is exact by
// construction (perp is computed as A - par in sample space).
struct HelmholtzParts {
  VectorField perp;
  VectorField par;
};

HelmholtzParts helmholtz_decompose(const VectorField& A);

// Two flux-sign conventions for S: +phi*A makes du/dt + div S vanish
// identically for potentials built from a wave-solving gauge function
// (the default); -phi*A is the conventional longitudinal-wave form, kept
// for faithful reporting of its nonzero residual.
enum class FluxSign { plus_phi_a, minus_phi_a };

struct EnergyDensityFlux {
  ScalarField u;  // (phi^2 + c^2 A.A)/(2 c^2)
  VectorField S;  // +-phi*A
};

EnergyDensityFlux energy_density_flux(const ScalarField& phi, const VectorField& A,
                                      FluxSign sign, const Constants& constants);

// du/dt + div S for the potentials A = -grad f, phi = df/dt, all derivatives
// exact. With FluxSign::plus_phi_a the residual reduces to
// f_t*((1/c^2)f_tt - lap f), zero exactly when f solves the wave equation.
ResidualReport energy_conservation_residual(const GaugeWave& f, const Grid& grid, double t,
                                            FluxSign sign);
// Sampled variant: centered stencils in time, spectral div in space.
// Needs >= 5 snapshots (u itself consumes one stencil level).
ResidualReport energy_conservation_residual(const ScalarHistory& f, FluxSign sign,
                                            const Constants& constants);

// E = -grad phi - dA/dt, B = curl A at interior snapshots; rho = J = absent.
// Needs >= 5 potential snapshots to leave valid histories.
EMFieldSet em_fields_from_potentials(const Potentials& p);

// The vanishing-field choice A = -grad f, phi = +df/dt sampled as histories;
// gauge-transforming these by f gives identically zero potentials.
Potentials potentials_from_gauge(const GaugeWave& f, const Grid& grid, double dt,
                                 std::size_t len, double t0 = 0.0);

}  // namespace longwave

#endif
