#ifndef LONGWAVE_TELEGRAPH_HPP
#define LONGWAVE_TELEGRAPH_HPP

#include <optional>
#include <vector>

#include "longwave/dispersion.hpp"
#include "longwave/field.hpp"
#include "longwave/history.hpp"

namespace longwave {

// Which dispersion branch carries the packet. `mixed` splits the amplitude
// evenly across both branches, which exhibits two-wave beating.
enum class Branch { hi, lo, mixed };

// Gaussian wavepacket envelope exp(-(x-x0)^2/(2 sigma^2)) with carrier
// exp(-i k0 x). Resolvability: sigma >= 4 dx and negligible wrap overlap,
// exp(-(L/2)^2/(2 sigma^2)) < 1e-10.
struct WavepacketSpec {
  double k0 = 0.0;
  double sigma = 1.0;
  double x0 = 0.0;
  cplx amplitude{1.0, 0.0};
  Branch branch = Branch::hi;
  int spinor_sign = +1;
};

// Second-order-in-time state: (psi, dpsi/dt) defines a unique trajectory.
struct TelegraphState {
  double t;
  ScalarField psi;
  ScalarField psi_t;
  DispersionParams params;
};

// Centroid trajectory and diagnostics of one run. domain_length is kept so
// the group-velocity fit can unwrap the periodic centroid.
struct SimulationRecord {
  std::vector<double> times;
  std::vector<double> centroids;
  std::vector<double> l2_norms;
  std::optional<ScalarHistory> snapshots;
  std::optional<double> measured_vg;
  double fit_residual = 0.0;
  double domain_length = 0.0;
};

enum class Method { spectral, leapfrog };

// Branch-pure (or mixed) packet on a rank-1 grid: in mode space
// psi_t_hat = i w_branch(k) psi_hat.
TelegraphState init_wavepacket(const WavepacketSpec& spec, const Grid& grid, double m,
                               const Constants& constants = Constants::natural());

// Exact per-mode propagator: decomposes each mode onto its two branches and
// advances them by exp(i w dt). No CFL limit; any nonzero dt, negative for
// time reversal. The degenerate k = 0, m = 0 mode advances secularly as
// psi_hat + psi_t_hat * t.
TelegraphState step_spectral(const TelegraphState& state, double dt);

// One explicit leapfrog step of
// (next - 2 now + prev)/(c^2 dt^2) - lap(now) + sign*(i m/hbar)(next - prev)/(2 dt) = 0.
// Requires c dt <= 0.5 dx (margin below the spectral-Laplacian limit).
ScalarField step_leapfrog(const ScalarField& psi_prev, const ScalarField& psi_now, double dt,
                          const DispersionParams& params);

// Largest leapfrog-stable dt for the grid: 0.5 dx / c.
double leapfrog_max_dt(const Grid& grid, const Constants& constants);

// Intensity-weighted circular mean position in [0, L); immune to periodic
// wrap. Rejects zero-norm and delocalized (circular mean magnitude < 1e-8)
// fields.
double measure_centroid(const ScalarField& psi);

struct VelocityFit {
  double vg;
  double residual;  // rms of fit residuals
};

// Unwraps the centroid trajectory by nearest-image continuity and fits a
// line by least squares. Needs >= 10 samples; steps at the half-domain
// ambiguity bound are rejected as aliased.
VelocityFit measure_group_velocity(const SimulationRecord& record);

// Full run: init, step, record every record_every steps (t = 0 included),
// then fit measured_vg when enough samples exist. keep_snapshots stores the
// recorded psi fields as a history (snapshot interval record_every*dt).
SimulationRecord run_simulation(const WavepacketSpec& spec, const Grid& grid, double m,
                                Method method, double dt, int steps, int record_every,
                                const Constants& constants = Constants::natural(),
                                bool keep_snapshots = false);

}  // namespace longwave

#endif
