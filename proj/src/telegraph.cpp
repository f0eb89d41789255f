#include "longwave/telegraph.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <utility>

#include "longwave/error.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_resolvable(const WavepacketSpec& spec, const Grid& grid) {
  if (grid.rank() != 1) throw physics_error("init_wavepacket: rank-1 grids only");
  if (!(spec.sigma > 0.0)) throw physics_error("init_wavepacket: sigma must be positive");
  if (spec.spinor_sign != 1 && spec.spinor_sign != -1)
    throw physics_error("init_wavepacket: spinor_sign must be +1 or -1");
  const double dx = grid.spacing(0);
  if (spec.sigma < 4.0 * dx) {
    std::ostringstream os;
    os << "init_wavepacket: sigma = " << spec.sigma
       << " is unresolvable; need sigma >= 4*spacing = " << 4.0 * dx;
    throw physics_error(os.str());
  }
  // The envelope is evaluated with the plain (non-periodic) distance x - x0,
  // so its value at the domain edges must be negligible or the packet is
  // visibly truncated by wrap-around.
  const double L = grid.length(0);
  double x0 = std::fmod(spec.x0, L);
  if (x0 < 0.0) x0 += L;
  const double edge = std::min(x0, L - x0);
  const double tail = std::exp(-edge * edge / (2.0 * spec.sigma * spec.sigma));
  if (!(tail < 1e-10)) {
    std::ostringstream os;
    os << "init_wavepacket: envelope at the domain edge is " << tail
       << " of the peak (need < 1e-10); widen the domain or recenter x0";
    throw physics_error(os.str());
  }
}

// psi_t_hat multiplier for one mode: i*omega of the selected branch, or the
// even split across both branches for mixed states.
cplx branch_rate(const BranchPair& w, Branch branch) {
  switch (branch) {
    case Branch::hi:
      return kI * w.omega_hi;
    case Branch::lo:
      return kI * w.omega_lo;
    case Branch::mixed:
      return kI * (0.5 * (w.omega_hi + w.omega_lo));
  }
  throw physics_error("init_wavepacket: unknown branch");
}

double l2_norm(const ScalarField& f) {
  double sum = 0.0;
  for (const cplx& v : f.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().spacing(0));
}

}  // namespace

TelegraphState init_wavepacket(const WavepacketSpec& spec, const Grid& grid, double m,
                               const Constants& constants) {
  check_resolvable(spec, grid);
  const auto params = DispersionParams::make(m, spec.spinor_sign, constants);

  ScalarField psi = ScalarField::sample1d(grid, [&](double x) {
    const double d = x - spec.x0;
    const double envelope = std::exp(-d * d / (2.0 * spec.sigma * spec.sigma));
    return spec.amplitude * envelope * std::exp(-kI * (spec.k0 * x));
  });

  std::vector<cplx> psi_hat = fft_forward(psi);
  const std::vector<double> ks = grid.wavenumbers(0);
  std::vector<cplx> psi_t_hat(psi_hat.size());
  for (std::size_t j = 0; j < psi_hat.size(); ++j) {
    const BranchPair w = omega_branches(ks[j], params);
    psi_t_hat[j] = branch_rate(w, spec.branch) * psi_hat[j];
  }

  ScalarField psi_t = fft_inverse(grid, psi_t_hat);
  return TelegraphState{0.0, std::move(psi), std::move(psi_t), params};
}

TelegraphState step_spectral(const TelegraphState& state, double dt) {
  if (!std::isfinite(dt)) throw physics_error("step_spectral: dt must be finite");
  const Grid& grid = state.psi.grid();
  if (!(state.psi_t.grid() == grid))
    throw physics_error("step_spectral: psi and psi_t grids differ");

  std::vector<cplx> psi_hat = fft_forward(state.psi);
  std::vector<cplx> psi_t_hat = fft_forward(state.psi_t);
  const std::vector<double> ks = grid.wavenumbers(0);

  for (std::size_t j = 0; j < psi_hat.size(); ++j) {
    const BranchPair w = omega_branches(ks[j], state.params);
    if (w.omega_hi == w.omega_lo) {
      // Double root (k = 0 with m = 0): secular drift psi(t) = psi + psi_t*t.
      psi_hat[j] += psi_t_hat[j] * dt;
      continue;
    }
    const cplx a_hi = (psi_t_hat[j] - kI * w.omega_lo * psi_hat[j]) /
                      (kI * (w.omega_hi - w.omega_lo));
    const cplx a_lo = psi_hat[j] - a_hi;
    const cplx ph = std::exp(kI * (w.omega_hi * dt));
    const cplx pl = std::exp(kI * (w.omega_lo * dt));
    psi_hat[j] = a_hi * ph + a_lo * pl;
    psi_t_hat[j] = kI * w.omega_hi * a_hi * ph + kI * w.omega_lo * a_lo * pl;
  }

  return TelegraphState{state.t + dt, fft_inverse(grid, psi_hat),
                        fft_inverse(grid, psi_t_hat), state.params};
}

double leapfrog_max_dt(const Grid& grid, const Constants& constants) {
  return 0.5 * grid.spacing(0) / constants.c;
}

ScalarField step_leapfrog(const ScalarField& psi_prev, const ScalarField& psi_now, double dt,
                          const DispersionParams& params) {
  if (!(psi_prev.grid() == psi_now.grid()))
    throw physics_error("step_leapfrog: psi_prev and psi_now grids differ");
  if (!(dt > 0.0)) throw physics_error("step_leapfrog: dt must be positive");
  const Grid& grid = psi_now.grid();
  const double c = params.constants().c;
  const double stable = leapfrog_max_dt(grid, params.constants());
  if (c * dt > 0.5 * grid.spacing(0) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "step_leapfrog: dt = " << dt << " violates the stability bound c*dt <= 0.5*spacing;"
       << " largest stable dt = " << stable;
    throw physics_error(os.str());
  }

  const ScalarField lap = laplacian(psi_now);
  const double a = 1.0 / (c * c * dt * dt);
  const double g = params.spinor_sign() * params.m() / (2.0 * params.constants().hbar * dt);
  const cplx denom{a, g};
  const cplx prev_coeff{a, -g};

  std::vector<cplx> next(psi_now.size());
  for (std::size_t j = 0; j < next.size(); ++j)
    next[j] = (2.0 * a * psi_now[j] + lap[j] - prev_coeff * psi_prev[j]) / denom;
  return ScalarField(grid, std::move(next));
}

double measure_centroid(const ScalarField& psi) {
  const Grid& grid = psi.grid();
  if (grid.rank() != 1) throw physics_error("measure_centroid: rank-1 fields only");
  const double L = grid.length(0);
  const double two_pi = 2.0 * std::numbers::pi;

  double norm2 = 0.0;
  cplx z{0.0, 0.0};
  for (int j = 0; j < grid.points(0); ++j) {
    const double w = std::norm(psi[static_cast<std::size_t>(j)]);
    norm2 += w;
    z += w * std::exp(kI * (two_pi * grid.coord(0, j) / L));
  }
  if (norm2 == 0.0) throw physics_error("measure_centroid: zero-norm field");
  if (std::abs(z) / norm2 < 1e-8)
    throw physics_error("measure_centroid: field is delocalized, circular centroid undefined");

  double x = L * std::arg(z) / two_pi;
  if (x < 0.0) x += L;
  if (x >= L) x -= L;
  return x;
}

VelocityFit measure_group_velocity(const SimulationRecord& record) {
  const std::size_t n = record.times.size();
  if (record.centroids.size() != n)
    throw physics_error("measure_group_velocity: times/centroids length mismatch");
  if (n < 10) throw physics_error("measure_group_velocity: need at least 10 recorded centroids");
  const double L = record.domain_length;
  if (!(L > 0.0)) throw physics_error("measure_group_velocity: record has no domain length");

  // Nearest-image unwrap: each consecutive displacement is mapped into
  // (-L/2, L/2]. Steps at the ambiguity bound itself cannot be unwrapped.
  std::vector<double> u(n);
  u[0] = record.centroids[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double d = std::remainder(record.centroids[i] - record.centroids[i - 1], L);
    if (std::abs(d) >= 0.5 * L * (1.0 - 1e-9))
      throw physics_error(
          "measure_group_velocity: centroid moved half the domain between samples (aliased); "
          "record more often");
    u[i] = u[i - 1] + d;
  }

  double st = 0.0, su = 0.0, stt = 0.0, stu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    st += record.times[i];
    su += u[i];
    stt += record.times[i] * record.times[i];
    stu += record.times[i] * u[i];
  }
  const double nn = static_cast<double>(n);
  const double det = nn * stt - st * st;
  if (det == 0.0) throw physics_error("measure_group_velocity: degenerate time samples");
  const double slope = (nn * stu - st * su) / det;
  const double intercept = (su - slope * st) / nn;

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u[i] - (intercept + slope * record.times[i]);
    ss += r * r;
  }
  return VelocityFit{slope, std::sqrt(ss / nn)};
}

SimulationRecord run_simulation(const WavepacketSpec& spec, const Grid& grid, double m,
                                Method method, double dt, int steps, int record_every,
                                const Constants& constants, bool keep_snapshots) {
  if (!(dt > 0.0)) throw physics_error("run_simulation: dt must be positive");
  if (steps < 0) throw physics_error("run_simulation: steps must be >= 0");
  if (record_every < 1) throw physics_error("run_simulation: record_every must be >= 1");

  TelegraphState state = init_wavepacket(spec, grid, m, constants);
  if (method == Method::leapfrog && constants.c * dt > 0.5 * grid.spacing(0) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "run_simulation: dt = " << dt << " violates the leapfrog stability bound;"
       << " largest stable dt = " << leapfrog_max_dt(grid, constants);
    throw physics_error(os.str());
  }

  SimulationRecord record;
  record.domain_length = grid.length(0);
  std::vector<ScalarField> kept;
  auto record_state = [&](double t, const ScalarField& psi) {
    record.times.push_back(t);
    record.centroids.push_back(measure_centroid(psi));
    record.l2_norms.push_back(l2_norm(psi));
    if (keep_snapshots) kept.push_back(psi);
  };
  record_state(0.0, state.psi);

  if (method == Method::spectral) {
    for (int n = 1; n <= steps; ++n) {
      state = step_spectral(state, dt);
      if (n % record_every == 0) record_state(n * dt, state.psi);
    }
  } else {
    // Bootstrap: one Taylor step using psi_tt = c^2*(lap(psi) - s*(i m/hbar)*psi_t).
    ScalarField prev = state.psi;
    ScalarField now = state.psi;
    if (steps > 0) {
      const double c = constants.c;
      const ScalarField lap = laplacian(state.psi);
      const cplx ig{0.0, state.params.spinor_sign() * m / constants.hbar};
      std::vector<cplx> first(state.psi.size());
      for (std::size_t j = 0; j < first.size(); ++j)
        first[j] = state.psi[j] + dt * state.psi_t[j] +
                   0.5 * dt * dt * c * c * (lap[j] - ig * state.psi_t[j]);
      now = ScalarField(grid, std::move(first));
      if (1 % record_every == 0) record_state(dt, now);
    }
    for (int n = 2; n <= steps; ++n) {
      ScalarField next = step_leapfrog(prev, now, dt, state.params);
      prev = std::move(now);
      now = std::move(next);
      if (n % record_every == 0) record_state(n * dt, now);
    }
  }

  if (keep_snapshots && kept.size() >= 3)
    record.snapshots.emplace(record_every * dt, std::move(kept), 0.0);
  if (record.times.size() >= 10) {
    const VelocityFit fit = measure_group_velocity(record);
    record.measured_vg = fit.vg;
    record.fit_residual = fit.residual;
  }
  return record;
}

}  // namespace longwave
