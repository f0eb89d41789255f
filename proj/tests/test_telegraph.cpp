#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "longwave/dispersion.hpp"
#include "longwave/error.hpp"
#include "longwave/spectral.hpp"
#include "longwave/telegraph.hpp"

using namespace longwave;

namespace {

constexpr double pi = std::numbers::pi;

TelegraphState plane_wave_state(const Grid& grid, double k, double omega,
                                const DispersionParams& params) {
  ScalarField psi =
      ScalarField::sample1d(grid, [&](double x) { return std::exp(cplx{0.0, k * x}); });
  ScalarField psi_t = scale(psi, cplx{0.0, omega});
  return TelegraphState{0.0, std::move(psi), std::move(psi_t), params};
}

// Per-mode branch amplitudes from (psi_hat, psi_t_hat); the inverse of the
// branch superposition at one instant.
struct BranchAmps {
  std::vector<double> hi;
  std::vector<double> lo;
};

BranchAmps branch_amplitudes(const TelegraphState& s) {
  const std::vector<cplx> ph = fft_forward(s.psi);
  const std::vector<cplx> pt = fft_forward(s.psi_t);
  const std::vector<double> ks = s.psi.grid().wavenumbers(0);
  BranchAmps out;
  for (std::size_t j = 0; j < ph.size(); ++j) {
    const BranchPair b = omega_branches(ks[j], s.params);
    const cplx iwhi{0.0, b.omega_hi}, iwlo{0.0, b.omega_lo};
    const cplx a_hi = (pt[j] - iwlo * ph[j]) / (iwhi - iwlo);
    out.hi.push_back(std::abs(a_hi));
    out.lo.push_back(std::abs(ph[j] - a_hi));
  }
  return out;
}

double rel_l2_diff(const ScalarField& a, const ScalarField& b) {
  return rms(sub(a, b)) / rms(b);
}

}  // namespace

TEST_CASE("wavepacket construction: centroid, zero amplitude, shape errors") {
  const Grid grid = Grid::make1d(64.0, 256);
  WavepacketSpec spec;
  spec.k0 = 5.0;
  spec.sigma = 2.0;
  spec.x0 = 32.0;

  const TelegraphState s = init_wavepacket(spec, grid, 2.0);
  CHECK(std::abs(measure_centroid(s.psi) - 32.0) < 1e-9 * 64.0);

  WavepacketSpec flat = spec;
  flat.amplitude = cplx{0.0, 0.0};
  const TelegraphState z = init_wavepacket(flat, grid, 2.0);
  CHECK(max_abs(z.psi) == 0.0);
  CHECK(max_abs(z.psi_t) == 0.0);

  WavepacketSpec thin = spec;
  thin.sigma = 0.5 * grid.spacing(0);
  CHECK_THROWS_AS(init_wavepacket(thin, grid, 2.0), physics_error);

  WavepacketSpec wide = spec;
  wide.sigma = 30.0;  // wrap overlap at the domain edge
  CHECK_THROWS_AS(init_wavepacket(wide, grid, 2.0), physics_error);

  const Grid g3 = Grid::make(3, {1.0, 1.0, 1.0}, {4, 4, 4});
  CHECK_THROWS_AS(init_wavepacket(spec, g3, 2.0), physics_error);
}

TEST_CASE("one exact step multiplies a branch-pure mode by its phase") {
  const Grid grid = Grid::make1d(2.0 * pi, 32);
  const DispersionParams params = DispersionParams::make(2.0, +1);
  const double k = 3.0;
  const BranchPair b = omega_branches(k, params);
  const TelegraphState s0 = plane_wave_state(grid, k, b.omega_hi, params);

  const double dt = 0.37;
  const TelegraphState s1 = step_spectral(s0, dt);
  const cplx phase = std::exp(cplx{0.0, b.omega_hi * dt});
  CHECK(max_abs(sub(s1.psi, scale(s0.psi, phase))) < 1e-13 * max_abs(s0.psi));
  CHECK(s1.t == doctest::Approx(dt));

  const std::vector<cplx> h0 = fft_forward(s0.psi);
  const std::vector<cplx> h1 = fft_forward(s1.psi);
  for (std::size_t j = 0; j < h0.size(); ++j)
    CHECK(std::abs(std::abs(h1[j]) - std::abs(h0[j])) < 1e-13 * static_cast<double>(h0.size()));
}

TEST_CASE("massless packets advect rigidly at c") {
  const Grid grid = Grid::make1d(256.0, 1024);
  WavepacketSpec spec;
  spec.k0 = 5.0;
  spec.sigma = 8.0;
  spec.x0 = 128.0;

  TelegraphState s = init_wavepacket(spec, grid, 0.0);
  const ScalarField psi0 = s.psi;
  const double T = 10.0;  // exactly 40 grid spacings at c = 1
  for (int i = 0; i < 100; ++i) s = step_spectral(s, T / 100.0);

  const int shift = 40;
  ScalarField want = ScalarField::zero(grid);
  for (int j = 0; j < grid.points(0); ++j)
    want[grid.index(j)] = psi0[grid.index(j - shift)];
  CHECK(rel_l2_diff(s.psi, want) < 1e-10);
}

TEST_CASE("exact stepping is reversible") {
  const Grid grid = Grid::make1d(64.0, 256);
  WavepacketSpec spec;
  spec.k0 = 3.0;
  spec.sigma = 3.0;
  spec.x0 = 28.0;

  const TelegraphState s0 = init_wavepacket(spec, grid, 2.0);
  TelegraphState s = step_spectral(s0, 0.37);
  s = step_spectral(s, -0.37);
  CHECK(max_abs(sub(s.psi, s0.psi)) < 1e-12 * max_abs(s0.psi));
  CHECK(max_abs(sub(s.psi_t, s0.psi_t)) < 1e-12 * max_abs(s0.psi_t));

  // Longer round trip, many steps out and back.
  TelegraphState r = s0;
  for (int i = 0; i < 50; ++i) r = step_spectral(r, 0.1);
  for (int i = 0; i < 50; ++i) r = step_spectral(r, -0.1);
  CHECK(rel_l2_diff(r.psi, s0.psi) < 1e-11);
}

TEST_CASE("per-mode branch magnitudes are conserved, mixed packets included") {
  const Grid grid = Grid::make1d(64.0, 256);
  WavepacketSpec spec;
  spec.k0 = 4.0;
  spec.sigma = 3.0;
  spec.x0 = 32.0;
  spec.branch = Branch::mixed;

  TelegraphState s = init_wavepacket(spec, grid, 2.0);
  const BranchAmps before = branch_amplitudes(s);
  for (int i = 0; i < 25; ++i) s = step_spectral(s, 0.12);
  const BranchAmps after = branch_amplitudes(s);

  double peak = 0.0;
  for (double a : before.hi) peak = std::max(peak, a);
  for (std::size_t j = 0; j < before.hi.size(); ++j) {
    CHECK(std::abs(after.hi[j] - before.hi[j]) <= 1e-12 * peak);
    CHECK(std::abs(after.lo[j] - before.lo[j]) <= 1e-12 * peak);
  }
}

TEST_CASE("leapfrog stepping: zero fixed point, stability bound, second order") {
  const Grid grid = Grid::make1d(2.0 * pi, 64);
  const DispersionParams params = DispersionParams::make(2.0, +1);

  const ScalarField zero = ScalarField::zero(grid);
  CHECK(max_abs(step_leapfrog(zero, zero, 0.01, params)) == 0.0);

  const double stable = leapfrog_max_dt(grid, params.constants());
  CHECK(stable == doctest::Approx(0.5 * grid.spacing(0)).epsilon(1e-15));
  try {
    step_leapfrog(zero, zero, 1.5 * stable, params);
    FAIL("stability bound not enforced");
  } catch (const physics_error& e) {
    CHECK(std::string(e.what()).find("largest stable dt") != std::string::npos);
  }

  // Phase error against the exact propagator shrinks by 4x when dt halves.
  const double k = 2.0;
  const BranchPair b = omega_branches(k, params);
  const auto leapfrog_err = [&](double dt, int steps) {
    const TelegraphState s0 = plane_wave_state(grid, k, b.omega_hi, params);
    TelegraphState exact = s0;
    ScalarField prev = step_spectral(s0, -dt).psi;
    ScalarField now = s0.psi;
    for (int i = 0; i < steps; ++i) {
      ScalarField next = step_leapfrog(prev, now, dt, params);
      prev = std::move(now);
      now = std::move(next);
      exact = step_spectral(exact, dt);
    }
    return rel_l2_diff(now, exact.psi);
  };
  const double e1 = leapfrog_err(0.02, 50);
  const double e2 = leapfrog_err(0.01, 100);
  CHECK(e1 / e2 > 3.2);
  CHECK(e1 / e2 < 4.8);
}

TEST_CASE("centroid measurement: symmetry, delocalization, empty field") {
  const Grid grid = Grid::make1d(100.0, 512);
  const ScalarField g1 = ScalarField::sample1d(grid, [](double x) {
    return cplx{std::exp(-(x - 73.0) * (x - 73.0) / 8.0), 0.0};
  });
  CHECK(std::abs(measure_centroid(g1) - 73.0) < 1e-9 * 100.0);

  const ScalarField two = ScalarField::sample1d(grid, [](double x) {
    const double d1 = x - 25.0, d2 = x - 75.0;
    return cplx{std::exp(-d1 * d1 / 8.0) + std::exp(-d2 * d2 / 8.0), 0.0};
  });
  try {
    measure_centroid(two);
    FAIL("delocalized field not rejected");
  } catch (const physics_error& e) {
    CHECK(std::string(e.what()).find("delocalized") != std::string::npos);
  }

  CHECK_THROWS_AS(measure_centroid(ScalarField::zero(grid)), physics_error);
}

TEST_CASE("velocity fit: exact line, sample floor, wrap aliasing") {
  SimulationRecord rec;
  rec.domain_length = 10.0;
  for (int i = 0; i < 12; ++i) {
    const double t = 0.5 * i;
    rec.times.push_back(t);
    rec.centroids.push_back(std::fmod(2.0 + 0.5 * t, 10.0));
    rec.l2_norms.push_back(1.0);
  }
  const VelocityFit fit = measure_group_velocity(rec);
  CHECK(fit.vg == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);

  SimulationRecord few = rec;
  few.times.resize(9);
  few.centroids.resize(9);
  CHECK_THROWS_AS(measure_group_velocity(few), physics_error);

  SimulationRecord jumpy = rec;
  jumpy.centroids[6] = std::fmod(jumpy.centroids[5] + 5.0, 10.0);  // half-domain step
  CHECK_THROWS_AS(measure_group_velocity(jumpy), physics_error);
}

TEST_CASE("full runs: massless speed, norm drift, empty run flag") {
  const Grid grid = Grid::make1d(256.0, 1024);
  WavepacketSpec spec;
  spec.k0 = 5.0;
  spec.sigma = 8.0;
  spec.x0 = 128.0;

  const SimulationRecord still = run_simulation(spec, grid, 0.0, Method::spectral, 0.1, 0, 1);
  CHECK(still.times.size() == 1);
  CHECK_FALSE(still.measured_vg.has_value());

  const SimulationRecord rec =
      run_simulation(spec, grid, 0.0, Method::spectral, 0.05, 400, 20);
  REQUIRE(rec.measured_vg.has_value());
  CHECK(std::abs(*rec.measured_vg - 1.0) < 1e-3);
  for (double n : rec.l2_norms)
    CHECK(std::abs(n - rec.l2_norms.front()) < 1e-10 * rec.l2_norms.front());
}

TEST_CASE("massive packet speed matches the closed-form group velocity within 1%") {
  const Grid grid = Grid::make1d(256.0, 1024);
  WavepacketSpec spec;
  spec.k0 = 5.0;
  spec.sigma = 8.0;
  spec.x0 = 128.0;

  const SimulationRecord rec =
      run_simulation(spec, grid, 2.0, Method::spectral, 0.05, 1000, 50, Constants::natural(),
                     true);
  REQUIRE(rec.measured_vg.has_value());
  const double want = 5.0 / std::sqrt(26.0);
  CHECK(std::abs(*rec.measured_vg - want) < 0.01 * want);
  REQUIRE(rec.snapshots.has_value());
  CHECK(rec.snapshots->length() == rec.times.size());
  CHECK(rec.snapshots->dt() == doctest::Approx(0.05 * 50).epsilon(1e-15));
}

TEST_CASE("run parameter validation") {
  const Grid grid = Grid::make1d(64.0, 256);
  WavepacketSpec spec;
  spec.k0 = 2.0;
  spec.sigma = 3.0;
  spec.x0 = 32.0;
  CHECK_THROWS_AS(run_simulation(spec, grid, 1.0, Method::spectral, -0.1, 10, 1),
                  physics_error);
  CHECK_THROWS_AS(run_simulation(spec, grid, 1.0, Method::spectral, 0.1, -1, 1), physics_error);
  CHECK_THROWS_AS(run_simulation(spec, grid, 1.0, Method::spectral, 0.1, 10, 0), physics_error);
  // Leapfrog runs inherit the stability bound.
  CHECK_THROWS_AS(run_simulation(spec, grid, 1.0, Method::leapfrog, 1.0, 10, 1), physics_error);
}
