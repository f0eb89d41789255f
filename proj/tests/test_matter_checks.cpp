#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "longwave/dispersion.hpp"
#include "longwave/error.hpp"
#include "longwave/matter_checks.hpp"

using namespace longwave;

namespace {

constexpr double pi = std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

Grid line_grid() { return Grid::make1d(2.0 * pi, 64); }
Grid box_grid() { return Grid::make(3, {2.0 * pi, 2.0 * pi, 1.0}, {8, 8, 4}); }

ScalarHistory scalar_history_3d(
    const Grid& grid, double dt, std::size_t len,
    const std::function<cplx(double, double, double, double)>& fn) {
  std::vector<ScalarField> snaps;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    snaps.push_back(
        ScalarField::sample(grid, [&](double x, double y, double z) { return fn(x, y, z, t); }));
  }
  return ScalarHistory(dt, std::move(snaps));
}

VectorHistory vector_history_3d(
    const Grid& grid, double dt, std::size_t len,
    const std::function<std::array<cplx, 3>(double, double, double, double)>& fn) {
  std::vector<VectorField> snaps;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    snaps.push_back(
        VectorField::sample(grid, [&](double x, double y, double z) { return fn(x, y, z, t); }));
  }
  return VectorHistory(dt, std::move(snaps));
}

// Band-limited random density, strictly positive, drifting with velocity v.
ScalarHistory advected_density(std::mt19937_64& rng, const Grid& grid, double dt,
                               std::size_t len, const std::array<double, 3>& v) {
  std::vector<std::array<double, 5>> terms;
  for (int i = 0; i < 4; ++i)
    terms.push_back({std::floor(uniform(rng, -2.0, 3.0)), std::floor(uniform(rng, -2.0, 3.0)),
                     std::floor(uniform(rng, -1.0, 2.0)), uniform(rng, -0.3, 0.3),
                     uniform(rng, 0.0, 2.0 * pi)});
  return scalar_history_3d(grid, dt, len, [&, terms](double x, double y, double z, double t) {
    double acc = 2.0;
    for (const auto& q : terms) {
      const double ph = 2.0 * pi *
                            (q[0] * (x - v[0] * t) / grid.length(0) +
                             q[1] * (y - v[1] * t) / grid.length(1) +
                             q[2] * (z - v[2] * t) / grid.length(2)) +
                        q[4];
      acc += q[3] * std::cos(ph);
    }
    return cplx{acc, 0.0};
  });
}

ContinuitySet flowing_set(std::mt19937_64& rng, const Grid& grid, double dt, std::size_t len,
                          const std::array<double, 3>& v) {
  ScalarHistory rho = advected_density(rng, grid, dt, len, v);
  std::vector<VectorField> js;
  for (std::size_t i = 0; i < len; ++i) js.push_back(multiply(rho.snapshot(i), v));
  return ContinuitySet::make(std::move(rho), VectorHistory(dt, std::move(js)), v);
}

}  // namespace

TEST_CASE("spinor plane waves built from the 2x2 eigenproblem cancel the residual") {
  const Constants cs = Constants::natural();
  const Grid grid = line_grid();
  const double k = 2.0, m = 1.0;
  const double a = m * cs.c / cs.hbar;

  // lambda u = [[-a, k], [k, a]] u; the + root carries omega = c*lambda.
  const double lambda = std::hypot(k, a);
  const double norm = std::hypot(k, a + lambda);
  const double u_up = k / norm;
  const double u_dn = (a + lambda) / norm;
  const double omega = cs.c * lambda;

  const double dt = 1e-5;
  const ScalarHistory up = sample_history(grid, dt, 5, [&](double x, double t) {
    return u_up * std::exp(cplx{0.0, omega * t - k * x});
  });
  const ScalarHistory down = sample_history(grid, dt, 5, [&](double x, double t) {
    return u_dn * std::exp(cplx{0.0, omega * t - k * x});
  });
  const ResidualReport rep = dirac_residual(SpinorHistory::make(up, down), m, cs);
  CHECK(rep.l2 < 1e-9);
}

TEST_CASE("massless spinors advect: equation residuals vanish for both laws") {
  const Constants cs = Constants::natural();
  const Grid grid = line_grid();
  const double dt = 5e-6;
  const auto g = [&](double x, double t) {
    const double u = x - cs.c * t;
    return cplx{std::cos(2.0 * u) + 0.3 * std::sin(u), 0.0};
  };
  const ScalarHistory up = sample_history(grid, dt, 5, g);
  const ScalarHistory down = sample_history(grid, dt, 5, g);
  CHECK(dirac_residual(SpinorHistory::make(up, down), 0.0, cs).l2 < 1e-10);

  // The same advected profile solves the second-order equation at m = 0.
  // Its residual carries a second time difference whose rounding noise grows
  // as 1/dt^2, so the sweet spot sits near dt = 1e-4, not at the finer dt
  // the first-order law can afford.
  const ScalarHistory wide = sample_history(grid, 1e-4, 5, g);
  CHECK(telegraph_residual(wide, 0.0, +1, cs).l2 < 1e-7);
  CHECK(telegraph_residual(wide, 0.0, -1, cs).l2 < 1e-7);
}

TEST_CASE("spinor fixture validation") {
  const Constants cs = Constants::natural();
  const Grid grid = line_grid();
  const ScalarHistory zero =
      sample_history(grid, 0.1, 3, [](double, double) { return cplx{0.0, 0.0}; });
  CHECK(dirac_residual(SpinorHistory::make(zero, zero), 1.0, cs).linf == 0.0);
  CHECK_THROWS_AS(dirac_residual(SpinorHistory::make(zero, zero), -1.0, cs), physics_error);

  const Grid other = Grid::make1d(2.0 * pi, 32);
  const ScalarHistory small =
      sample_history(other, 0.1, 3, [](double, double) { return cplx{0.0, 0.0}; });
  CHECK_THROWS_AS(SpinorHistory::make(zero, small), physics_error);

  const Grid g3 = Grid::make(3, {1.0, 1.0, 1.0}, {4, 4, 4});
  std::vector<ScalarField> flat(3, ScalarField::zero(g3));
  const ScalarHistory wide(0.1, flat);
  CHECK_THROWS_AS(SpinorHistory::make(wide, wide), physics_error);
}

TEST_CASE("velocity-projection channels of the gauge constraint") {
  const Constants cs = Constants::natural();
  const Grid grid = line_grid();
  const double A = 0.7, k = 1.0, t = 0.6;

  // Independent rms of df/dt over the same sample points.
  const auto ft_rms = [&](double s) {
    double acc = 0.0;
    for (int j = 0; j < grid.points(0); ++j) {
      const double x = grid.coord(0, j);
      const double ft = A * k * s * std::cos(k * (x + s * t));
      acc += ft * ft;
    }
    return std::sqrt(acc / static_cast<double>(grid.points(0)));
  };

  const GaugeWave at_c = GaugeWave::make({cs.c, 0.0, 0.0}, k, A, Waveform::sin, cs);
  const AlphaVResiduals rc = alpha_v_constraint(at_c, grid, t);
  CHECK(rc.plus.l2 < 1e-12 * rc.plus.scale);
  CHECK(rc.minus.l2 == doctest::Approx(2.0 * ft_rms(cs.c) / cs.c).epsilon(1e-12));

  const GaugeWave at_half = GaugeWave::make({0.5 * cs.c, 0.0, 0.0}, k, A, Waveform::sin, cs);
  const AlphaVResiduals rh = alpha_v_constraint(at_half, grid, t);
  CHECK(rh.plus.l2 == doctest::Approx(0.5 * ft_rms(2.0 * cs.c) / cs.c).epsilon(1e-12));

  const GaugeWave off_axis = GaugeWave::make({0.0, cs.c, 0.0}, k, A, Waveform::sin, cs);
  CHECK_THROWS_AS(alpha_v_constraint(off_axis, grid, t), physics_error);
  const GaugeWave silent = GaugeWave::make({cs.c, 0.0, 0.0}, k, 0.0, Waveform::sin, cs);
  CHECK_THROWS_AS(alpha_v_constraint(silent, grid, t), physics_error);
}

TEST_CASE("second-order residual: on-shell modes converge, off-shell modes leave the gap") {
  const Constants cs = Constants::natural();
  const Grid grid = line_grid();
  const double k = 2.0, m = 2.0;
  const DispersionParams params = DispersionParams::make(m, +1, cs);
  const double w_hi = omega_branches(k, params).omega_hi;

  const auto l2_at = [&](double dt, double omega) {
    const ScalarHistory h = sample_history(grid, dt, 5, [&](double x, double t) {
      return std::exp(cplx{0.0, omega * t - k * x});
    });
    return telegraph_residual(h, m, +1, cs).l2;
  };

  const double e1 = l2_at(2e-3, w_hi);
  const double e2 = l2_at(1e-3, w_hi);
  CHECK(e1 / e2 > 3.2);
  CHECK(e1 / e2 < 4.8);

  // Wrong frequency omega = ck: the defect is the quadratic itself.
  const double w_bad = cs.c * k;
  const double want =
      std::abs(w_bad * w_bad + m * cs.c * cs.c / cs.hbar * w_bad - cs.c * cs.c * k * k) /
      (cs.c * cs.c);
  CHECK(l2_at(1e-4, w_bad) == doctest::Approx(want).epsilon(1e-8));

  const ScalarHistory flat =
      sample_history(grid, 0.1, 3, [](double, double) { return cplx{0.4, -0.1}; });
  CHECK(telegraph_residual(flat, m, +1, cs).linf == 0.0);
  CHECK_THROWS_AS(telegraph_residual(flat, m, +2, cs), physics_error);
  CHECK_THROWS_AS(telegraph_residual(flat, -1.0, +1, cs), physics_error);
}

TEST_CASE("continuity laws on a light-speed traveling wave") {
  const Constants cs = Constants::natural();
  const Grid grid = box_grid();
  const double dt = 5e-5;
  const ScalarHistory rho = scalar_history_3d(
      grid, dt, 5,
      [&](double x, double, double, double t) { return cplx{std::cos(x - cs.c * t), 0.0}; });
  const VectorHistory J = vector_history_3d(
      grid, dt, 5, [&](double x, double, double, double t) {
        return std::array<cplx, 3>{cplx{cs.c * std::cos(x - cs.c * t), 0.0}, cplx{0.0, 0.0},
                                   cplx{0.0, 0.0}};
      });
  const ContinuityResiduals r =
      continuity_residuals(ContinuitySet::make(rho, J, {cs.c, 0.0, 0.0}), cs);
  CHECK(r.grad_rho.l2 < 1e-9);
  CHECK(r.curl_j.l2 < 1e-9);
  CHECK(r.charge.l2 < 1e-9);
}

TEST_CASE("continuity laws flag rotational currents and pass static vacuum") {
  const Constants cs = Constants::natural();
  const Grid grid = box_grid();
  const ScalarHistory rho0 = scalar_history_3d(
      grid, 0.1, 3, [](double, double, double, double) { return cplx{0.0, 0.0}; });
  const VectorHistory Jrot = vector_history_3d(
      grid, 0.1, 3, [](double x, double y, double, double) {
        return std::array<cplx, 3>{cplx{-std::sin(y), 0.0}, cplx{std::sin(x), 0.0},
                                   cplx{0.0, 0.0}};
      });
  const ContinuityResiduals r =
      continuity_residuals(ContinuitySet::make(rho0, Jrot, {0.0, 0.0, 0.0}), cs);
  CHECK(r.grad_rho.l2 < 1e-13);
  CHECK(r.charge.l2 < 1e-13);
  // curl J = (cos x + cos y) zhat; its mean square over samples is 1, spread
  // over three components.
  CHECK(r.curl_j.l2 == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  const ScalarHistory rhoc = scalar_history_3d(
      grid, 0.1, 3, [](double, double, double, double) { return cplx{1.5, 0.0}; });
  const VectorHistory J0 = vector_history_3d(
      grid, 0.1, 3,
      [](double, double, double, double) { return std::array<cplx, 3>{}; });
  const ContinuityResiduals rs =
      continuity_residuals(ContinuitySet::make(rhoc, J0, {0.0, 0.0, 0.0}), cs);
  CHECK(rs.grad_rho.linf == 0.0);
  CHECK(rs.curl_j.linf == 0.0);
  CHECK(rs.charge.linf == 0.0);

  const Grid g1 = Grid::make1d(1.0, 8);
  const ScalarHistory r1 =
      sample_history(g1, 0.1, 3, [](double, double) { return cplx{1.0, 0.0}; });
  std::vector<VectorField> vs(3, VectorField::zero(g1));
  CHECK_THROWS_AS(ContinuitySet::make(r1, VectorHistory(0.1, vs), {0.0, 0.0, 0.0}),
                  physics_error);
}

TEST_CASE("gauge-demanded source relations: light-cone flows pass pointwise") {
  const Constants cs = Constants::natural();
  const Grid grid = box_grid();
  std::mt19937_64 rng(0x3a77e001);
  const std::array<double, 3> v{cs.c, 0.0, 0.0};
  const ContinuitySet set = flowing_set(rng, grid, 0.01, 5, v);
  const GaugeWave f = GaugeWave::make(v, 1.0, 0.8, Waveform::sin, cs);
  const ContinuityInvarianceResiduals r = continuity_invariance_residuals(set, f);
  CHECK(r.j_dot_gradf.l2 < 1e-10);
  CHECK(r.rho_gradf.l2 < 1e-10);
  CHECK(r.j_cross_gradf.l2 < 1e-10);
}

TEST_CASE("gauge-demanded source relations: orthogonal, collinear and sub-light cases") {
  const Constants cs = Constants::natural();
  const Grid grid = box_grid();
  const double dt = 0.01;
  const std::size_t len = 5;

  // Current orthogonal to the wave direction with no charge: the dot law
  // holds exactly; the cross law does not and is only reported.
  const ScalarHistory rho0 = scalar_history_3d(
      grid, dt, len, [](double, double, double, double) { return cplx{0.0, 0.0}; });
  const VectorHistory Jy = vector_history_3d(
      grid, dt, len, [](double x, double, double, double) {
        return std::array<cplx, 3>{cplx{0.0, 0.0}, cplx{std::cos(x), 0.0}, cplx{0.0, 0.0}};
      });
  const GaugeWave f = GaugeWave::make({cs.c, 0.0, 0.0}, 1.0, 0.8, Waveform::sin, cs);
  const ContinuityInvarianceResiduals ro =
      continuity_invariance_residuals(ContinuitySet::make(rho0, Jy, {0.0, 0.0, 0.0}), f);
  CHECK(ro.j_dot_gradf.linf < 1e-13);
  CHECK(ro.j_cross_gradf.l2 > 1e-3);

  // Collinear flow at any speed kills the cross law; the dot law leaves the
  // closed-form (v^2/c^2 - 1) rho f_t defect when the wave rides with the flow.
  std::mt19937_64 rng(0x3a77e002);
  const std::array<double, 3> vh{0.5 * cs.c, 0.0, 0.0};
  const ContinuitySet half = flowing_set(rng, grid, dt, len, vh);
  const GaugeWave fh = GaugeWave::make(vh, 1.0, 0.8, Waveform::sin, cs);
  const ContinuityInvarianceResiduals rh = continuity_invariance_residuals(half, fh);
  CHECK(rh.j_cross_gradf.l2 < 1e-12 * rh.j_cross_gradf.scale);

  const double s = cs.c * cs.c / vh[0];
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    const ScalarField& rho = half.rho.snapshot(i);
    for (int jx = 0; jx < grid.points(0); ++jx)
      for (int jy = 0; jy < grid.points(1); ++jy)
        for (int jz = 0; jz < grid.points(2); ++jz) {
          const double x = grid.coord(0, jx);
          const double ft = 0.8 * 1.0 * s * std::cos(1.0 * (x + s * t));
          const double r =
              (vh[0] * vh[0] / (cs.c * cs.c) - 1.0) * rho[grid.index(jx, jy, jz)].real() * ft;
          acc += r * r;
          ++count;
        }
  }
  const double want = std::sqrt(acc / static_cast<double>(count));
  CHECK(rh.j_dot_gradf.l2 == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("boosted residuals recombine the rest-frame fields exactly") {
  const Constants cs = Constants::natural();
  const Grid grid = box_grid();

  // Zero rest-frame residuals give zero boosted residuals.
  const ScalarHistory rhoc = scalar_history_3d(
      grid, 0.1, 3, [](double, double, double, double) { return cplx{2.0, 0.0}; });
  const VectorHistory J0 = vector_history_3d(
      grid, 0.1, 3,
      [](double, double, double, double) { return std::array<cplx, 3>{}; });
  const PostGalileanResiduals trivial = post_galilean_residuals(
      ContinuitySet::make(rhoc, J0, {0.3, -0.2, 0.1}), cs);
  CHECK(trivial.boosted_charge.linf == 0.0);
  CHECK(trivial.boosted_gradient.linf == 0.0);

  // Random smooth set: the boosted fields are the stated combinations.
  std::mt19937_64 rng(0x3a77e003);
  const std::array<double, 3> v{0.4, -0.3, 0.2};
  ScalarHistory rho = advected_density(rng, grid, 0.05, 5, {0.1, 0.2, -0.3});
  std::vector<VectorField> js;
  for (std::size_t i = 0; i < 5; ++i) {
    const double t = 0.05 * static_cast<double>(i);
    js.push_back(VectorField::sample(grid, [&](double x, double y, double) {
      return std::array<cplx, 3>{cplx{0.3 * std::sin(x + t), 0.0},
                                 cplx{0.2 * std::cos(y - 2.0 * t), 0.0}, cplx{0.1, 0.0}};
    }));
  }
  const ContinuitySet set =
      ContinuitySet::make(std::move(rho), VectorHistory(0.05, std::move(js)), v);

  for (std::size_t at = 1; at + 1 < 5; ++at) {
    const PostGalileanFields got = post_galilean_fields(set, cs, at);
    const ContinuityResidualFields parts = continuity_residual_fields(set, cs, at);
    const ScalarField want_charge = add(dot(v, parts.grad_rho), parts.charge);
    const VectorField want_grad = add(
        parts.grad_rho, multiply(parts.charge, {v[0] / (cs.c * cs.c), v[1] / (cs.c * cs.c),
                                                v[2] / (cs.c * cs.c)}));
    const double scale = max_abs(want_charge) + max_abs(want_grad);
    CHECK(max_abs(sub(got.boosted_charge, want_charge)) < 1e-12 * scale);
    CHECK(max_abs(sub(got.boosted_gradient, want_grad)) < 1e-12 * scale);
  }

  // Degenerate boost: the combinations collapse onto the rest-frame laws.
  const ContinuitySet rest = ContinuitySet::make(set.rho, set.J, {0.0, 0.0, 0.0});
  const PostGalileanResiduals r0 = post_galilean_residuals(rest, cs);
  const ContinuityResiduals base = continuity_residuals(rest, cs);
  CHECK(r0.boosted_charge.l2 == doctest::Approx(base.charge.l2).epsilon(1e-14));
  CHECK(r0.boosted_gradient.l2 == doctest::Approx(base.grad_rho.l2).epsilon(1e-14));
}

TEST_CASE("boosted charge law matches its closed form on a separable source") {
  // rho = cos(x - a t), J = b sin(y - a t) yhat, boost v = (0.3, -0.2, 0.1):
  //   v.R_grad + R_charge = (a - vx) sin(x - a t) + b (1 - vy a/c^2) cos(y - a t)
  // and the two addends are uncorrelated over the grid.
  const Constants cs = Constants::natural();
  const Grid grid = box_grid();
  const double a = 0.7, b = 0.5, dt = 1e-3;
  const std::array<double, 3> v{0.3, -0.2, 0.1};

  const ScalarHistory rho = scalar_history_3d(
      grid, dt, 5,
      [&](double x, double, double, double t) { return cplx{std::cos(x - a * t), 0.0}; });
  const VectorHistory J = vector_history_3d(grid, dt, 5, [&](double, double y, double, double t) {
    return std::array<cplx, 3>{cplx{0.0, 0.0}, cplx{b * std::sin(y - a * t), 0.0},
                               cplx{0.0, 0.0}};
  });
  const PostGalileanResiduals r =
      post_galilean_residuals(ContinuitySet::make(rho, J, v), cs);

  const double cx = a - v[0];
  const double cy = b * (1.0 - v[1] * a / (cs.c * cs.c));
  const double want = std::sqrt(0.5 * (cx * cx + cy * cy));
  CHECK(r.boosted_charge.l2 == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("flow vorticity: rectilinear zero, circular closed form, orthogonality") {
  const Constants cs = Constants::natural();
  const double v0 = 0.6;

  const auto circular = [&](double dt, std::size_t len) {
    std::vector<std::array<double, 3>> vs;
    for (std::size_t i = 0; i < len; ++i) {
      const double t = dt * static_cast<double>(i);
      vs.push_back({v0 * std::cos(t), v0 * std::sin(t), 0.0});
    }
    return FlowHistory::make(dt, std::move(vs));
  };

  std::vector<std::array<double, 3>> line;
  for (int i = 0; i < 9; ++i) line.push_back({v0 * std::sin(0.1 * i), 0.0, 0.0});
  const VorticityResult rect = vorticity(FlowHistory::make(0.1, std::move(line)), cs);
  for (const auto& w : rect.omega)
    CHECK(std::hypot(w[0], w[1], w[2]) < 1e-12 * v0 * v0);

  const auto max_err = [&](double dt) {
    const VorticityResult res = vorticity(circular(dt, 9), cs);
    double m = 0.0;
    const double want = -v0 * v0 / (cs.c * cs.c);
    for (const auto& w : res.omega)
      m = std::max(m, std::hypot(w[0], w[1], w[2] - want));
    return m;
  };
  CHECK(max_err(0.02) < 1e-3);
  const double ratio = max_err(0.02) / max_err(0.01);
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);

  std::vector<std::array<double, 3>> still(5, {0.0, 0.0, 0.0});
  const VorticityResult zero = vorticity(FlowHistory::make(0.1, std::move(still)), cs);
  for (const auto& w : zero.omega) CHECK(std::hypot(w[0], w[1], w[2]) == 0.0);

  std::mt19937_64 rng(0x3a77e004);
  std::vector<std::array<double, 3>> wild;
  for (int i = 0; i < 7; ++i)
    wild.push_back({uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)});
  const FlowHistory flow = FlowHistory::make(0.05, wild);
  const VorticityResult res = vorticity(flow, cs);
  REQUIRE(res.omega.size() == wild.size() - 2);
  for (std::size_t i = 0; i < res.omega.size(); ++i) {
    const auto& w = res.omega[i];
    const auto& v = wild[i + 1];
    const std::array<double, 3> vdot{(wild[i + 2][0] - wild[i][0]) / 0.1,
                                     (wild[i + 2][1] - wild[i][1]) / 0.1,
                                     (wild[i + 2][2] - wild[i][2]) / 0.1};
    const double wn = std::hypot(w[0], w[1], w[2]);
    const double vn = std::hypot(v[0], v[1], v[2]);
    const double dn = std::hypot(vdot[0], vdot[1], vdot[2]);
    CHECK(std::abs(w[0] * v[0] + w[1] * v[1] + w[2] * v[2]) <= 1e-12 * (wn * vn + 1e-300));
    CHECK(std::abs(w[0] * vdot[0] + w[1] * vdot[1] + w[2] * vdot[2]) <=
          1e-12 * (wn * dn + 1e-300));
  }

  std::vector<std::array<double, 3>> two(2, {1.0, 0.0, 0.0});
  CHECK_THROWS_AS(FlowHistory::make(0.1, std::move(two)), physics_error);
  std::vector<std::array<double, 3>> ok(3, {1.0, 0.0, 0.0});
  CHECK_THROWS_AS(FlowHistory::make(0.0, std::move(ok)), physics_error);
}
