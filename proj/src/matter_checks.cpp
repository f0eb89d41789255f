#include "longwave/matter_checks.hpp"

#include <cmath>
#include <utility>

#include "longwave/error.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite3(const std::array<double, 3>& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

double nonzero(double scale) { return scale > 0.0 ? scale : 1.0; }

}  // namespace

SpinorHistory SpinorHistory::make(ScalarHistory up, ScalarHistory down) {
  if (!(up.grid() == down.grid()) || up.dt() != down.dt() || up.t0() != down.t0() ||
      up.length() != down.length())
    throw physics_error("spinor history: components must share grid and time sampling");
  if (up.grid().rank() != 1) throw physics_error("spinor history: rank-1 grids only");
  return SpinorHistory{std::move(up), std::move(down)};
}

ResidualReport dirac_residual(const SpinorHistory& psi, double m, const Constants& constants) {
  if (!(m >= 0.0)) throw physics_error("dirac_residual: mass must be >= 0");
  const Grid& grid = psi.up.grid();
  const double c = constants.c;
  const cplx imc{0.0, m * c / constants.hbar};

  std::vector<ScalarField> rows;
  for (std::size_t i = 1; i + 1 < psi.up.length(); ++i) {
    const ScalarField dup = time_derivative(psi.up, 1, i);
    const ScalarField ddn = time_derivative(psi.down, 1, i);
    const ScalarField gup = gradient(psi.up.snapshot(i)).component_field(0);
    const ScalarField gdn = gradient(psi.down.snapshot(i)).component_field(0);

    std::vector<cplx> r1(grid.size()), r2(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      r1[j] = dup[j] / c + gdn[j] + imc * psi.up.snapshot(i)[j];
      r2[j] = ddn[j] / c + gup[j] - imc * psi.down.snapshot(i)[j];
    }
    rows.emplace_back(grid, std::move(r1));
    rows.emplace_back(grid, std::move(r2));
  }
  return residual_norms(rows, "dirac", psi.up.dt());
}

AlphaVResiduals alpha_v_constraint(const GaugeWave& f, const Grid& grid, double t) {
  const std::array<double, 3>& v = f.v();
  if (v[1] != 0.0 || v[2] != 0.0 || !(v[0] > 0.0))
    throw physics_error(
        "alpha_v_constraint: wave velocity must point along +x (the projection axis of the "
        "two-component representation)");
  if (f.amplitude() == 0.0 || f.k() == 0.0)
    throw physics_error("alpha_v_constraint: gauge function is constant in time");

  const double c = f.constants().c;
  const ScalarField ft = f.sample_f_t(grid, t);
  const ScalarField gfx = f.sample_grad_f(grid, t).component_field(0);
  if (rms(ft) == 0.0)
    throw physics_error("alpha_v_constraint: gauge function is constant in time");

  // (1, +-1)/sqrt(2) projections of -(1/c) f_t I + alpha_x df/dx.
  std::vector<cplx> plus(grid.size()), minus(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    plus[j] = -ft[j] / c + gfx[j];
    minus[j] = -ft[j] / c - gfx[j];
  }
  AlphaVResiduals out{residual_norms(ScalarField(grid, std::move(plus)), "alpha_plus"),
                      residual_norms(ScalarField(grid, std::move(minus)), "alpha_minus")};
  out.plus.scale = nonzero(rms(ft) / c);
  out.minus.scale = out.plus.scale;
  return out;
}

ResidualReport telegraph_residual(const ScalarHistory& psi, double m, int spinor_sign,
                                  const Constants& constants) {
  if (spinor_sign != 1 && spinor_sign != -1)
    throw physics_error("telegraph_residual: spinor_sign must be +1 or -1");
  if (!(m >= 0.0)) throw physics_error("telegraph_residual: mass must be >= 0");
  const double c2 = constants.c * constants.c;
  const cplx ig{0.0, spinor_sign * m / constants.hbar};

  std::vector<ScalarField> rs;
  for (std::size_t i = 1; i + 1 < psi.length(); ++i) {
    const ScalarField dtt = time_derivative(psi, 2, i);
    const ScalarField dt1 = time_derivative(psi, 1, i);
    const ScalarField lap = laplacian(psi.snapshot(i));
    std::vector<cplx> r(psi.grid().size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = dtt[j] / c2 - lap[j] + ig * dt1[j];
    rs.emplace_back(psi.grid(), std::move(r));
  }
  return residual_norms(rs, "telegraph", psi.dt());
}

ContinuitySet ContinuitySet::make(ScalarHistory rho, VectorHistory J,
                                  const std::array<double, 3>& v) {
  if (!(rho.grid() == J.grid()) || rho.dt() != J.dt() || rho.t0() != J.t0() ||
      rho.length() != J.length())
    throw physics_error("continuity set: rho and J must share grid and time sampling");
  if (rho.grid().rank() != 3) throw physics_error("continuity set: rank-3 grid required");
  if (!finite3(v)) throw physics_error("continuity set: velocity must be finite");
  return ContinuitySet{std::move(rho), std::move(J), v};
}

ContinuityResidualFields continuity_residual_fields(const ContinuitySet& set,
                                                    const Constants& constants,
                                                    std::size_t at) {
  const double c2 = constants.c * constants.c;
  return ContinuityResidualFields{
      add(gradient(set.rho.snapshot(at)), scale(time_derivative(set.J, 1, at), 1.0 / c2)),
      add(divergence(set.J.snapshot(at)), time_derivative(set.rho, 1, at))};
}

ContinuityResiduals continuity_residuals(const ContinuitySet& set, const Constants& constants) {
  std::vector<VectorField> grad_rho, curl_j;
  std::vector<ScalarField> charge;
  for (std::size_t i = 1; i + 1 < set.rho.length(); ++i) {
    ContinuityResidualFields fields = continuity_residual_fields(set, constants, i);
    grad_rho.push_back(std::move(fields.grad_rho));
    charge.push_back(std::move(fields.charge));
    curl_j.push_back(curl(set.J.snapshot(i)));
  }
  return ContinuityResiduals{residual_norms(grad_rho, "grad_rho", set.rho.dt()),
                             residual_norms(curl_j, "curl_j", set.rho.dt()),
                             residual_norms(charge, "charge", set.rho.dt())};
}

ContinuityInvarianceResiduals continuity_invariance_residuals(const ContinuitySet& set,
                                                              const GaugeWave& f) {
  const Grid& grid = set.rho.grid();
  const double c2 = f.constants().c * f.constants().c;

  std::vector<ScalarField> r_dot;
  std::vector<VectorField> r_balance, r_cross;
  double s_dot = 0.0, s_balance = 0.0, s_cross = 0.0;
  for (std::size_t i = 0; i < set.rho.length(); ++i) {
    const double t = set.rho.time(i);
    const VectorField gf = f.sample_grad_f(grid, t);
    const ScalarField ft = f.sample_f_t(grid, t);
    const ScalarField& rho = set.rho.snapshot(i);
    const VectorField& J = set.J.snapshot(i);

    r_dot.push_back(sub(dot(gf, J), multiply(ft, rho)));
    r_balance.push_back(sub(multiply(rho, gf), scale(multiply(ft, J), 1.0 / c2)));
    r_cross.push_back(cross(gf, J));

    const double rgf = rms(gf), rft = rms(ft), rr = rms(rho), rj = rms(J);
    s_dot = std::max(s_dot, rgf * rj + rft * rr);
    s_balance = std::max(s_balance, rr * rgf + rft * rj / c2);
    s_cross = std::max(s_cross, rgf * rj);
  }

  ContinuityInvarianceResiduals out{residual_norms(r_dot, "j_dot_gradf", set.rho.dt()),
                                    residual_norms(r_balance, "rho_gradf", set.rho.dt()),
                                    residual_norms(r_cross, "j_cross_gradf", set.rho.dt())};
  out.j_dot_gradf.scale = nonzero(s_dot);
  out.rho_gradf.scale = nonzero(s_balance);
  out.j_cross_gradf.scale = nonzero(s_cross);
  return out;
}

PostGalileanFields post_galilean_fields(const ContinuitySet& set, const Constants& constants,
                                        std::size_t at) {
  const double c2 = constants.c * constants.c;
  const std::array<double, 3> v_over_c2 = {set.v[0] / c2, set.v[1] / c2, set.v[2] / c2};
  ContinuityResidualFields fields = continuity_residual_fields(set, constants, at);
  return PostGalileanFields{add(dot(set.v, fields.grad_rho), fields.charge),
                            add(fields.grad_rho, multiply(fields.charge, v_over_c2))};
}

PostGalileanResiduals post_galilean_residuals(const ContinuitySet& set,
                                              const Constants& constants) {
  std::vector<ScalarField> scalar_rs;
  std::vector<VectorField> vector_rs;
  for (std::size_t i = 1; i + 1 < set.rho.length(); ++i) {
    PostGalileanFields fields = post_galilean_fields(set, constants, i);
    scalar_rs.push_back(std::move(fields.boosted_charge));
    vector_rs.push_back(std::move(fields.boosted_gradient));
  }
  return PostGalileanResiduals{residual_norms(scalar_rs, "boosted_charge", set.rho.dt()),
                               residual_norms(vector_rs, "boosted_gradient", set.rho.dt())};
}

FlowHistory FlowHistory::make(double dt, std::vector<std::array<double, 3>> v) {
  if (!(dt > 0.0)) throw physics_error("flow history: dt must be positive");
  if (v.size() < 3)
    throw physics_error("flow history: need at least 3 samples for centered differences");
  for (const auto& s : v)
    if (!finite3(s)) throw physics_error("flow history: velocity samples must be finite");
  return FlowHistory{dt, std::move(v)};
}

VorticityResult vorticity(const FlowHistory& flow, const Constants& constants) {
  const double c2 = constants.c * constants.c;
  VorticityResult out;
  for (std::size_t i = 1; i + 1 < flow.v.size(); ++i) {
    std::array<double, 3> vdot;
    for (int a = 0; a < 3; ++a)
      vdot[a] = (flow.v[i + 1][a] - flow.v[i - 1][a]) / (2.0 * flow.dt);
    const std::array<double, 3>& v = flow.v[i];
    // (v/c^2) x (-vdot)
    out.omega.push_back({-(v[1] * vdot[2] - v[2] * vdot[1]) / c2,
                         -(v[2] * vdot[0] - v[0] * vdot[2]) / c2,
                         -(v[0] * vdot[1] - v[1] * vdot[0]) / c2});
    out.times.push_back(flow.dt * static_cast<double>(i));
  }
  return out;
}

}  // namespace longwave
