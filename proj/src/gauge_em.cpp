#include "longwave/gauge_em.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "longwave/error.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

namespace {

bool finite3(const std::array<double, 3>& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

// Shared-alignment bookkeeping for optional history members.
struct Alignment {
  bool set = false;
  Grid grid = Grid::make1d(1.0, 4);
  double dt = 0.0;
  double t0 = 0.0;
  std::size_t len = 0;
};

template <class HistoryT>
void merge_alignment(Alignment& a, const std::optional<HistoryT>& h, const char* what) {
  if (!h) return;
  if (!a.set) {
    a = Alignment{true, h->grid(), h->dt(), h->t0(), h->length()};
    return;
  }
  if (!(h->grid() == a.grid) || h->dt() != a.dt || h->t0() != a.t0 || h->length() != a.len)
    throw physics_error(std::string("field set: ") + what +
                        " history is not aligned with the others");
}

double nonzero(double scale) { return scale > 0.0 ? scale : 1.0; }

}  // namespace

GaugeWave::GaugeWave(const std::array<double, 3>& v, double k, double amplitude,
                     Waveform waveform, const Constants& constants)
    : v_(v), k_(k), amplitude_(amplitude), waveform_(waveform), constants_(constants) {
  speed_ = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  vhat_ = {v[0] / speed_, v[1] / speed_, v[2] / speed_};
  s_ = constants.c * constants.c / speed_;
}

GaugeWave GaugeWave::make(const std::array<double, 3>& v, double k, double amplitude,
                          Waveform waveform, const Constants& constants) {
  if (!finite3(v) || !std::isfinite(k) || !std::isfinite(amplitude))
    throw physics_error("gauge wave: parameters must be finite");
  if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0)
    throw physics_error("gauge wave: velocity must be nonzero (phase speed c^2/|v| degenerates)");
  return GaugeWave(v, k, amplitude, waveform, constants);
}

double GaugeWave::w0(double arg) const {
  return waveform_ == Waveform::sin ? std::sin(arg) : std::cos(arg);
}
double GaugeWave::w1(double arg) const {
  return waveform_ == Waveform::sin ? std::cos(arg) : -std::sin(arg);
}
double GaugeWave::w2(double arg) const { return -w0(arg); }

double GaugeWave::phase(double x, double y, double z, double t) const {
  return k_ * (x * vhat_[0] + y * vhat_[1] + z * vhat_[2] + s_ * t);
}

double GaugeWave::f(double x, double y, double z, double t) const {
  return amplitude_ * w0(phase(x, y, z, t));
}
double GaugeWave::f_t(double x, double y, double z, double t) const {
  return amplitude_ * k_ * s_ * w1(phase(x, y, z, t));
}
double GaugeWave::f_tt(double x, double y, double z, double t) const {
  return amplitude_ * k_ * k_ * s_ * s_ * w2(phase(x, y, z, t));
}
double GaugeWave::lap_f(double x, double y, double z, double t) const {
  return amplitude_ * k_ * k_ * w2(phase(x, y, z, t));
}
std::array<double, 3> GaugeWave::grad_f(double x, double y, double z, double t) const {
  const double g = amplitude_ * k_ * w1(phase(x, y, z, t));
  return {g * vhat_[0], g * vhat_[1], g * vhat_[2]};
}
std::array<double, 3> GaugeWave::grad_f_t(double x, double y, double z, double t) const {
  const double g = amplitude_ * k_ * k_ * s_ * w2(phase(x, y, z, t));
  return {g * vhat_[0], g * vhat_[1], g * vhat_[2]};
}

ScalarField GaugeWave::sample_f(const Grid& grid, double t) const {
  return ScalarField::sample(grid, [&](double x, double y, double z) { return cplx(f(x, y, z, t)); });
}
ScalarField GaugeWave::sample_f_t(const Grid& grid, double t) const {
  return ScalarField::sample(grid,
                             [&](double x, double y, double z) { return cplx(f_t(x, y, z, t)); });
}
ScalarField GaugeWave::sample_f_tt(const Grid& grid, double t) const {
  return ScalarField::sample(grid,
                             [&](double x, double y, double z) { return cplx(f_tt(x, y, z, t)); });
}
ScalarField GaugeWave::sample_lap_f(const Grid& grid, double t) const {
  return ScalarField::sample(
      grid, [&](double x, double y, double z) { return cplx(lap_f(x, y, z, t)); });
}
VectorField GaugeWave::sample_grad_f(const Grid& grid, double t) const {
  return VectorField::sample(grid, [&](double x, double y, double z) {
    const auto g = grad_f(x, y, z, t);
    return std::array<cplx, 3>{cplx(g[0]), cplx(g[1]), cplx(g[2])};
  });
}
VectorField GaugeWave::sample_grad_f_t(const Grid& grid, double t) const {
  return VectorField::sample(grid, [&](double x, double y, double z) {
    const auto g = grad_f_t(x, y, z, t);
    return std::array<cplx, 3>{cplx(g[0]), cplx(g[1]), cplx(g[2])};
  });
}

ResidualReport gauge_constraint_residual(const GaugeWave& wave, const Grid& grid, double t) {
  const double c = wave.constants().c;
  const std::array<double, 3> v_over_c2 = {wave.v()[0] / (c * c), wave.v()[1] / (c * c),
                                           wave.v()[2] / (c * c)};
  const VectorField gf = wave.sample_grad_f(grid, t);
  const VectorField r = sub(gf, multiply(wave.sample_f_t(grid, t), v_over_c2));
  ResidualReport report = residual_norms(r, "gauge_constraint");
  report.scale = nonzero(rms(gf));
  return report;
}

ResidualReport wave_residual(const GaugeWave& wave, const Grid& grid, double t) {
  const double c = wave.constants().c;
  const ScalarField lap = wave.sample_lap_f(grid, t);
  const ScalarField r = sub(scale(wave.sample_f_tt(grid, t), 1.0 / (c * c)), lap);
  ResidualReport report = residual_norms(r, "wave");
  report.scale = nonzero(rms(lap));
  return report;
}

EMFieldSet EMFieldSet::make(std::optional<VectorHistory> E, std::optional<VectorHistory> B,
                            std::optional<ScalarHistory> rho, std::optional<VectorHistory> J) {
  Alignment a;
  merge_alignment(a, E, "E");
  merge_alignment(a, B, "B");
  merge_alignment(a, rho, "rho");
  merge_alignment(a, J, "J");
  if (!a.set) throw physics_error("field set: at least one field history is required");
  if (a.grid.rank() != 3) throw physics_error("field set: rank-3 grid required");
  return EMFieldSet{std::move(E), std::move(B), std::move(rho), std::move(J)};
}

MaxwellResiduals maxwell_residuals(const EMFieldSet& fields, const Constants& constants) {
  if (!fields.E || !fields.B)
    throw physics_error("maxwell_residuals: E and B histories are required for time derivatives");
  const VectorHistory& E = *fields.E;
  const VectorHistory& B = *fields.B;
  const Grid& grid = E.grid();
  const double c2 = constants.c * constants.c;

  std::vector<VectorField> faraday, ampere;
  std::vector<ScalarField> gauss_e, gauss_b;
  for (std::size_t i = 1; i + 1 < E.length(); ++i) {
    faraday.push_back(add(curl(E.snapshot(i)), time_derivative(B, 1, i)));
    ScalarField ge = divergence(E.snapshot(i));
    if (fields.rho) ge = sub(ge, scale(fields.rho->snapshot(i), 1.0 / constants.eps0));
    gauss_e.push_back(std::move(ge));
    gauss_b.push_back(divergence(B.snapshot(i)));
    VectorField am = curl(B.snapshot(i));
    if (fields.J) am = sub(am, scale(fields.J->snapshot(i), constants.mu0));
    ampere.push_back(sub(am, scale(time_derivative(E, 1, i), 1.0 / c2)));
  }
  (void)grid;
  return MaxwellResiduals{residual_norms(faraday, "faraday", E.dt()),
                          residual_norms(gauss_e, "gauss_e", E.dt()),
                          residual_norms(gauss_b, "gauss_b", E.dt()),
                          residual_norms(ampere, "ampere", E.dt())};
}

InvarianceResiduals invariance_condition_residuals(const EMFieldSet& fields,
                                                   const GaugeWave& wave) {
  if (!fields.E || !fields.B)
    throw physics_error("invariance_condition_residuals: E and B histories are required");
  const VectorHistory& E = *fields.E;
  const VectorHistory& B = *fields.B;
  const Grid& grid = E.grid();
  const double c2 = wave.constants().c * wave.constants().c;

  std::vector<ScalarField> r_dot_b, r_dot_e;
  std::vector<VectorField> r_cross_e, r_cross_b;
  double s_dot_b = 0.0, s_dot_e = 0.0, s_cross_e = 0.0, s_cross_b = 0.0;
  for (std::size_t i = 0; i < E.length(); ++i) {
    const double t = E.time(i);
    const VectorField gf = wave.sample_grad_f(grid, t);
    const ScalarField ft = wave.sample_f_t(grid, t);
    const VectorField& Ei = E.snapshot(i);
    const VectorField& Bi = B.snapshot(i);

    r_dot_b.push_back(dot(gf, Bi));
    r_dot_e.push_back(dot(gf, Ei));
    r_cross_e.push_back(sub(cross(gf, Ei), multiply(ft, Bi)));
    r_cross_b.push_back(add(cross(gf, Bi), scale(multiply(ft, Ei), 1.0 / c2)));

    const double rgf = rms(gf), rft = rms(ft), re = rms(Ei), rb = rms(Bi);
    s_dot_b = std::max(s_dot_b, rgf * rb);
    s_dot_e = std::max(s_dot_e, rgf * re);
    s_cross_e = std::max(s_cross_e, rgf * re + rft * rb);
    s_cross_b = std::max(s_cross_b, rgf * rb + rft * re / c2);
  }

  InvarianceResiduals out{residual_norms(r_dot_b, "gradf_dot_b", E.dt()),
                          residual_norms(r_dot_e, "gradf_dot_e", E.dt()),
                          residual_norms(r_cross_e, "gradf_cross_e", E.dt()),
                          residual_norms(r_cross_b, "gradf_cross_b", E.dt())};
  out.gradf_dot_b.scale = nonzero(s_dot_b);
  out.gradf_dot_e.scale = nonzero(s_dot_e);
  out.gradf_cross_e.scale = nonzero(s_cross_e);
  out.gradf_cross_b.scale = nonzero(s_cross_b);
  return out;
}

BoostResiduals boost_consistency_residual(const VectorField& E, const VectorField& B,
                                          const std::array<double, 3>& v,
                                          const Constants& constants) {
  if (!(E.grid() == B.grid())) throw physics_error("boost residual: E and B grids differ");
  if (E.grid().rank() != 3) throw physics_error("boost residual: rank-3 grid required");
  if (!finite3(v)) throw physics_error("boost residual: velocity must be finite");
  const double c2 = constants.c * constants.c;
  const std::array<double, 3> v_over_c2 = {v[0] / c2, v[1] / c2, v[2] / c2};

  BoostResiduals out{residual_norms(sub(B, cross(v_over_c2, E)), "boost_b"),
                     residual_norms(add(E, cross(v, B)), "boost_e")};
  out.boost_b.scale = nonzero(std::max(rms(B), rms(E) / constants.c));
  out.boost_e.scale = nonzero(std::max(rms(E), constants.c * rms(B)));
  return out;
}

Potentials Potentials::make(std::optional<VectorHistory> A, std::optional<ScalarHistory> phi) {
  Alignment a;
  merge_alignment(a, A, "A");
  merge_alignment(a, phi, "phi");
  if (!a.set) throw physics_error("potentials: at least one history is required");
  return Potentials{std::move(A), std::move(phi)};
}

Potentials gauge_transform(const Potentials& p, const GaugeWave& f) {
  if (!p.A || !p.phi) throw physics_error("gauge_transform: both A and phi are required");
  const Grid& grid = p.A->grid();
  std::vector<VectorField> a_out;
  std::vector<ScalarField> phi_out;
  for (std::size_t i = 0; i < p.A->length(); ++i) {
    const double t = p.A->time(i);
    a_out.push_back(add(p.A->snapshot(i), f.sample_grad_f(grid, t)));
    phi_out.push_back(sub(p.phi->snapshot(i), f.sample_f_t(grid, t)));
  }
  return Potentials::make(VectorHistory(p.A->dt(), std::move(a_out), p.A->t0()),
                          ScalarHistory(p.phi->dt(), std::move(phi_out), p.phi->t0()));
}

Potentials gauge_transform(const Potentials& p, const ScalarHistory& f) {
  if (!p.A || !p.phi) throw physics_error("gauge_transform: both A and phi are required");
  if (!(f.grid() == p.A->grid()) || f.dt() != p.A->dt() || f.t0() != p.A->t0() ||
      f.length() != p.A->length())
    throw physics_error("gauge_transform: gauge history must align with the potentials");
  if (f.length() < 5)
    throw physics_error(
        "gauge_transform: sampled gauge function needs >= 5 snapshots (centered d/dt shrinks "
        "the history by two)");
  std::vector<VectorField> a_out;
  std::vector<ScalarField> phi_out;
  for (std::size_t i = 1; i + 1 < f.length(); ++i) {
    a_out.push_back(add(p.A->snapshot(i), gradient(f.snapshot(i))));
    phi_out.push_back(sub(p.phi->snapshot(i), time_derivative(f, 1, i)));
  }
  const double t0 = p.A->t0() + p.A->dt();
  return Potentials::make(VectorHistory(p.A->dt(), std::move(a_out), t0),
                          ScalarHistory(p.phi->dt(), std::move(phi_out), t0));
}

ScalarField lorenz_residual_field(const Potentials& p, const Constants& constants,
                                  std::size_t at) {
  if (!p.A || !p.phi)
    throw physics_error("lorenz_residual: both A and phi histories are required");
  return add(divergence(p.A->snapshot(at)),
             scale(time_derivative(*p.phi, 1, at), 1.0 / (constants.c * constants.c)));
}

ResidualReport lorenz_residual(const Potentials& p, const Constants& constants) {
  if (!p.A || !p.phi)
    throw physics_error("lorenz_residual: both A and phi histories are required");
  std::vector<ScalarField> rs;
  for (std::size_t i = 1; i + 1 < p.A->length(); ++i)
    rs.push_back(lorenz_residual_field(p, constants, i));
  return residual_norms(rs, "lorenz", p.A->dt());
}

HelmholtzParts helmholtz_decompose(const VectorField& A) {
  const Grid& grid = A.grid();
  if (grid.rank() != 3) throw physics_error("helmholtz_decompose: rank-3 grid required");

  std::array<std::vector<cplx>, 3> modes = {fft_forward(A.component_field(0)),
                                            fft_forward(A.component_field(1)),
                                            fft_forward(A.component_field(2))};
  const std::vector<double> kx = grid.wavenumbers(0);
  const std::vector<double> ky = grid.wavenumbers(1);
  const std::vector<double> kz = grid.wavenumbers(2);

  std::array<std::vector<cplx>, 3> par_modes;
  for (auto& m : par_modes) m.assign(grid.size(), cplx{0.0, 0.0});

  const int n0 = grid.points(0), n1 = grid.points(1), n2 = grid.points(2);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      for (int l = 0; l < n2; ++l) {
        const std::size_t p = grid.index(i, j, l);
        const double k2 = kx[i] * kx[i] + ky[j] * ky[j] + kz[l] * kz[l];
        if (k2 == 0.0) continue;  // the mean mode has neither div nor curl: perp by convention
        const cplx k_dot_a = kx[i] * modes[0][p] + ky[j] * modes[1][p] + kz[l] * modes[2][p];
        par_modes[0][p] = kx[i] * k_dot_a / k2;
        par_modes[1][p] = ky[j] * k_dot_a / k2;
        par_modes[2][p] = kz[l] * k_dot_a / k2;
      }

  VectorField par(grid, fft_inverse(grid, par_modes[0]), fft_inverse(grid, par_modes[1]),
                  fft_inverse(grid, par_modes[2]));
  return HelmholtzParts{sub(A, par), std::move(par)};
}

EnergyDensityFlux energy_density_flux(const ScalarField& phi, const VectorField& A,
                                      FluxSign sign, const Constants& constants) {
  const double c2 = constants.c * constants.c;
  ScalarField u = scale(add(multiply(phi, phi), scale(dot(A, A), c2)), 1.0 / (2.0 * c2));
  VectorField S = multiply(phi, A);
  if (sign == FluxSign::minus_phi_a) S = scale(S, -1.0);
  return EnergyDensityFlux{std::move(u), std::move(S)};
}

ResidualReport energy_conservation_residual(const GaugeWave& f, const Grid& grid, double t,
                                            FluxSign sign) {
  const double c2 = f.constants().c * f.constants().c;
  const ScalarField ft = f.sample_f_t(grid, t);
  const ScalarField ftt = f.sample_f_tt(grid, t);
  const ScalarField lap = f.sample_lap_f(grid, t);
  const VectorField gf = f.sample_grad_f(grid, t);
  const VectorField gft = f.sample_grad_f_t(grid, t);

  // du/dt = ft*ftt/c^2 + gf.gft;  div(+phi A) = -(gft.gf + ft*lap f)
  const ScalarField du_dt = add(scale(multiply(ft, ftt), 1.0 / c2), dot(gf, gft));
  ScalarField div_s = scale(add(dot(gft, gf), multiply(ft, lap)), -1.0);
  if (sign == FluxSign::minus_phi_a) div_s = scale(div_s, -1.0);

  ResidualReport report = residual_norms(add(du_dt, div_s), "energy");
  report.scale = nonzero(rms(du_dt));
  return report;
}

ResidualReport energy_conservation_residual(const ScalarHistory& f, FluxSign sign,
                                            const Constants& constants) {
  if (f.length() < 5)
    throw physics_error(
        "energy_conservation_residual: needs >= 5 snapshots (u consumes one stencil level)");
  // phi = df/dt and u exist at [1, len-2]; du/dt then needs both neighbors.
  std::vector<ScalarField> u(f.length(), ScalarField::zero(f.grid()));
  for (std::size_t j = 1; j + 1 < f.length(); ++j) {
    const ScalarField phi = time_derivative(f, 1, j);
    const VectorField A = scale(gradient(f.snapshot(j)), -1.0);
    u[j] = energy_density_flux(phi, A, sign, constants).u;
  }

  std::vector<ScalarField> rs;
  for (std::size_t i = 2; i + 2 < f.length(); ++i) {
    const ScalarField du_dt = scale(sub(u[i + 1], u[i - 1]), 1.0 / (2.0 * f.dt()));
    const ScalarField phi = time_derivative(f, 1, i);
    const VectorField A = scale(gradient(f.snapshot(i)), -1.0);
    const VectorField S = energy_density_flux(phi, A, sign, constants).S;
    rs.push_back(add(du_dt, divergence(S)));
  }
  return residual_norms(rs, "energy", f.dt());
}

EMFieldSet em_fields_from_potentials(const Potentials& p) {
  if (!p.A || !p.phi)
    throw physics_error("em_fields_from_potentials: both A and phi histories are required");
  if (p.A->grid().rank() != 3)
    throw physics_error("em_fields_from_potentials: rank-3 grid required (B = curl A)");
  if (p.A->length() < 5)
    throw physics_error("em_fields_from_potentials: needs >= 5 potential snapshots");
  std::vector<VectorField> e_out, b_out;
  for (std::size_t i = 1; i + 1 < p.A->length(); ++i) {
    e_out.push_back(
        sub(scale(gradient(p.phi->snapshot(i)), -1.0), time_derivative(*p.A, 1, i)));
    b_out.push_back(curl(p.A->snapshot(i)));
  }
  const double t0 = p.A->t0() + p.A->dt();
  return EMFieldSet::make(VectorHistory(p.A->dt(), std::move(e_out), t0),
                          VectorHistory(p.A->dt(), std::move(b_out), t0), std::nullopt,
                          std::nullopt);
}

Potentials potentials_from_gauge(const GaugeWave& f, const Grid& grid, double dt,
                                 std::size_t len, double t0) {
  std::vector<VectorField> a_out;
  std::vector<ScalarField> phi_out;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = t0 + dt * static_cast<double>(i);
    a_out.push_back(scale(f.sample_grad_f(grid, t), -1.0));
    phi_out.push_back(f.sample_f_t(grid, t));
  }
  return Potentials::make(VectorHistory(dt, std::move(a_out), t0),
                          ScalarHistory(dt, std::move(phi_out), t0));
}

}  // namespace longwave
