#include "longwave/residual.hpp"

#include <cmath>

#include "longwave/spectral.hpp"

namespace longwave {

namespace {

void fill_meta(ResidualReport& rep, const Grid& g, double dt) {
  rep.points.clear();
  rep.lengths.clear();
  for (int a = 0; a < g.rank(); ++a) {
    rep.points.push_back(g.points(a));
    rep.lengths.push_back(g.length(a));
  }
  rep.dt = dt;
}

}  // namespace

ResidualReport residual_norms(const ScalarField& r, const std::string& equation_id, double dt) {
  ResidualReport rep;
  rep.equation_id = equation_id;
  rep.l2 = rms(r);
  rep.linf = max_abs(r);
  fill_meta(rep, r.grid(), dt);
  return rep;
}

ResidualReport residual_norms(const VectorField& r, const std::string& equation_id, double dt) {
  ResidualReport rep;
  rep.equation_id = equation_id;
  rep.l2 = rms(r);
  rep.linf = max_abs(r);
  fill_meta(rep, r.grid(), dt);
  return rep;
}

ResidualReport residual_norms(const std::vector<ScalarField>& rs, const std::string& equation_id,
                              double dt) {
  if (rs.empty()) throw physics_error("residual_norms: no residual fields to aggregate");
  ResidualReport rep;
  rep.equation_id = equation_id;
  double sq = 0.0, mx = 0.0;
  for (const auto& r : rs) {
    const double l2 = rms(r);
    sq += l2 * l2;
    mx = std::max(mx, max_abs(r));
  }
  rep.l2 = std::sqrt(sq / static_cast<double>(rs.size()));
  rep.linf = mx;
  fill_meta(rep, rs.front().grid(), dt);
  return rep;
}

ResidualReport residual_norms(const std::vector<VectorField>& rs, const std::string& equation_id,
                              double dt) {
  if (rs.empty()) throw physics_error("residual_norms: no residual fields to aggregate");
  ResidualReport rep;
  rep.equation_id = equation_id;
  double sq = 0.0, mx = 0.0;
  for (const auto& r : rs) {
    const double l2 = rms(r);
    sq += l2 * l2;
    mx = std::max(mx, max_abs(r));
  }
  rep.l2 = std::sqrt(sq / static_cast<double>(rs.size()));
  rep.linf = mx;
  fill_meta(rep, rs.front().grid(), dt);
  return rep;
}

ResidualReport wave_residual(const ScalarHistory& f, const Constants& constants) {
  const double inv_c2 = 1.0 / (constants.c * constants.c);
  std::vector<ScalarField> rs;
  rs.reserve(f.length() - 2);
  for (std::size_t i = 1; i + 1 < f.length(); ++i) {
    ScalarField ftt = time_derivative(f, 2, i);
    ScalarField r = sub(scale(ftt, cplx{inv_c2, 0.0}), laplacian(f.snapshot(i)));
    rs.push_back(std::move(r));
  }
  return residual_norms(rs, "wave", f.dt());
}

}  // namespace longwave
