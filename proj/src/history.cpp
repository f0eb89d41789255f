#include "longwave/history.hpp"

#include <sstream>

namespace longwave {

namespace {

void check_interior(std::size_t len, int order, std::size_t at) {
  if (order != 1 && order != 2) {
    std::ostringstream msg;
    msg << "time_derivative: order must be 1 or 2 (got " << order << ")";
    throw physics_error(msg.str());
  }
  if (at < 1 || at + 1 >= len) {
    std::ostringstream msg;
    msg << "time_derivative: snapshot " << at << " is not interior (valid 1.." << len - 2
        << "); boundary stencils are not provided";
    throw physics_error(msg.str());
  }
}

}  // namespace

ScalarField time_derivative(const ScalarHistory& h, int order, std::size_t at) {
  check_interior(h.length(), order, at);
  const auto& prev = h.snapshot(at - 1);
  const auto& next = h.snapshot(at + 1);
  if (order == 1) return scale(sub(next, prev), cplx{1.0 / (2.0 * h.dt()), 0.0});
  const auto& mid = h.snapshot(at);
  ScalarField num = add(sub(next, scale(mid, cplx{2.0, 0.0})), prev);
  return scale(num, cplx{1.0 / (h.dt() * h.dt()), 0.0});
}

VectorField time_derivative(const VectorHistory& h, int order, std::size_t at) {
  check_interior(h.length(), order, at);
  const auto& prev = h.snapshot(at - 1);
  const auto& next = h.snapshot(at + 1);
  if (order == 1) return scale(sub(next, prev), cplx{1.0 / (2.0 * h.dt()), 0.0});
  const auto& mid = h.snapshot(at);
  VectorField num = add(sub(next, scale(mid, cplx{2.0, 0.0})), prev);
  return scale(num, cplx{1.0 / (h.dt() * h.dt()), 0.0});
}

ScalarHistory sample_history(const Grid& grid, double dt, std::size_t len,
                             const std::function<cplx(double, double)>& fn_xt, double t0) {
  if (grid.rank() != 1) throw physics_error("sample_history: fn(x,t) form needs a rank-1 grid");
  std::vector<ScalarField> snaps;
  snaps.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double t = t0 + dt * static_cast<double>(i);
    snaps.push_back(ScalarField::sample1d(grid, [&](double x) { return fn_xt(x, t); }));
  }
  return ScalarHistory(dt, std::move(snaps), t0);
}

}  // namespace longwave
