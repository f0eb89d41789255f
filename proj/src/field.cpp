#include "longwave/field.hpp"

#include <cmath>
#include <sstream>

#include "longwave/error.hpp"

namespace longwave {

namespace {

void check_same_grid(const Grid& a, const Grid& b, const char* op) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << op << ": fields live on different grids";
    throw physics_error(msg.str());
  }
}

}  // namespace

ScalarField::ScalarField(Grid grid, std::vector<cplx> values)
    : grid_(grid), v_(std::move(values)) {
  if (v_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "scalar field: " << v_.size() << " values for a " << grid_.size() << "-point grid";
    throw physics_error(msg.str());
  }
}

ScalarField ScalarField::zero(const Grid& grid) {
  return ScalarField(grid, std::vector<cplx>(grid.size(), cplx{0.0, 0.0}));
}

ScalarField ScalarField::sample1d(const Grid& grid, const std::function<cplx(double)>& fn) {
  if (grid.rank() != 1) throw physics_error("sample1d: grid is not rank 1");
  std::vector<cplx> v(grid.size());
  for (int i = 0; i < grid.points(0); ++i) v[static_cast<std::size_t>(i)] = fn(grid.coord(0, i));
  return ScalarField(grid, std::move(v));
}

ScalarField ScalarField::sample(const Grid& grid,
                                const std::function<cplx(double, double, double)>& fn) {
  std::vector<cplx> v(grid.size());
  if (grid.rank() == 1) {
    for (int i = 0; i < grid.points(0); ++i)
      v[static_cast<std::size_t>(i)] = fn(grid.coord(0, i), 0.0, 0.0);
  } else {
    std::size_t idx = 0;
    for (int i = 0; i < grid.points(0); ++i)
      for (int j = 0; j < grid.points(1); ++j)
        for (int k = 0; k < grid.points(2); ++k)
          v[idx++] = fn(grid.coord(0, i), grid.coord(1, j), grid.coord(2, k));
  }
  return ScalarField(grid, std::move(v));
}

VectorField::VectorField(Grid grid, std::array<std::vector<cplx>, 3> components)
    : grid_(grid), comp_(std::move(components)) {
  for (const auto& c : comp_)
    if (c.size() != grid_.size()) {
      std::ostringstream msg;
      msg << "vector field: component has " << c.size() << " values for a " << grid_.size()
          << "-point grid";
      throw physics_error(msg.str());
    }
}

VectorField::VectorField(Grid grid, ScalarField x, ScalarField y, ScalarField z)
    : VectorField(grid, std::array<std::vector<cplx>, 3>{
                            std::move(x.values()), std::move(y.values()), std::move(z.values())}) {}

VectorField VectorField::zero(const Grid& grid) {
  std::array<std::vector<cplx>, 3> c;
  for (auto& comp : c) comp.assign(grid.size(), cplx{0.0, 0.0});
  return VectorField(grid, std::move(c));
}

VectorField VectorField::sample(
    const Grid& grid, const std::function<std::array<cplx, 3>(double, double, double)>& fn) {
  std::array<std::vector<cplx>, 3> c;
  for (auto& comp : c) comp.resize(grid.size());
  auto put = [&](std::size_t idx, double x, double y, double z) {
    const auto val = fn(x, y, z);
    c[0][idx] = val[0];
    c[1][idx] = val[1];
    c[2][idx] = val[2];
  };
  if (grid.rank() == 1) {
    for (int i = 0; i < grid.points(0); ++i)
      put(static_cast<std::size_t>(i), grid.coord(0, i), 0.0, 0.0);
  } else {
    std::size_t idx = 0;
    for (int i = 0; i < grid.points(0); ++i)
      for (int j = 0; j < grid.points(1); ++j)
        for (int k = 0; k < grid.points(2); ++k)
          put(idx++, grid.coord(0, i), grid.coord(1, j), grid.coord(2, k));
  }
  return VectorField(grid, std::move(c));
}

ScalarField VectorField::component_field(int c) const {
  return ScalarField(grid_, comp_[static_cast<std::size_t>(c)]);
}

ScalarField add(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid(), b.grid(), "add");
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return ScalarField(a.grid(), std::move(v));
}

ScalarField sub(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid(), b.grid(), "sub");
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return ScalarField(a.grid(), std::move(v));
}

ScalarField scale(const ScalarField& a, cplx s) {
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
  return ScalarField(a.grid(), std::move(v));
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid(), b.grid(), "multiply");
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return ScalarField(a.grid(), std::move(v));
}

VectorField add(const VectorField& a, const VectorField& b) {
  check_same_grid(a.grid(), b.grid(), "add");
  std::array<std::vector<cplx>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      out[static_cast<std::size_t>(c)][i] = a.component(c)[i] + b.component(c)[i];
  }
  return VectorField(a.grid(), std::move(out));
}

VectorField sub(const VectorField& a, const VectorField& b) {
  check_same_grid(a.grid(), b.grid(), "sub");
  std::array<std::vector<cplx>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      out[static_cast<std::size_t>(c)][i] = a.component(c)[i] - b.component(c)[i];
  }
  return VectorField(a.grid(), std::move(out));
}

VectorField scale(const VectorField& a, cplx s) {
  std::array<std::vector<cplx>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      out[static_cast<std::size_t>(c)][i] = s * a.component(c)[i];
  }
  return VectorField(a.grid(), std::move(out));
}

VectorField multiply(const ScalarField& s, const VectorField& v) {
  check_same_grid(s.grid(), v.grid(), "multiply");
  std::array<std::vector<cplx>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      out[static_cast<std::size_t>(c)][i] = s[i] * v.component(c)[i];
  }
  return VectorField(v.grid(), std::move(out));
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  check_same_grid(a.grid(), b.grid(), "dot");
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a.component(0)[i] * b.component(0)[i] + a.component(1)[i] * b.component(1)[i] +
           a.component(2)[i] * b.component(2)[i];
  return ScalarField(a.grid(), std::move(v));
}

VectorField cross(const VectorField& a, const VectorField& b) {
  check_same_grid(a.grid(), b.grid(), "cross");
  std::array<std::vector<cplx>, 3> out;
  for (auto& c : out) c.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx ax = a.component(0)[i], ay = a.component(1)[i], az = a.component(2)[i];
    const cplx bx = b.component(0)[i], by = b.component(1)[i], bz = b.component(2)[i];
    out[0][i] = ay * bz - az * by;
    out[1][i] = az * bx - ax * bz;
    out[2][i] = ax * by - ay * bx;
  }
  return VectorField(a.grid(), std::move(out));
}

ScalarField dot(const std::array<double, 3>& a, const VectorField& b) {
  std::vector<cplx> v(b.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a[0] * b.component(0)[i] + a[1] * b.component(1)[i] + a[2] * b.component(2)[i];
  return ScalarField(b.grid(), std::move(v));
}

VectorField cross(const std::array<double, 3>& a, const VectorField& b) {
  std::array<std::vector<cplx>, 3> out;
  for (auto& c : out) c.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const cplx bx = b.component(0)[i], by = b.component(1)[i], bz = b.component(2)[i];
    out[0][i] = a[1] * bz - a[2] * by;
    out[1][i] = a[2] * bx - a[0] * bz;
    out[2][i] = a[0] * by - a[1] * bx;
  }
  return VectorField(b.grid(), std::move(out));
}

VectorField multiply(const ScalarField& s, const std::array<double, 3>& v) {
  std::array<std::vector<cplx>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      out[static_cast<std::size_t>(c)][i] = s[i] * v[static_cast<std::size_t>(c)];
  }
  return VectorField(s.grid(), std::move(out));
}

double rms(const ScalarField& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f[i]);
  return std::sqrt(acc / static_cast<double>(f.size()));
}

double rms(const VectorField& f) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f.component(c)[i]);
  return std::sqrt(acc / static_cast<double>(3 * f.size()));
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

double max_abs(const VectorField& f) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.component(c)[i]));
  return m;
}

}  // namespace longwave
