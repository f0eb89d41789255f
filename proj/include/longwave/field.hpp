#ifndef LONGWAVE_FIELD_HPP
#define LONGWAVE_FIELD_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "longwave/grid.hpp"

namespace longwave {

using cplx = std::complex<double>;

// Complex scalar samples over a Grid, one value per grid point.
// All fields are complex throughout; real physics carries zero imaginary
// parts and tests assert that stays below 1e-12 of field scale.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<cplx> values);
  static ScalarField zero(const Grid& grid);
  // Sample fn(x) on a rank-1 grid.
  static ScalarField sample1d(const Grid& grid, const std::function<cplx(double)>& fn);
  // Sample fn(x, y, z) on any grid (y = z = 0 for rank 1).
  static ScalarField sample(const Grid& grid,
                            const std::function<cplx(double, double, double)>& fn);

  const Grid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return v_; }
  std::vector<cplx>& values() { return v_; }
  cplx operator[](std::size_t i) const { return v_[i]; }
  cplx& operator[](std::size_t i) { return v_[i]; }
  std::size_t size() const { return v_.size(); }

 private:
  Grid grid_;
  std::vector<cplx> v_;
};

// Three complex component arrays over a Grid. Rank-1 grids keep y,z
// components too (usually zero).
class VectorField {
 public:
  VectorField(Grid grid, std::array<std::vector<cplx>, 3> components);
  VectorField(Grid grid, ScalarField x, ScalarField y, ScalarField z);
  static VectorField zero(const Grid& grid);
  static VectorField sample(
      const Grid& grid,
      const std::function<std::array<cplx, 3>(double, double, double)>& fn);

  const Grid& grid() const { return grid_; }
  const std::vector<cplx>& component(int c) const { return comp_[static_cast<std::size_t>(c)]; }
  std::vector<cplx>& component(int c) { return comp_[static_cast<std::size_t>(c)]; }
  ScalarField component_field(int c) const;
  std::size_t size() const { return comp_[0].size(); }

 private:
  Grid grid_;
  std::array<std::vector<cplx>, 3> comp_;
};

// Pointwise field algebra. Grids must match.
ScalarField add(const ScalarField& a, const ScalarField& b);
ScalarField sub(const ScalarField& a, const ScalarField& b);
ScalarField scale(const ScalarField& a, cplx s);
ScalarField multiply(const ScalarField& a, const ScalarField& b);
VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
VectorField scale(const VectorField& a, cplx s);
// scalar * vector, pointwise
VectorField multiply(const ScalarField& s, const VectorField& v);
// Pointwise dot and cross of vector fields (no conjugation).
ScalarField dot(const VectorField& a, const VectorField& b);
VectorField cross(const VectorField& a, const VectorField& b);
// Constant-vector variants.
ScalarField dot(const std::array<double, 3>& a, const VectorField& b);
VectorField cross(const std::array<double, 3>& a, const VectorField& b);
VectorField multiply(const ScalarField& s, const std::array<double, 3>& v);

// Root-mean-square |f| over all samples (and components).
double rms(const ScalarField& f);
double rms(const VectorField& f);
// Max |f| over all samples (and components).
double max_abs(const ScalarField& f);
double max_abs(const VectorField& f);

}  // namespace longwave

#endif
