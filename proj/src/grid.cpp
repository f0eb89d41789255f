#include "longwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "longwave/error.hpp"

namespace longwave {

Grid Grid::make(int rank, const std::vector<double>& lengths, const std::vector<int>& points) {
  if (rank != 1 && rank != 3) {
    std::ostringstream msg;
    msg << "grid: rank must be 1 or 3 (got " << rank << ")";
    throw physics_error(msg.str());
  }
  const auto n = static_cast<std::size_t>(rank);
  if (lengths.size() != n || points.size() != n) {
    std::ostringstream msg;
    msg << "grid: expected " << rank << " lengths and point counts, got " << lengths.size()
        << " and " << points.size();
    throw physics_error(msg.str());
  }
  std::array<double, 3> ls{1.0, 1.0, 1.0};
  std::array<int, 3> ps{1, 1, 1};
  for (std::size_t a = 0; a < n; ++a) {
    if (!(lengths[a] > 0.0)) {
      std::ostringstream msg;
      msg << "grid: axis " << a << " length must be positive (got " << lengths[a] << ")";
      throw physics_error(msg.str());
    }
    if (points[a] < 4) {
      std::ostringstream msg;
      msg << "grid: axis " << a << " needs at least 4 points (got " << points[a] << ")";
      throw physics_error(msg.str());
    }
    if (points[a] % 2 != 0) {
      std::ostringstream msg;
      msg << "grid: axis " << a << " point count must be even (got " << points[a] << ")";
      throw physics_error(msg.str());
    }
    ls[a] = lengths[a];
    ps[a] = points[a];
  }
  return Grid(rank, ls, ps);
}

Grid Grid::make1d(double length, int points) { return make(1, {length}, {points}); }

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int a = 0; a < rank_; ++a) n *= static_cast<std::size_t>(points(a));
  return n;
}

std::size_t Grid::index(int i, int j, int k) const {
  auto wrap = [](int v, int n) {
    int m = v % n;
    return m < 0 ? m + n : m;
  };
  if (rank_ == 1) return static_cast<std::size_t>(wrap(i, points(0)));
  const int nx = points(0), ny = points(1), nz = points(2);
  return (static_cast<std::size_t>(wrap(i, nx)) * static_cast<std::size_t>(ny) +
          static_cast<std::size_t>(wrap(j, ny))) *
             static_cast<std::size_t>(nz) +
         static_cast<std::size_t>(wrap(k, nz));
}

std::vector<double> Grid::wavenumbers(int axis) const {
  const int n = points(axis);
  const double base = 2.0 * std::numbers::pi / length(axis);
  std::vector<double> ks(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int m = (j <= n / 2 - 1) ? j : j - n;  // n/2 folds to -n/2 (Nyquist)
    ks[static_cast<std::size_t>(j)] = base * m;
  }
  return ks;
}

double Grid::max_wavenumber(int axis) const {
  return std::numbers::pi / spacing(axis);
}

}  // namespace longwave
