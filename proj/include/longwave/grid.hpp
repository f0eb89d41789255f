#ifndef LONGWAVE_GRID_HPP
#define LONGWAVE_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace longwave {

// Uniform periodic sampling box, rank 1 or 3. Row-major storage order
// (x slowest, z fastest for rank 3). Index arithmetic wraps on every axis.
//
// Wavenumber convention: mode index n in [-N/2, N/2) maps to k = 2*pi*n/L.
class Grid {
 public:
  // points must be even and >= 4 on every axis, lengths positive.
  static Grid make(int rank, const std::vector<double>& lengths,
                   const std::vector<int>& points);
  static Grid make1d(double length, int points);

  int rank() const { return rank_; }
  double length(int axis) const { return lengths_[static_cast<std::size_t>(axis)]; }
  int points(int axis) const { return points_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const {
    return lengths_[static_cast<std::size_t>(axis)] / points_[static_cast<std::size_t>(axis)];
  }
  // Total sample count (product over axes).
  std::size_t size() const;

  // Coordinate of sample j on an axis, in [0, L).
  double coord(int axis, int j) const { return spacing(axis) * j; }

  // Flat row-major index with periodic wrap on each axis.
  std::size_t index(int i, int j = 0, int k = 0) const;

  // k_n for every sample index along an axis (FFT layout: 0,1,...,-N/2,...,-1).
  std::vector<double> wavenumbers(int axis) const;
  // Largest |k| on an axis (the Nyquist magnitude pi/dx).
  double max_wavenumber(int axis) const;
  // True if this flat-index position holds the Nyquist mode on the given axis.
  bool is_nyquist(int axis, int j) const { return 2 * j == points(axis); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rank_ == b.rank_ && a.lengths_ == b.lengths_ && a.points_ == b.points_;
  }
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

 private:
  Grid(int rank, std::array<double, 3> lengths, std::array<int, 3> points)
      : rank_(rank), lengths_(lengths), points_(points) {}

  int rank_;
  std::array<double, 3> lengths_;
  std::array<int, 3> points_;
};

}  // namespace longwave

#endif
