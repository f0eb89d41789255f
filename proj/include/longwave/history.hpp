#ifndef LONGWAVE_HISTORY_HPP
#define LONGWAVE_HISTORY_HPP

#include <cstddef>
#include <vector>

#include "longwave/error.hpp"
#include "longwave/field.hpp"

namespace longwave {

// Uniform-in-time sequence of field snapshots. At least 3 snapshots so
// centered time differences exist at interior indices; all snapshots share
// one grid.
template <class FieldT>
class History {
 public:
  History(double dt, std::vector<FieldT> snapshots, double t0 = 0.0)
      : dt_(dt), t0_(t0), snaps_(std::move(snapshots)) {
    if (dt_ <= 0.0) throw physics_error("history: snapshot interval dt must be positive");
    if (snaps_.size() < 3)
      throw physics_error("history: need at least 3 snapshots for centered time differences");
    for (const auto& s : snaps_)
      if (!(s.grid() == snaps_.front().grid()))
        throw physics_error("history: all snapshots must share one grid");
  }

  double dt() const { return dt_; }
  double t0() const { return t0_; }
  double time(std::size_t i) const { return t0_ + dt_ * static_cast<double>(i); }
  std::size_t length() const { return snaps_.size(); }
  const FieldT& snapshot(std::size_t i) const { return snaps_[i]; }
  const Grid& grid() const { return snaps_.front().grid(); }

 private:
  double dt_;
  double t0_;
  std::vector<FieldT> snaps_;
};

using ScalarHistory = History<ScalarField>;
using VectorHistory = History<VectorField>;

// Centered second-order time derivative at an interior snapshot.
// order 1: (f[i+1]-f[i-1])/(2 dt); order 2: (f[i+1]-2 f[i]+f[i-1])/dt^2.
// Boundary indices are rejected; there are no one-sided stencils.
ScalarField time_derivative(const ScalarHistory& h, int order, std::size_t at);
VectorField time_derivative(const VectorHistory& h, int order, std::size_t at);

// Samples fn(t) at len uniform times starting at t0.
ScalarHistory sample_history(const Grid& grid, double dt, std::size_t len,
                             const std::function<cplx(double, double)>& fn_xt,
                             double t0 = 0.0);

}  // namespace longwave

#endif
