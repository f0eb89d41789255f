#ifndef LONGWAVE_RESIDUAL_HPP
#define LONGWAVE_RESIDUAL_HPP

#include <array>
#include <string>
#include <vector>

#include "longwave/constants.hpp"
#include "longwave/field.hpp"
#include "longwave/history.hpp"

namespace longwave {

// Named-equation residual norms: the universal verification currency.
// l2 is the root-mean-square |r| over all samples (and components), linf the
// max, so l2 <= linf always. scale is an optional caller-facing field scale
// (1 when not meaningful); norms themselves are raw.
struct ResidualReport {
  std::string equation_id;
  double l2 = 0.0;
  double linf = 0.0;
  double scale = 1.0;
  // grid metadata
  std::vector<int> points;
  std::vector<double> lengths;
  double dt = 0.0;  // 0 when no time sampling is involved
};

ResidualReport residual_norms(const ScalarField& r, const std::string& equation_id,
                              double dt = 0.0);
ResidualReport residual_norms(const VectorField& r, const std::string& equation_id,
                              double dt = 0.0);
// Aggregates several per-time residual fields into one report (mean of
// squares across snapshots for l2, overall max for linf).
ResidualReport residual_norms(const std::vector<ScalarField>& rs,
                              const std::string& equation_id, double dt = 0.0);
ResidualReport residual_norms(const std::vector<VectorField>& rs,
                              const std::string& equation_id, double dt = 0.0);

// Residual of the scalar wave equation (1/c^2) d2f/dt2 - lap f over all
// interior snapshots of the history.
ResidualReport wave_residual(const ScalarHistory& f, const Constants& constants);

}  // namespace longwave

#endif
