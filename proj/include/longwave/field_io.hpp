#ifndef LONGWAVE_FIELD_IO_HPP
#define LONGWAVE_FIELD_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "longwave/field.hpp"

namespace longwave {

// Text snapshot format: `#`-prefixed header lines carrying rank, lengths,
// points and t, then one comma-separated row per grid point in row-major
// order -- re,im for scalars, rex,imx,rey,imy,rez,imz for vectors. Written
// with 17 significant digits so doubles round-trip exactly.

void write_snapshot(std::ostream& out, const ScalarField& f, double t);
void write_snapshot(std::ostream& out, const VectorField& f, double t);
void write_snapshot(const std::string& path, const ScalarField& f, double t);
void write_snapshot(const std::string& path, const VectorField& f, double t);

struct ScalarSnapshot {
  ScalarField field;
  double t;
};
struct VectorSnapshot {
  VectorField field;
  double t;
};
using Snapshot = std::variant<ScalarSnapshot, VectorSnapshot>;

Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::string& path);
ScalarSnapshot read_scalar_snapshot(const std::string& path);
VectorSnapshot read_vector_snapshot(const std::string& path);

}  // namespace longwave

#endif
