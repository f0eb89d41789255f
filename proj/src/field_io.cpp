#include "longwave/field_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "longwave/error.hpp"

namespace longwave {

namespace {

void write_header(std::ostream& out, const Grid& g, double t) {
  out.precision(17);
  out << "# rank " << g.rank() << "\n";
  out << "# lengths";
  for (int a = 0; a < g.rank(); ++a) out << " " << g.length(a);
  out << "\n# points";
  for (int a = 0; a < g.rank(); ++a) out << " " << g.points(a);
  out << "\n# t " << t << "\n";
}

struct Header {
  int rank = 0;
  std::vector<double> lengths;
  std::vector<int> points;
  double t = 0.0;
};

Header read_header(std::istream& in, std::string& first_data_line) {
  Header h;
  bool have_rank = false, have_lengths = false, have_points = false, have_t = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      first_data_line = line;
      break;
    }
    std::istringstream ls(line.substr(1));
    std::string key;
    ls >> key;
    if (key == "rank") {
      ls >> h.rank;
      have_rank = true;
    } else if (key == "lengths") {
      double v;
      while (ls >> v) h.lengths.push_back(v);
      have_lengths = true;
    } else if (key == "points") {
      int v;
      while (ls >> v) h.points.push_back(v);
      have_points = true;
    } else if (key == "t") {
      ls >> h.t;
      have_t = true;
    }
    // unknown # lines are ignored
  }
  if (!have_rank || !have_lengths || !have_points || !have_t)
    throw io_error("snapshot: header must carry rank, lengths, points and t");
  return h;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> cols;
  std::istringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) {
    std::istringstream cs(cell);
    double v;
    if (!(cs >> v)) throw io_error("snapshot: malformed numeric cell '" + cell + "'");
    cols.push_back(v);
  }
  return cols;
}

}  // namespace

void write_snapshot(std::ostream& out, const ScalarField& f, double t) {
  write_header(out, f.grid(), t);
  for (std::size_t i = 0; i < f.size(); ++i)
    out << f[i].real() << "," << f[i].imag() << "\n";
  if (!out) throw io_error("snapshot: write failed");
}

void write_snapshot(std::ostream& out, const VectorField& f, double t) {
  write_header(out, f.grid(), t);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << f.component(0)[i].real() << "," << f.component(0)[i].imag() << ","
        << f.component(1)[i].real() << "," << f.component(1)[i].imag() << ","
        << f.component(2)[i].real() << "," << f.component(2)[i].imag() << "\n";
  }
  if (!out) throw io_error("snapshot: write failed");
}

namespace {

template <class FieldT>
void write_to_path(const std::string& path, const FieldT& f, double t) {
  std::ofstream out(path);
  if (!out) throw io_error("snapshot: cannot open '" + path + "' for writing");
  write_snapshot(out, f, t);
}

}  // namespace

void write_snapshot(const std::string& path, const ScalarField& f, double t) {
  write_to_path(path, f, t);
}

void write_snapshot(const std::string& path, const VectorField& f, double t) {
  write_to_path(path, f, t);
}

Snapshot read_snapshot(std::istream& in) {
  std::string first;
  const Header h = read_header(in, first);
  Grid grid = Grid::make(h.rank, h.lengths, h.points);
  const std::size_t n = grid.size();

  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  if (!first.empty()) rows.push_back(parse_row(first));
  std::string line;
  while (rows.size() < n && std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_row(line));
  }
  if (rows.size() != n) {
    std::ostringstream msg;
    msg << "snapshot: expected " << n << " data rows, found " << rows.size();
    throw io_error(msg.str());
  }
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw io_error("snapshot: ragged data rows");

  if (cols == 2) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cplx{rows[i][0], rows[i][1]};
    return ScalarSnapshot{ScalarField(grid, std::move(v)), h.t};
  }
  if (cols == 6) {
    std::array<std::vector<cplx>, 3> comp;
    for (auto& c : comp) c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      comp[0][i] = cplx{rows[i][0], rows[i][1]};
      comp[1][i] = cplx{rows[i][2], rows[i][3]};
      comp[2][i] = cplx{rows[i][4], rows[i][5]};
    }
    return VectorSnapshot{VectorField(grid, std::move(comp)), h.t};
  }
  std::ostringstream msg;
  msg << "snapshot: rows must have 2 (scalar) or 6 (vector) columns, found " << cols;
  throw io_error(msg.str());
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("snapshot: cannot open '" + path + "' for reading");
  return read_snapshot(in);
}

ScalarSnapshot read_scalar_snapshot(const std::string& path) {
  Snapshot s = read_snapshot(path);
  if (auto* sc = std::get_if<ScalarSnapshot>(&s)) return std::move(*sc);
  throw io_error("snapshot: '" + path + "' holds a vector field, expected scalar");
}

VectorSnapshot read_vector_snapshot(const std::string& path) {
  Snapshot s = read_snapshot(path);
  if (auto* vc = std::get_if<VectorSnapshot>(&s)) return std::move(*vc);
  throw io_error("snapshot: '" + path + "' holds a scalar field, expected vector");
}

}  // namespace longwave
