#include "longwave/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "longwave/dispersion.hpp"
#include "longwave/error.hpp"
#include "longwave/field_io.hpp"
#include "longwave/gauge_em.hpp"
#include "longwave/matter_checks.hpp"
#include "longwave/spectral.hpp"
#include "longwave/telegraph.hpp"

namespace longwave {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- schema --

void note(std::vector<std::string>& v, const std::string& path, const std::string& msg) {
  v.push_back(path + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& known, std::vector<std::string>& v) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) note(v, path + "." + it.key(), "unknown key");
}

const json* get_object(const json& parent, const std::string& path, const char* key,
                       bool required, std::vector<std::string>& v) {
  if (!parent.contains(key)) {
    if (required) note(v, path + "." + key, "required object missing");
    return nullptr;
  }
  if (!parent.at(key).is_object()) {
    note(v, path + "." + key, "must be an object");
    return nullptr;
  }
  return &parent.at(key);
}

std::optional<double> get_number(const json& obj, const std::string& path, const char* key,
                                 bool required, std::vector<std::string>& v) {
  if (!obj.contains(key)) {
    if (required) note(v, path + "." + key, "required number missing");
    return std::nullopt;
  }
  if (!obj.at(key).is_number()) {
    note(v, path + "." + key, "must be a number");
    return std::nullopt;
  }
  return obj.at(key).get<double>();
}

std::optional<long long> get_integer(const json& obj, const std::string& path, const char* key,
                                     bool required, std::vector<std::string>& v) {
  if (!obj.contains(key)) {
    if (required) note(v, path + "." + key, "required integer missing");
    return std::nullopt;
  }
  if (!obj.at(key).is_number_integer()) {
    note(v, path + "." + key, "must be an integer");
    return std::nullopt;
  }
  return obj.at(key).get<long long>();
}

std::optional<std::string> get_choice(const json& obj, const std::string& path, const char* key,
                                      bool required, const std::vector<std::string>& allowed,
                                      std::vector<std::string>& v) {
  if (!obj.contains(key)) {
    if (required) note(v, path + "." + key, "required key missing");
    return std::nullopt;
  }
  if (!obj.at(key).is_string()) {
    note(v, path + "." + key, "must be a string");
    return std::nullopt;
  }
  const std::string s = obj.at(key).get<std::string>();
  if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
    std::string list;
    for (std::size_t i = 0; i < allowed.size(); ++i)
      list += (i ? ", " : "") + allowed[i];
    note(v, path + "." + key, "invalid value '" + s + "'; one of: " + list);
    return std::nullopt;
  }
  return s;
}

std::optional<std::array<double, 3>> get_vec3(const json& obj, const std::string& path,
                                              const char* key, bool required,
                                              std::vector<std::string>& v) {
  if (!obj.contains(key)) {
    if (required) note(v, path + "." + key, "required 3-vector missing");
    return std::nullopt;
  }
  const json& a = obj.at(key);
  if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
      !a[2].is_number()) {
    note(v, path + "." + key, "must be an array of 3 numbers");
    return std::nullopt;
  }
  return std::array<double, 3>{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

void check(bool ok, std::vector<std::string>& v, const std::string& path,
           const std::string& msg) {
  if (!ok) note(v, path, msg);
}

// positive even integers >= 4, per grid contract
void check_points(std::optional<long long> n, std::vector<std::string>& v,
                  const std::string& path) {
  if (n) check(*n >= 4 && *n % 2 == 0, v, path, "grid points must be even and >= 4");
}

void validate_constants(const json& p, const std::string& path, std::vector<std::string>& v) {
  if (auto c = get_number(p, path, "c", false, v)) check(*c > 0.0, v, path + ".c", "must be > 0");
  if (auto h = get_number(p, path, "hbar", false, v))
    check(*h > 0.0, v, path + ".hbar", "must be > 0");
  if (auto mu = get_number(p, path, "mu0", false, v))
    check(*mu > 0.0, v, path + ".mu0", "must be > 0");
}

void validate_grid1d(const json& parent, const std::string& path, std::vector<std::string>& v) {
  const json* g = get_object(parent, path, "grid", true, v);
  if (!g) return;
  reject_unknown(*g, path + ".grid", {"length", "points"}, v);
  if (auto len = get_number(*g, path + ".grid", "length", true, v))
    check(*len > 0.0, v, path + ".grid.length", "must be > 0");
  check_points(get_integer(*g, path + ".grid", "points", true, v), v, path + ".grid.points");
}

void validate_grid3d(const json& parent, const std::string& path, std::vector<std::string>& v) {
  const json* g = get_object(parent, path, "grid", true, v);
  if (!g) return;
  reject_unknown(*g, path + ".grid", {"lengths", "points"}, v);
  if (auto lens = get_vec3(*g, path + ".grid", "lengths", true, v))
    check((*lens)[0] > 0.0 && (*lens)[1] > 0.0 && (*lens)[2] > 0.0, v, path + ".grid.lengths",
          "must be > 0");
  if (g->contains("points")) {
    const json& pts = g->at("points");
    if (!pts.is_array() || pts.size() != 3 || !pts[0].is_number_integer() ||
        !pts[1].is_number_integer() || !pts[2].is_number_integer()) {
      note(v, path + ".grid.points", "must be an array of 3 integers");
    } else {
      for (int a = 0; a < 3; ++a)
        check_points(pts[a].get<long long>(), v, path + ".grid.points");
    }
  } else {
    note(v, path + ".grid.points", "required array missing");
  }
}

void validate_dispersion(const json& p, std::vector<std::string>& v) {
  const std::string path = "params";
  reject_unknown(p, path, {"m", "kmin", "kmax", "samples", "spinor_sign", "c", "hbar"}, v);
  if (auto m = get_number(p, path, "m", true, v)) check(*m >= 0.0, v, path + ".m", "must be >= 0");
  const auto kmin = get_number(p, path, "kmin", true, v);
  const auto kmax = get_number(p, path, "kmax", true, v);
  if (kmin && kmax) check(*kmax >= *kmin, v, path + ".kmax", "must be >= kmin");
  if (auto s = get_integer(p, path, "samples", true, v))
    check(*s >= 1, v, path + ".samples", "must be >= 1");
  if (auto sg = get_integer(p, path, "spinor_sign", false, v))
    check(*sg == 1 || *sg == -1, v, path + ".spinor_sign", "must be +1 or -1");
  validate_constants(p, path, v);
}

void validate_propagate(const json& p, const std::string& path, std::vector<std::string>& v) {
  reject_unknown(p, path, {"grid", "packet", "physics", "run"}, v);
  validate_grid1d(p, path, v);

  if (const json* pk = get_object(p, path, "packet", true, v)) {
    const std::string pp = path + ".packet";
    reject_unknown(*pk, pp, {"k0", "sigma", "x0", "branch", "spinor_sign"}, v);
    get_number(*pk, pp, "k0", true, v);
    if (auto s = get_number(*pk, pp, "sigma", true, v))
      check(*s > 0.0, v, pp + ".sigma", "must be > 0");
    get_number(*pk, pp, "x0", true, v);
    get_choice(*pk, pp, "branch", true, {"hi", "lo", "mixed"}, v);
    if (auto sg = get_integer(*pk, pp, "spinor_sign", true, v))
      check(*sg == 1 || *sg == -1, v, pp + ".spinor_sign", "must be +1 or -1");
  }

  if (const json* ph = get_object(p, path, "physics", true, v)) {
    const std::string pp = path + ".physics";
    reject_unknown(*ph, pp, {"m", "c", "hbar"}, v);
    if (auto m = get_number(*ph, pp, "m", true, v)) check(*m >= 0.0, v, pp + ".m", "must be >= 0");
    validate_constants(*ph, pp, v);
  }

  if (const json* r = get_object(p, path, "run", true, v)) {
    const std::string pp = path + ".run";
    reject_unknown(*r, pp, {"method", "dt", "steps", "record_every"}, v);
    get_choice(*r, pp, "method", true, {"spectral", "leapfrog"}, v);
    if (auto dt = get_number(*r, pp, "dt", true, v)) check(*dt > 0.0, v, pp + ".dt", "must be > 0");
    if (auto st = get_integer(*r, pp, "steps", true, v))
      check(*st >= 0, v, pp + ".steps", "must be >= 0");
    if (auto re = get_integer(*r, pp, "record_every", true, v))
      check(*re >= 1, v, pp + ".record_every", "must be >= 1");
  }
}

void validate_wave_params(const json& p, const std::string& path, std::vector<std::string>& v) {
  if (auto vel = get_vec3(p, path, "v", true, v))
    check((*vel)[0] != 0.0 || (*vel)[1] != 0.0 || (*vel)[2] != 0.0, v, path + ".v",
          "must be nonzero");
  if (auto k = get_number(p, path, "k", true, v)) check(*k != 0.0, v, path + ".k", "must be nonzero");
  get_number(p, path, "amplitude", true, v);
  get_choice(p, path, "waveform", true, {"sin", "cos"}, v);
}

void validate_invariance(const json& p, std::vector<std::string>& v) {
  const std::string path = "params";
  const auto family = get_choice(
      p, path, "family", true, {"maxwell", "gauge", "dirac", "continuity", "postgalilean", "vorticity"},
      v);
  if (!family) return;

  if (*family == "maxwell" || *family == "gauge") {
    reject_unknown(p, path,
                   {"family", "fixture", "v", "k", "amplitude", "waveform", "grid", "dt", "len",
                    "c", "hbar", "mu0"},
                   v);
    const auto fixture = get_choice(p, path, "fixture", true,
                                    {"plane_em_wave", "static_coulomb_like", "potentials_from_f"}, v);
    validate_wave_params(p, path, v);
    validate_grid3d(p, path, v);
    if (auto dt = get_number(p, path, "dt", true, v)) check(*dt > 0.0, v, path + ".dt", "must be > 0");
    if (auto len = get_integer(p, path, "len", true, v)) {
      const long long need = fixture && *fixture == "potentials_from_f" ? 5 : 3;
      check(*len >= need, v, path + ".len",
            "must be >= " + std::to_string(need) + " for this fixture");
    }
    validate_constants(p, path, v);
  } else if (*family == "dirac") {
    reject_unknown(p, path, {"family", "k", "m", "v", "grid", "dt", "len", "c", "hbar"}, v);
    if (auto k = get_number(p, path, "k", true, v)) check(*k != 0.0, v, path + ".k", "must be nonzero");
    if (auto m = get_number(p, path, "m", true, v)) check(*m >= 0.0, v, path + ".m", "must be >= 0");
    if (auto vel = get_vec3(p, path, "v", true, v))
      check((*vel)[0] > 0.0 && (*vel)[1] == 0.0 && (*vel)[2] == 0.0, v, path + ".v",
            "must point along +x");
    validate_grid1d(p, path, v);
    if (auto dt = get_number(p, path, "dt", true, v)) check(*dt > 0.0, v, path + ".dt", "must be > 0");
    if (auto len = get_integer(p, path, "len", true, v))
      check(*len >= 3, v, path + ".len", "must be >= 3");
    validate_constants(p, path, v);
  } else if (*family == "continuity") {
    reject_unknown(p, path,
                   {"family", "v", "k", "amplitude", "waveform", "rho0", "grid", "dt", "len", "c",
                    "hbar"},
                   v);
    validate_wave_params(p, path, v);
    get_number(p, path, "rho0", false, v);
    validate_grid3d(p, path, v);
    if (auto dt = get_number(p, path, "dt", true, v)) check(*dt > 0.0, v, path + ".dt", "must be > 0");
    if (auto len = get_integer(p, path, "len", true, v))
      check(*len >= 3, v, path + ".len", "must be >= 3");
    validate_constants(p, path, v);
  } else if (*family == "postgalilean") {
    reject_unknown(p, path, {"family", "seed", "v", "modes", "grid", "dt", "len", "c"}, v);
    if (auto s = get_integer(p, path, "seed", true, v))
      check(*s >= 0, v, path + ".seed", "must be >= 0");
    get_vec3(p, path, "v", true, v);
    if (auto m = get_integer(p, path, "modes", false, v))
      check(*m >= 1, v, path + ".modes", "must be >= 1");
    validate_grid3d(p, path, v);
    if (auto dt = get_number(p, path, "dt", true, v)) check(*dt > 0.0, v, path + ".dt", "must be > 0");
    if (auto len = get_integer(p, path, "len", true, v))
      check(*len >= 3, v, path + ".len", "must be >= 3");
    validate_constants(p, path, v);
  } else {  // vorticity
    reject_unknown(p, path, {"family", "flow", "v0", "dt", "len", "c"}, v);
    get_choice(p, path, "flow", true, {"circular", "rectilinear"}, v);
    get_number(p, path, "v0", true, v);
    if (auto dt = get_number(p, path, "dt", true, v)) check(*dt > 0.0, v, path + ".dt", "must be > 0");
    if (auto len = get_integer(p, path, "len", true, v))
      check(*len >= 3, v, path + ".len", "must be >= 3");
    validate_constants(p, path, v);
  }
}

void validate_decompose(const json& p, std::vector<std::string>& v) {
  const std::string path = "params";
  reject_unknown(p, path, {"input_path", "seed", "grid", "modes"}, v);
  const bool has_input = p.contains("input_path");
  const bool has_fixture = p.contains("seed") || p.contains("grid") || p.contains("modes");
  if (has_input && has_fixture) {
    note(v, path, "give either input_path or a random-field fixture (seed/grid/modes), not both");
    return;
  }
  if (has_input) {
    if (!p.at("input_path").is_string() || p.at("input_path").get<std::string>().empty())
      note(v, path + ".input_path", "must be a nonempty string");
    return;
  }
  if (!has_fixture) {
    note(v, path, "give input_path or a random-field fixture (seed, grid, modes)");
    return;
  }
  if (auto s = get_integer(p, path, "seed", true, v)) check(*s >= 0, v, path + ".seed", "must be >= 0");
  if (auto m = get_integer(p, path, "modes", false, v))
    check(*m >= 1, v, path + ".modes", "must be >= 1");
  validate_grid3d(p, path, v);
}

void validate_energy(const json& p, std::vector<std::string>& v) {
  const std::string path = "params";
  reject_unknown(p, path,
                 {"v", "k", "amplitude", "waveform", "sign", "grid", "t", "dts", "len", "c", "hbar"},
                 v);
  if (auto vel = get_vec3(p, path, "v", true, v))
    check((*vel)[0] != 0.0 && (*vel)[1] == 0.0 && (*vel)[2] == 0.0, v, path + ".v",
          "must point along x (the sampling grid is one-dimensional)");
  if (auto k = get_number(p, path, "k", true, v)) check(*k != 0.0, v, path + ".k", "must be nonzero");
  get_number(p, path, "amplitude", true, v);
  get_choice(p, path, "waveform", true, {"sin", "cos"}, v);
  get_choice(p, path, "sign", true, {"plus_phi_a", "minus_phi_a"}, v);
  validate_grid1d(p, path, v);
  get_number(p, path, "t", false, v);
  if (p.contains("dts")) {
    const json& d = p.at("dts");
    if (!d.is_array() || d.empty()) {
      note(v, path + ".dts", "must be a nonempty array of numbers");
    } else {
      for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_number() || !(d[i].get<double>() > 0.0))
          note(v, path + ".dts", "entry " + std::to_string(i) + " must be a number > 0");
    }
    if (auto len = get_integer(p, path, "len", true, v))
      check(*len >= 5, v, path + ".len", "must be >= 5 (energy density consumes one stencil level)");
  } else if (p.contains("len")) {
    note(v, path + ".len", "only meaningful together with dts");
  }
  validate_constants(p, path, v);
}

void validate_sweep(const json& p, std::vector<std::string>& v) {
  const std::string path = "params";
  reject_unknown(p, path, {"base", "vary"}, v);
  const json* base = get_object(p, path, "base", true, v);
  const json* vary = get_object(p, path, "vary", true, v);

  if (base) {
    const std::string bp = path + ".base";
    if (base->contains("output")) {
      note(v, bp + ".output", "not allowed (sweep merges per-run results itself)");
    }
    reject_unknown(*base, bp, {"command", "params", "output"}, v);
    const auto cmd = get_choice(*base, bp, "command", true, {"propagate"}, v);
    if (const json* bparams = get_object(*base, bp, "params", true, v)) {
      validate_propagate(*bparams, bp + ".params", v);
      // the velocity fit needs >= 10 samples in every run
      if (bparams->contains("run") && bparams->at("run").is_object()) {
        const json& r = bparams->at("run");
        if (r.contains("steps") && r.at("steps").is_number_integer() &&
            r.contains("record_every") && r.at("record_every").is_number_integer()) {
          const long long recs = r.at("steps").get<long long>() /
                                     std::max<long long>(1, r.at("record_every").get<long long>()) +
                                 1;
          check(recs >= 10, v, bp + ".params.run",
                "steps/record_every must yield >= 10 recorded samples for the velocity fit");
        }
      }
    }
    (void)cmd;
  }

  if (vary) {
    const std::string vp = path + ".vary";
    reject_unknown(*vary, vp, {"path", "values"}, v);
    std::optional<std::string> keypath;
    if (vary->contains("path") && vary->at("path").is_string())
      keypath = vary->at("path").get<std::string>();
    else
      note(v, vp + ".path", "required string missing");
    if (vary->contains("values")) {
      const json& vals = vary->at("values");
      if (!vals.is_array() || vals.empty()) {
        note(v, vp + ".values", "must be a nonempty array of numbers");
      } else {
        for (std::size_t i = 0; i < vals.size(); ++i)
          if (!vals[i].is_number())
            note(v, vp + ".values", "entry " + std::to_string(i) + " must be a number");
      }
    } else {
      note(v, vp + ".values", "required array missing");
    }
    // the path must name an existing numeric leaf of base
    if (base && keypath) {
      const json* node = base;
      std::stringstream ss(*keypath);
      std::string tok;
      bool ok = true;
      while (std::getline(ss, tok, '.')) {
        if (!node->is_object() || !node->contains(tok)) {
          ok = false;
          break;
        }
        node = &node->at(tok);
      }
      if (!ok || !node->is_number())
        note(v, vp + ".path", "'" + *keypath + "' does not name a numeric key of base");
    }
  }
}

void validate_output(const json& doc, const std::string& cmd, std::vector<std::string>& v) {
  const json* out = get_object(doc, "config", "output", true, v);
  if (!out) return;

  std::set<std::string> allowed;
  std::vector<std::string> required;
  if (cmd == "dispersion") {
    allowed = {"csv_path", "svg_path"};
  } else if (cmd == "propagate") {
    allowed = {"csv_path", "svg_path", "snapshots_path"};
  } else if (cmd == "invariance" || cmd == "decompose") {
    allowed = {"json_path"};
    required = {"json_path"};
  } else if (cmd == "energy") {
    allowed = {"json_path", "csv_path", "svg_path"};
    required = {"json_path"};
  } else if (cmd == "sweep") {
    allowed = {"csv_path", "svg_path"};
    required = {"csv_path"};
  } else {
    return;  // unknown command already reported
  }

  reject_unknown(*out, "output", allowed, v);
  bool any = false;
  for (const auto& key : allowed)
    if (out->contains(key)) {
      if (!out->at(key).is_string() || out->at(key).get<std::string>().empty())
        note(v, "output." + key, "must be a nonempty string");
      else
        any = true;
    }
  for (const auto& key : required)
    if (!out->contains(key)) note(v, "output." + key, "required for this command");
  if (!any) note(v, "output", "at least one sink is required");
}

// ------------------------------------------------------------- accessors --

double num_or(const json& p, const char* key, double fallback) {
  return p.contains(key) ? p.at(key).get<double>() : fallback;
}

Constants constants_from(const json& p) {
  return Constants::make(num_or(p, "c", 1.0), num_or(p, "hbar", 1.0), num_or(p, "mu0", 1.0));
}

Grid grid1d_from(const json& p) {
  const json& g = p.at("grid");
  return Grid::make1d(g.at("length").get<double>(), g.at("points").get<int>());
}

Grid grid3d_from(const json& p) {
  const json& g = p.at("grid");
  const json& lens = g.at("lengths");
  const json& pts = g.at("points");
  return Grid::make(3, {lens[0].get<double>(), lens[1].get<double>(), lens[2].get<double>()},
                    {pts[0].get<int>(), pts[1].get<int>(), pts[2].get<int>()});
}

OutputSink sink_from(const json& doc) {
  OutputSink s;
  const json& out = doc.at("output");
  if (out.contains("csv_path")) s.csv_path = out.at("csv_path").get<std::string>();
  if (out.contains("json_path")) s.json_path = out.at("json_path").get<std::string>();
  if (out.contains("svg_path")) s.svg_path = out.at("svg_path").get<std::string>();
  if (out.contains("snapshots_path")) s.snapshots_path = out.at("snapshots_path").get<std::string>();
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw io_error("write to '" + path + "' failed");
}

void write_reports_json(const std::vector<ResidualReport>& reports, const std::string& path) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  write_text(path, arr.dump(2) + "\n");
}

double max_l2(const std::vector<ResidualReport>& reports, std::string* which = nullptr) {
  double best = -1.0;
  for (const auto& r : reports)
    if (r.l2 > best) {
      best = r.l2;
      if (which) *which = r.equation_id;
    }
  return best < 0.0 ? 0.0 : best;
}

// ---------------------------------------------------------------- fixtures --

GaugeWave wave_from(const json& p, const Constants& constants) {
  const auto& vj = p.at("v");
  return GaugeWave::make({vj[0].get<double>(), vj[1].get<double>(), vj[2].get<double>()},
                         p.at("k").get<double>(), p.at("amplitude").get<double>(),
                         p.at("waveform").get<std::string>() == "sin" ? Waveform::sin
                                                                      : Waveform::cos,
                         constants);
}

// Null plane wave: E along y, B = E/c along z, both advected at c along x.
EMFieldSet plane_em_wave(const Grid& grid, double k, double amplitude, double dt,
                         std::size_t len, const Constants& constants) {
  std::vector<VectorField> e_out, b_out;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    e_out.push_back(VectorField::sample(grid, [&](double x, double, double) {
      return std::array<cplx, 3>{0.0, amplitude * std::cos(k * (x - constants.c * t)), 0.0};
    }));
    b_out.push_back(VectorField::sample(grid, [&](double x, double, double) {
      return std::array<cplx, 3>{0.0, 0.0,
                                 amplitude / constants.c * std::cos(k * (x - constants.c * t))};
    }));
  }
  return EMFieldSet::make(VectorHistory(dt, std::move(e_out)), VectorHistory(dt, std::move(b_out)),
                          std::nullopt, std::nullopt);
}

// Static longitudinal E with the charge density that sources it; B = J = 0.
EMFieldSet static_coulomb_like(const Grid& grid, double k, double amplitude, double dt,
                               std::size_t len, const Constants& constants) {
  const VectorField E = VectorField::sample(grid, [&](double x, double, double) {
    return std::array<cplx, 3>{amplitude * std::sin(k * x), 0.0, 0.0};
  });
  const ScalarField rho = ScalarField::sample(grid, [&](double x, double, double) {
    return cplx(constants.eps0 * amplitude * k * std::cos(k * x));
  });
  std::vector<VectorField> e_out(len, E), b_out(len, VectorField::zero(grid)),
      j_out(len, VectorField::zero(grid));
  std::vector<ScalarField> r_out(len, rho);
  return EMFieldSet::make(VectorHistory(dt, std::move(e_out)), VectorHistory(dt, std::move(b_out)),
                          ScalarHistory(dt, std::move(r_out)), VectorHistory(dt, std::move(j_out)));
}

struct EmScenario {
  EMFieldSet fields;
  std::optional<Potentials> potentials;
};

EmScenario em_fixture(const std::string& name, const GaugeWave& wave, const Grid& grid, double dt,
                      std::size_t len, const Constants& constants) {
  if (name == "plane_em_wave")
    return {plane_em_wave(grid, wave.k(), wave.amplitude(), dt, len, constants), std::nullopt};
  if (name == "static_coulomb_like")
    return {static_coulomb_like(grid, wave.k(), wave.amplitude(), dt, len, constants),
            std::nullopt};
  Potentials p = potentials_from_gauge(wave, grid, dt, len);
  EMFieldSet fields = em_fields_from_potentials(p);
  return {std::move(fields), std::move(p)};
}

// Deterministic uniform in [0, 1) independent of library distributions.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Smooth band-limited random field: a few cosine modes with integer
// wavevectors, each drifting in time at its own rate.
struct RandomModes {
  struct Mode {
    std::array<double, 3> k;
    double w;
    double phase;
    double amp;
  };
  std::vector<Mode> modes;

  static RandomModes draw(std::mt19937_64& rng, const Grid& grid, int count, int band) {
    RandomModes out;
    for (int q = 0; q < count; ++q) {
      Mode m;
      for (int a = 0; a < 3; ++a) {
        const int n =
            static_cast<int>(next_uniform(rng) * (2 * band + 1)) - band;  // in [-band, band]
        m.k[a] = 2.0 * std::numbers::pi * n / grid.length(a);
      }
      m.w = 2.0 * (next_uniform(rng) - 0.5);
      m.phase = 2.0 * std::numbers::pi * next_uniform(rng);
      m.amp = 0.5 + 0.5 * next_uniform(rng);
      out.modes.push_back(m);
    }
    return out;
  }

  double eval(double x, double y, double z, double t) const {
    double s = 0.0;
    for (const auto& m : modes)
      s += m.amp * std::cos(m.k[0] * x + m.k[1] * y + m.k[2] * z + m.w * t + m.phase);
    return s;
  }
};

ContinuitySet random_continuity_set(std::uint64_t seed, const std::array<double, 3>& v,
                                    const Grid& grid, double dt, std::size_t len, int modes) {
  std::mt19937_64 rng(seed);
  const RandomModes rho_modes = RandomModes::draw(rng, grid, modes, 2);
  const std::array<RandomModes, 3> j_modes = {RandomModes::draw(rng, grid, modes, 2),
                                              RandomModes::draw(rng, grid, modes, 2),
                                              RandomModes::draw(rng, grid, modes, 2)};
  std::vector<ScalarField> rho_out;
  std::vector<VectorField> j_out;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    rho_out.push_back(ScalarField::sample(
        grid, [&](double x, double y, double z) { return cplx(rho_modes.eval(x, y, z, t)); }));
    j_out.push_back(VectorField::sample(grid, [&](double x, double y, double z) {
      return std::array<cplx, 3>{j_modes[0].eval(x, y, z, t), j_modes[1].eval(x, y, z, t),
                                 j_modes[2].eval(x, y, z, t)};
    }));
  }
  return ContinuitySet::make(ScalarHistory(dt, std::move(rho_out)),
                             VectorHistory(dt, std::move(j_out)), v);
}

VectorField random_bandlimited_field(std::uint64_t seed, const Grid& grid, int modes) {
  std::mt19937_64 rng(seed);
  const std::array<RandomModes, 3> comps = {RandomModes::draw(rng, grid, modes, 2),
                                            RandomModes::draw(rng, grid, modes, 2),
                                            RandomModes::draw(rng, grid, modes, 2)};
  return VectorField::sample(grid, [&](double x, double y, double z) {
    return std::array<cplx, 3>{comps[0].eval(x, y, z, 0.0), comps[1].eval(x, y, z, 0.0),
                               comps[2].eval(x, y, z, 0.0)};
  });
}

// rho advected rigidly at v with J = rho v; all rest-frame continuity
// residuals vanish exactly when |v| = c.
ContinuitySet advected_continuity_set(const GaugeWave& wave, double rho0, const Grid& grid,
                                      double dt, std::size_t len) {
  const std::array<double, 3>& v = wave.v();
  const double speed = wave.speed();
  const std::array<double, 3> vhat = {v[0] / speed, v[1] / speed, v[2] / speed};
  const double k = wave.k();

  std::vector<ScalarField> rho_out;
  std::vector<VectorField> j_out;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    ScalarField rho = ScalarField::sample(grid, [&](double x, double y, double z) {
      return cplx(rho0 *
                  std::cos(k * (x * vhat[0] + y * vhat[1] + z * vhat[2] - speed * t)));
    });
    j_out.push_back(multiply(rho, v));
    rho_out.push_back(std::move(rho));
  }
  return ContinuitySet::make(ScalarHistory(dt, std::move(rho_out)),
                             VectorHistory(dt, std::move(j_out)), v);
}

// Spinor plane wave on the positive branch of the 2x2 mode matrix
// [[-mc/hbar, k], [k, mc/hbar]]: psi = u exp(i(w t - k x)), w = c*lambda.
SpinorHistory eigenspinor_history(double k, double m, const Grid& grid, double dt,
                                  std::size_t len, const Constants& constants) {
  const double a = m * constants.c / constants.hbar;
  const double lambda = std::hypot(k, a);
  double u1 = k, u2 = lambda + a;
  const double norm = std::hypot(u1, u2);
  u1 /= norm;
  u2 /= norm;
  const double w = constants.c * lambda;

  std::vector<ScalarField> up, down;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    up.push_back(ScalarField::sample1d(
        grid, [&](double x) { return u1 * std::exp(cplx(0.0, w * t - k * x)); }));
    down.push_back(ScalarField::sample1d(
        grid, [&](double x) { return u2 * std::exp(cplx(0.0, w * t - k * x)); }));
  }
  return SpinorHistory::make(ScalarHistory(dt, std::move(up)), ScalarHistory(dt, std::move(down)));
}

ScalarHistory branch_mode_history(double k, double m, int spinor_sign, const Grid& grid,
                                  double dt, std::size_t len, const Constants& constants) {
  const auto params = DispersionParams::make(m, spinor_sign, constants);
  const double w = omega_branches(k, params).omega_hi;
  std::vector<ScalarField> snaps;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = dt * static_cast<double>(i);
    snaps.push_back(ScalarField::sample1d(
        grid, [&](double x) { return std::exp(cplx(0.0, w * t - k * x)); }));
  }
  return ScalarHistory(dt, std::move(snaps));
}

// ---------------------------------------------------------------- runners --

void run_dispersion(const json& p, const OutputSink& sink) {
  const Constants constants = constants_from(p);
  const auto params = DispersionParams::make(
      p.at("m").get<double>(),
      p.contains("spinor_sign") ? p.at("spinor_sign").get<int>() : 1, constants);
  const double kmin = p.at("kmin").get<double>();
  const double kmax = p.at("kmax").get<double>();
  const long long samples = p.at("samples").get<long long>();

  std::vector<std::vector<double>> rows;
  std::vector<double> ks, his, los;
  for (long long i = 0; i < samples; ++i) {
    const double k =
        samples == 1 ? kmin : kmin + (kmax - kmin) * static_cast<double>(i) / (samples - 1);
    const BranchPair b = omega_branches(k, params);
    const double vg = group_velocity(k, params);
    rows.push_back({k, b.omega_hi, b.omega_lo, vg});
    ks.push_back(k);
    his.push_back(b.omega_hi);
    los.push_back(b.omega_lo);
  }

  if (!sink.csv_path.empty()) emit_table({"k", "omega_hi", "omega_lo", "v_g"}, rows, sink.csv_path);
  if (!sink.svg_path.empty())
    emit_svg_plot({{"omega_hi", ks, his}, {"omega_lo", ks, los}}, "dispersion", sink.svg_path);
  std::cerr << "dispersion: " << samples << " samples, k in [" << kmin << ", " << kmax
            << "], omega_hi(kmax) = " << (rows.empty() ? 0.0 : rows.back()[1]) << "\n";
}

SimulationRecord propagate_record(const json& p, bool keep_snapshots) {
  const Grid grid = grid1d_from(p);
  const json& pk = p.at("packet");
  const json& ph = p.at("physics");
  const json& r = p.at("run");

  WavepacketSpec spec;
  spec.k0 = pk.at("k0").get<double>();
  spec.sigma = pk.at("sigma").get<double>();
  spec.x0 = pk.at("x0").get<double>();
  const std::string branch = pk.at("branch").get<std::string>();
  spec.branch = branch == "hi" ? Branch::hi : branch == "lo" ? Branch::lo : Branch::mixed;
  spec.spinor_sign = pk.at("spinor_sign").get<int>();

  const Constants constants = Constants::make(num_or(ph, "c", 1.0), num_or(ph, "hbar", 1.0), 1.0);
  const Method method =
      r.at("method").get<std::string>() == "spectral" ? Method::spectral : Method::leapfrog;
  return run_simulation(spec, grid, ph.at("m").get<double>(), method, r.at("dt").get<double>(),
                        r.at("steps").get<int>(), r.at("record_every").get<int>(), constants,
                        keep_snapshots);
}

void run_propagate(const json& p, const OutputSink& sink) {
  const bool want_snapshots = !sink.snapshots_path.empty();
  const SimulationRecord record = propagate_record(p, want_snapshots);

  if (!sink.csv_path.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < record.times.size(); ++i)
      rows.push_back({record.times[i], record.centroids[i], record.l2_norms[i]});
    emit_table({"t", "centroid", "l2_norm"}, rows, sink.csv_path);
  }
  if (want_snapshots) {
    if (!record.snapshots)
      throw io_error("propagate: snapshots requested but the run recorded fewer than 3 states");
    std::ostringstream os;
    for (std::size_t i = 0; i < record.snapshots->length(); ++i)
      write_snapshot(os, record.snapshots->snapshot(i), record.snapshots->time(i));
    write_text(sink.snapshots_path, os.str());
  }
  if (!sink.svg_path.empty())
    emit_svg_plot({{"centroid", record.times, record.centroids}}, "centroid trajectory",
                  sink.svg_path);

  std::ostringstream summary;
  summary << "propagate: " << record.times.size() << " records";
  if (record.measured_vg)
    summary << ", measured_vg = " << *record.measured_vg << " (fit residual "
            << record.fit_residual << ")";
  if (!record.l2_norms.empty() && record.l2_norms.front() > 0.0)
    summary << ", l2 drift = "
            << std::abs(record.l2_norms.back() - record.l2_norms.front()) /
                   record.l2_norms.front();
  std::cerr << summary.str() << "\n";
}

std::vector<ResidualReport> invariance_reports(const json& p) {
  const std::string family = p.at("family").get<std::string>();
  const Constants constants = constants_from(p);
  std::vector<ResidualReport> reports;

  if (family == "maxwell" || family == "gauge") {
    const GaugeWave wave = wave_from(p, constants);
    const Grid grid = grid3d_from(p);
    const double dt = p.at("dt").get<double>();
    const std::size_t len = p.at("len").get<std::size_t>();
    EmScenario scenario = em_fixture(p.at("fixture").get<std::string>(), wave, grid, dt, len,
                                     constants);
    if (family == "maxwell") {
      const MaxwellResiduals mr = maxwell_residuals(scenario.fields, constants);
      reports = {mr.faraday, mr.gauss_e, mr.gauss_b, mr.ampere};
    } else {
      const InvarianceResiduals ir = invariance_condition_residuals(scenario.fields, wave);
      reports = {ir.gradf_dot_b, ir.gradf_dot_e, ir.gradf_cross_e, ir.gradf_cross_b};
      const std::size_t mid = scenario.fields.E->length() / 2;
      const BoostResiduals br = boost_consistency_residual(
          scenario.fields.E->snapshot(mid), scenario.fields.B->snapshot(mid), wave.v(), constants);
      reports.push_back(br.boost_b);
      reports.push_back(br.boost_e);
      if (scenario.potentials) reports.push_back(lorenz_residual(*scenario.potentials, constants));
    }
  } else if (family == "dirac") {
    const Grid grid = grid1d_from(p);
    const double k = p.at("k").get<double>();
    const double m = p.at("m").get<double>();
    const double dt = p.at("dt").get<double>();
    const std::size_t len = p.at("len").get<std::size_t>();
    reports.push_back(dirac_residual(eigenspinor_history(k, m, grid, dt, len, constants), m,
                                     constants));
    reports.push_back(telegraph_residual(branch_mode_history(k, m, 1, grid, dt, len, constants),
                                         m, 1, constants));
    const auto& vj = p.at("v");
    const GaugeWave wave =
        GaugeWave::make({vj[0].get<double>(), vj[1].get<double>(), vj[2].get<double>()}, k, 1.0,
                        Waveform::sin, constants);
    const AlphaVResiduals av = alpha_v_constraint(wave, grid, 0.0);
    reports.push_back(av.plus);
    reports.push_back(av.minus);
  } else if (family == "continuity") {
    const GaugeWave wave = wave_from(p, constants);
    const Grid grid = grid3d_from(p);
    const ContinuitySet set = advected_continuity_set(wave, num_or(p, "rho0", 1.0), grid,
                                                      p.at("dt").get<double>(),
                                                      p.at("len").get<std::size_t>());
    const ContinuityResiduals cr = continuity_residuals(set, constants);
    const ContinuityInvarianceResiduals ir = continuity_invariance_residuals(set, wave);
    reports = {cr.grad_rho,      cr.curl_j,    cr.charge,
               ir.j_dot_gradf, ir.rho_gradf, ir.j_cross_gradf};
  } else if (family == "postgalilean") {
    const Grid grid = grid3d_from(p);
    const auto& vj = p.at("v");
    const ContinuitySet set = random_continuity_set(
        p.at("seed").get<std::uint64_t>(),
        {vj[0].get<double>(), vj[1].get<double>(), vj[2].get<double>()}, grid,
        p.at("dt").get<double>(), p.at("len").get<std::size_t>(),
        p.contains("modes") ? p.at("modes").get<int>() : 2);
    const PostGalileanResiduals pg = post_galilean_residuals(set, constants);
    reports = {pg.boosted_charge, pg.boosted_gradient};
  } else {  // vorticity
    const double v0 = p.at("v0").get<double>();
    const double dt = p.at("dt").get<double>();
    const std::size_t len = p.at("len").get<std::size_t>();
    const bool circular = p.at("flow").get<std::string>() == "circular";
    std::vector<std::array<double, 3>> samples;
    for (std::size_t i = 0; i < len; ++i) {
      const double t = dt * static_cast<double>(i);
      if (circular)
        samples.push_back({v0 * std::cos(t), v0 * std::sin(t), 0.0});
      else
        samples.push_back({v0 * std::sin(t), 0.0, 0.0});
    }
    const FlowHistory flow = FlowHistory::make(dt, samples);
    const VorticityResult result = vorticity(flow, constants);

    double dot_v2 = 0.0, dot_v_max = 0.0, dot_a2 = 0.0, dot_a_max = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < result.omega.size(); ++i) {
      const auto& w = result.omega[i];
      const auto& vv = flow.v[i + 1];
      std::array<double, 3> vdot;
      for (int a = 0; a < 3; ++a)
        vdot[a] = (flow.v[i + 2][a] - flow.v[i][a]) / (2.0 * flow.dt);
      const double dv = w[0] * vv[0] + w[1] * vv[1] + w[2] * vv[2];
      const double da = w[0] * vdot[0] + w[1] * vdot[1] + w[2] * vdot[2];
      dot_v2 += dv * dv;
      dot_a2 += da * da;
      dot_v_max = std::max(dot_v_max, std::abs(dv));
      dot_a_max = std::max(dot_a_max, std::abs(da));
      mag = std::max(mag, std::hypot(w[0], w[1], w[2]));
    }
    const double n = static_cast<double>(std::max<std::size_t>(1, result.omega.size()));
    ResidualReport rv{"omega_dot_v", std::sqrt(dot_v2 / n), dot_v_max, mag > 0.0 ? mag : 1.0,
                      {},            {},                    dt};
    ResidualReport ra{"omega_dot_vdot", std::sqrt(dot_a2 / n), dot_a_max,
                      mag > 0.0 ? mag : 1.0, {},              {},       dt};
    reports = {rv, ra};
  }
  return reports;
}

void run_invariance(const json& p, const OutputSink& sink) {
  const std::vector<ResidualReport> reports = invariance_reports(p);
  write_reports_json(reports, sink.json_path);
  std::string worst;
  const double l2 = max_l2(reports, &worst);
  std::cerr << "invariance " << p.at("family").get<std::string>() << ": " << reports.size()
            << " reports, max l2 = " << l2 << " (" << worst << ")\n";
}

void run_decompose(const json& p, const OutputSink& sink) {
  VectorField A = [&]() {
    if (p.contains("input_path")) return read_vector_snapshot(p.at("input_path").get<std::string>()).field;
    return random_bandlimited_field(p.at("seed").get<std::uint64_t>(), grid3d_from(p),
                                    p.contains("modes") ? p.at("modes").get<int>() : 2);
  }();
  const Grid& grid = A.grid();
  const HelmholtzParts parts = helmholtz_decompose(A);

  const double field_scale = max_abs(A) > 0.0 ? max_abs(A) : 1.0;
  double kmax = 0.0;
  for (int a = 0; a < grid.rank(); ++a) kmax = std::max(kmax, grid.max_wavenumber(a));

  ResidualReport curl_par = residual_norms(curl(parts.par), "curl_par");
  curl_par.scale = field_scale;
  ResidualReport div_perp = residual_norms(divergence(parts.perp), "div_perp");
  div_perp.scale = field_scale * kmax;
  ResidualReport recon = residual_norms(sub(add(parts.perp, parts.par), A), "reconstruction");
  recon.scale = field_scale;

  write_reports_json({curl_par, div_perp, recon}, sink.json_path);
  std::cerr << "decompose: curl(par) linf = " << curl_par.linf
            << ", div(perp) linf = " << div_perp.linf << ", reconstruction linf = " << recon.linf
            << "\n";
}

void run_energy(const json& p, const OutputSink& sink) {
  const Constants constants = constants_from(p);
  const GaugeWave wave = wave_from(p, constants);
  const Grid grid = grid1d_from(p);
  const FluxSign sign = p.at("sign").get<std::string>() == "plus_phi_a" ? FluxSign::plus_phi_a
                                                                        : FluxSign::minus_phi_a;

  std::vector<ResidualReport> reports;
  reports.push_back(energy_conservation_residual(wave, grid, num_or(p, "t", 0.0), sign));

  std::vector<std::vector<double>> rows;
  std::vector<double> dts, l2s;
  if (p.contains("dts")) {
    const std::size_t len = p.at("len").get<std::size_t>();
    for (const auto& dj : p.at("dts")) {
      const double dt = dj.get<double>();
      std::vector<ScalarField> snaps;
      for (std::size_t i = 0; i < len; ++i)
        snaps.push_back(wave.sample_f(grid, dt * static_cast<double>(i)));
      ResidualReport r = energy_conservation_residual(ScalarHistory(dt, std::move(snaps)), sign,
                                                      constants);
      rows.push_back({dt, r.l2});
      dts.push_back(dt);
      l2s.push_back(r.l2);
      reports.push_back(std::move(r));
    }
  }

  write_reports_json(reports, sink.json_path);
  if (!sink.csv_path.empty()) {
    if (rows.empty()) throw io_error("energy: csv output needs a dts series");
    emit_table({"dt", "l2"}, rows, sink.csv_path);
  }
  if (!sink.svg_path.empty()) {
    if (dts.empty()) throw io_error("energy: svg output needs a dts series");
    emit_svg_plot({{"energy_l2", dts, l2s}}, "energy residual convergence", sink.svg_path);
  }
  std::cerr << "energy: analytic l2 = " << reports.front().l2 << " across " << reports.size()
            << " reports\n";
}

std::size_t sweep_thread_cap() {
  const char* env = std::getenv("LONGWAVE_THREADS");
  if (!env || !*env) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  char* end = nullptr;
  const unsigned long n = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || n == 0)
    throw io_error("LONGWAVE_THREADS must be a positive integer");
  return static_cast<std::size_t>(n);
}

void run_sweep(const json& p, const OutputSink& sink) {
  const json& base = p.at("base");
  const std::string keypath = p.at("vary").at("path").get<std::string>();
  const json& values = p.at("vary").at("values");

  // one in-memory record per run, merged in input order
  std::vector<std::vector<double>> rows(values.size());
  std::atomic<std::size_t> next{0};
  std::mutex fail_mutex;
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      try {
        json doc = base;
        json* node = &doc;
        std::stringstream ss(keypath);
        std::string tok, last;
        std::vector<std::string> tokens;
        while (std::getline(ss, tok, '.')) tokens.push_back(tok);
        for (std::size_t d = 0; d + 1 < tokens.size(); ++d) node = &(*node)[tokens[d]];
        (*node)[tokens.back()] = values[i].get<double>();

        const SimulationRecord record = propagate_record(doc.at("params"), false);
        rows[i] = {values[i].get<double>(), record.measured_vg.value_or(0.0),
                   record.fit_residual, record.centroids.back(), record.l2_norms.back()};
        if (!record.measured_vg)
          throw physics_error("sweep: run produced no velocity fit");
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t threads = std::min<std::size_t>(sweep_thread_cap(), values.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  emit_table({keypath, "measured_vg", "fit_residual", "final_centroid", "final_l2_norm"}, rows,
             sink.csv_path);
  if (!sink.svg_path.empty()) {
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
      xs.push_back(row[0]);
      ys.push_back(row[1]);
    }
    emit_svg_plot({{"measured_vg", xs, ys}}, "sweep: " + keypath, sink.svg_path);
  }
  double lo = rows.front()[1], hi = rows.front()[1];
  for (const auto& row : rows) {
    lo = std::min(lo, row[1]);
    hi = std::max(hi, row[1]);
  }
  std::cerr << "sweep " << keypath << ": " << rows.size() << " runs on " << threads
            << " threads, measured_vg in [" << lo << ", " << hi << "]\n";
}

}  // namespace

// ----------------------------------------------------------------- public --

std::vector<std::string> validate_config(const json& doc) {
  std::vector<std::string> v;
  if (!doc.is_object()) {
    v.push_back("config: must be a JSON object");
    return v;
  }
  reject_unknown(doc, "config", {"command", "params", "output"}, v);

  std::string cmd;
  if (!doc.contains("command") || !doc.at("command").is_string()) {
    note(v, "command", "required string missing");
  } else {
    cmd = doc.at("command").get<std::string>();
    static const std::set<std::string> commands = {"dispersion", "propagate", "invariance",
                                                   "decompose", "energy", "sweep"};
    if (!commands.count(cmd)) {
      note(v, "command",
           "unknown command '" + cmd +
               "'; valid commands are dispersion, propagate, invariance, decompose, energy, sweep");
      cmd.clear();
    }
  }

  const json* params = get_object(doc, "config", "params", true, v);
  if (params && !cmd.empty()) {
    if (cmd == "dispersion") validate_dispersion(*params, v);
    if (cmd == "propagate") validate_propagate(*params, "params", v);
    if (cmd == "invariance") validate_invariance(*params, v);
    if (cmd == "decompose") validate_decompose(*params, v);
    if (cmd == "energy") validate_energy(*params, v);
    if (cmd == "sweep") validate_sweep(*params, v);
  }
  if (!cmd.empty()) validate_output(doc, cmd, v);
  return v;
}

CommandConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw io_error(std::string("config is not well-formed JSON: ") + e.what());
  }
  const std::vector<std::string> violations = validate_config(doc);
  if (!violations.empty()) {
    std::string msg = "invalid config (" + std::to_string(violations.size()) + " violations): ";
    for (std::size_t i = 0; i < violations.size(); ++i) msg += (i ? "; " : "") + violations[i];
    throw io_error(msg);
  }
  return CommandConfig{doc.at("command").get<std::string>(), doc.at("params"), sink_from(doc)};
}

void run_command(const CommandConfig& config) {
  if (config.command == "dispersion") return run_dispersion(config.params, config.output);
  if (config.command == "propagate") return run_propagate(config.params, config.output);
  if (config.command == "invariance") return run_invariance(config.params, config.output);
  if (config.command == "decompose") return run_decompose(config.params, config.output);
  if (config.command == "energy") return run_energy(config.params, config.output);
  if (config.command == "sweep") return run_sweep(config.params, config.output);
  throw io_error("unknown command '" + config.command + "'");
}

void emit_table(const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, const std::string& path) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns.size())
      throw io_error("emit_table: row " + std::to_string(i) + " has " +
                     std::to_string(rows[i].size()) + " cells, expected " +
                     std::to_string(columns.size()));
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (!std::isfinite(rows[i][j]))
        throw io_error("emit_table: non-finite value at row " + std::to_string(i) + ", column '" +
                       columns[j] + "'");
  }

  std::string text;
  for (std::size_t j = 0; j < columns.size(); ++j) text += (j ? "," : "") + columns[j];
  text += "\n";
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      if (j) text += ',';
      text += buf;
    }
    text += "\n";
  }
  write_text(path, text);
}

namespace {

// largest of 1/2/5 * 10^n not above the raw step
double nice_step(double raw) {
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / p;
  return (f >= 5.0 ? 5.0 : f >= 2.0 ? 2.0 : 1.0) * p;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double step = nice_step((hi - lo) / 5.0);
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return ticks;
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void emit_svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                   const std::string& path) {
  if (series.empty()) throw io_error("emit_svg_plot: need at least one series");
  for (const auto& s : series) {
    if (s.x.size() != s.y.size())
      throw io_error("emit_svg_plot: series '" + s.label + "' has mismatched x/y lengths");
    if (s.x.empty()) throw io_error("emit_svg_plot: series '" + s.label + "' is empty");
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        throw io_error("emit_svg_plot: non-finite point in series '" + s.label + "'");
  }

  double xmin = series[0].x[0], xmax = xmin, ymin = series[0].y[0], ymax = ymin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax == xmin) {
    const double d = std::max(1.0, std::abs(xmin)) * 0.5;
    xmin -= d;
    xmax += d;
  }
  if (ymax == ymin) {
    const double d = std::max(1.0, std::abs(ymin)) * 0.5;
    ymin -= d;
    ymax += d;
  }

  const double px = 70.0, py = 40.0, pw = 710.0, phh = 510.0;
  auto sx = [&](double x) { return px + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return py + phh - (y - ymin) / (ymax - ymin) * phh; };

  static const char* palette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\" font-family=\"monospace\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" fill=\"#000000\">" +
         title + "</text>\n";
  svg += "<rect x=\"70\" y=\"40\" width=\"710\" height=\"510\" fill=\"none\" stroke=\"#333333\"/>\n";

  for (double t : linear_ticks(xmin, xmax)) {
    const std::string x = fmt(sx(t), "%.2f");
    svg += "<line x1=\"" + x + "\" y1=\"550\" x2=\"" + x +
           "\" y2=\"556\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + x + "\" y=\"570\" text-anchor=\"middle\" fill=\"#000000\">" + fmt(t) +
           "</text>\n";
  }
  for (double t : linear_ticks(ymin, ymax)) {
    const std::string y = fmt(sy(t), "%.2f");
    svg += "<line x1=\"64\" y1=\"" + y + "\" x2=\"70\" y2=\"" + y + "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"60\" y=\"" + y + "\" dy=\"0.32em\" text-anchor=\"end\" fill=\"#000000\">" +
           fmt(t) + "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    std::string pts;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (i) pts += ' ';
      pts += fmt(sx(series[s].x[i]), "%.2f") + "," + fmt(sy(series[s].y[i]), "%.2f");
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += palette[s % 6];
    svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string y = fmt(56.0 + 18.0 * static_cast<double>(s), "%.2f");
    svg += "<line x1=\"640\" y1=\"" + y + "\" x2=\"668\" y2=\"" + y + "\" stroke=\"";
    svg += palette[s % 6];
    svg += "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"674\" y=\"" + y + "\" dy=\"0.32em\" fill=\"#000000\">" + series[s].label +
           "</text>\n";
  }
  svg += "</svg>\n";
  write_text(path, svg);
}

nlohmann::json report_to_json(const ResidualReport& report) {
  return nlohmann::json{{"equation", report.equation_id}, {"l2", report.l2},
                        {"linf", report.linf},            {"scale", report.scale},
                        {"points", report.points},        {"lengths", report.lengths},
                        {"dt", report.dt}};
}

}  // namespace longwave
