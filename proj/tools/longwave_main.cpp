#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "longwave/cli.hpp"
#include "longwave/error.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw longwave::io_error("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json& descend(json& doc, std::initializer_list<const char*> keys) {
  json* node = &doc;
  for (const char* key : keys) node = &(*node)[key];
  return *node;
}

// Every override has one canonical home per command; commands without that
// parameter reject the flag instead of inventing a key.
void apply_mass(json& doc, const std::string& cmd, double m) {
  if (cmd == "dispersion" || cmd == "invariance")
    descend(doc, {"params", "m"}) = m;
  else if (cmd == "propagate")
    descend(doc, {"params", "physics", "m"}) = m;
  else if (cmd == "sweep")
    descend(doc, {"params", "base", "params", "physics", "m"}) = m;
  else
    throw longwave::io_error("--m: the " + cmd + " command has no mass parameter");
}

void apply_dt(json& doc, const std::string& cmd, double dt) {
  if (cmd == "invariance" || cmd == "energy")
    descend(doc, {"params", "dt"}) = dt;
  else if (cmd == "propagate")
    descend(doc, {"params", "run", "dt"}) = dt;
  else if (cmd == "sweep")
    descend(doc, {"params", "base", "params", "run", "dt"}) = dt;
  else
    throw longwave::io_error("--dt: the " + cmd + " command has no time step");
}

void apply_out(json& doc, const std::string& cmd, const std::string& path) {
  const char* key =
      (cmd == "invariance" || cmd == "decompose" || cmd == "energy") ? "json_path" : "csv_path";
  descend(doc, {"output"})[key] = path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"longitudinal matter-wave laboratory"};
  app.require_subcommand(1);

  std::string config_path, family, out_path;
  double m_override = 0.0, dt_override = 0.0;
  bool has_m = false, has_dt = false, has_out = false;

  const char* names[] = {"dispersion", "propagate", "invariance", "decompose", "energy", "sweep"};
  const char* blurbs[] = {"tabulate branch frequencies and group velocity",
                          "evolve a wavepacket and record its centroid",
                          "evaluate residuals of an invariance family on a fixture",
                          "split a vector field into curl-free and divergence-free parts",
                          "energy density / flux balance of gauge-derived potentials",
                          "run a propagate config across a list of parameter values"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("config", config_path, "JSON config file")->required();
    if (std::string(names[i]) == "invariance")
      sub->add_option("family", family, "invariance family (must agree with the config)");
    sub->add_option("--m", m_override, "override the mass parameter")
        ->each([&](const std::string&) { has_m = true; });
    sub->add_option("--dt", dt_override, "override the time step")
        ->each([&](const std::string&) { has_dt = true; });
    sub->add_option("--out", out_path, "override the primary output path")
        ->each([&](const std::string&) { has_out = true; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();

    json doc;
    try {
      doc = json::parse(read_file(config_path));
    } catch (const json::parse_error& e) {
      throw longwave::io_error(std::string("config is not well-formed JSON: ") + e.what());
    }

    if (doc.is_object() && doc.contains("command") && doc.at("command").is_string() &&
        doc.at("command").get<std::string>() != cmd)
      throw longwave::io_error("config command '" + doc.at("command").get<std::string>() +
                               "' does not match subcommand '" + cmd + "'");

    if (!family.empty() && doc.is_object()) {
      json& params = doc["params"];
      if (params.is_object() && params.contains("family") && params.at("family").is_string() &&
          params.at("family").get<std::string>() != family)
        throw longwave::io_error("config family '" + params.at("family").get<std::string>() +
                                 "' does not match the command line ('" + family + "')");
      params["family"] = family;
    }

    if (has_m) apply_mass(doc, cmd, m_override);
    if (has_dt) apply_dt(doc, cmd, dt_override);
    if (has_out) apply_out(doc, cmd, out_path);

    longwave::run_command(longwave::parse_config(doc.dump()));
  } catch (const longwave::physics_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
