// Copyright 2026 The vdwforce Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vdw/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vdw {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) fail(path, "unknown key '" + key + "'");
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path + "." + key, "not finite");
  return x;
}

Vec3 vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected a 3-vector");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) fail(path, "expected numeric components");
    out[i] = v[i].get<double>();
  }
  if (!out.allFinite()) fail(path, "not finite");
  return out;
}

// Exactly one of the listed unit variants; returns the SI value.
template <typename T, typename Read>
std::optional<T> one_of(const json& obj, const std::string& path,
                        const std::vector<std::pair<std::string, double>>& variants, Read read,
                        bool required) {
  std::optional<T> out;
  for (const auto& [key, factor] : variants) {
    if (!obj.contains(key)) continue;
    if (out) fail(path, "more than one of the unit variants of '" + key + "' given");
    out = read(obj.at(key), path + "." + key) * factor;
  }
  if (!out && required) fail(path, "missing '" + variants.front().first + "' (or a unit variant)");
  return out;
}

double read_scalar(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "not finite");
  return x;
}

const std::vector<std::pair<std::string, double>> kLength = {{"_m", 1.0}, {"_nm", si::nm}};

std::vector<std::pair<std::string, double>> with_stem(
    const std::string& stem, const std::vector<std::pair<std::string, double>>& suffixes) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [suffix, f] : suffixes) out.emplace_back(stem + suffix, f);
  return out;
}

std::set<std::string> keys_of(const std::vector<std::pair<std::string, double>>& v) {
  std::set<std::string> out;
  for (const auto& [k, f] : v) out.insert(k);
  return out;
}

std::set<std::string> merged(std::set<std::string> a, const std::set<std::string>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

AtomConfig parse_atom(const json& obj, const std::string& path, bool positioned) {
  const auto energy_keys = std::vector<std::pair<std::string, double>>{
      {"energy_eV", si::eV}, {"energy_J", 1.0}};
  const auto vector_dipole = std::vector<std::pair<std::string, double>>{
      {"dipole_Cm", 1.0}, {"dipole_D", si::debye}, {"dipole_au", si::atomic_dipole}};
  const auto iso_dipole = std::vector<std::pair<std::string, double>>{
      {"isotropic_dipole_Cm", 1.0},
      {"isotropic_dipole_D", si::debye},
      {"isotropic_dipole_au", si::atomic_dipole}};
  const auto channel_dipole = std::vector<std::pair<std::string, double>>{
      {"channels_Cm", 1.0}, {"channels_D", si::debye}, {"channels_au", si::atomic_dipole}};
  const auto position_keys = with_stem("position", kLength);

  std::set<std::string> allowed = {"levels", "transitions", "initial_level", "initial_populations"};
  if (positioned) allowed = merged(allowed, keys_of(position_keys));
  require_keys(obj, path, allowed);

  LevelSchemeRecord record;
  if (!obj.contains("levels") || !obj.at("levels").is_array() || obj.at("levels").empty())
    fail(path, "'levels' must be a nonempty array");
  std::size_t i = 0;
  for (const auto& level : obj.at("levels")) {
    const std::string lp = path + ".levels[" + std::to_string(i++) + "]";
    require_keys(level, lp, merged({"label"}, keys_of(energy_keys)));
    if (!level.contains("label") || !level.at("label").is_string()) fail(lp, "missing 'label'");
    record.levels.push_back({level.at("label").get<std::string>(),
                             *one_of<double>(level, lp, energy_keys, read_scalar, true)});
  }

  if (obj.contains("transitions")) {
    if (!obj.at("transitions").is_array()) fail(path + ".transitions", "expected an array");
    i = 0;
    for (const auto& tr : obj.at("transitions")) {
      const std::string tp = path + ".transitions[" + std::to_string(i++) + "]";
      require_keys(tr, tp,
                   merged(merged(merged({"upper", "lower", "rate_per_s"}, keys_of(vector_dipole)),
                                 keys_of(iso_dipole)),
                          keys_of(channel_dipole)));
      for (const char* k : {"upper", "lower"})
        if (!tr.contains(k) || !tr.at(k).is_string()) fail(tp, std::string("missing '") + k + "'");
      const std::string upper = tr.at("upper").get<std::string>();
      const std::string lower = tr.at("lower").get<std::string>();

      std::vector<Vec3> channels;
      int given = 0;
      if (auto d = one_of<Vec3>(tr, tp, vector_dipole, vec3, false)) {
        channels = {*d};
        ++given;
      }
      if (auto d = one_of<double>(tr, tp, iso_dipole, read_scalar, false)) {
        if (*d < 0.0) fail(tp, "isotropic dipole magnitude must be nonnegative");
        channels = isotropic_channels(*d);
        ++given;
      }
      for (const auto& [key, factor] : channel_dipole) {
        if (!tr.contains(key)) continue;
        ++given;
        const json& list = tr.at(key);
        if (!list.is_array() || list.empty()) fail(tp + "." + key, "expected a list of 3-vectors");
        for (const auto& v : list) channels.push_back(vec3(v, tp + "." + key) * factor);
      }
      if (given != 1) fail(tp, "exactly one dipole specification is required");
      record.dipoles.push_back({upper, lower, channels});
      if (tr.contains("rate_per_s"))
        record.rates.push_back({upper, lower, number(tr, "rate_per_s", tp)});
    }
  }

  if (positioned)
    if (auto p = one_of<Vec3>(obj, path, position_keys, vec3, false)) record.position = *p;

  AtomConfig atom{load_species(record), {}};
  const std::size_t n = atom.species.level_count();
  if (obj.contains("initial_level") && obj.contains("initial_populations"))
    fail(path, "give either 'initial_level' or 'initial_populations', not both");
  if (obj.contains("initial_level")) {
    if (!obj.at("initial_level").is_string()) fail(path + ".initial_level", "expected a label");
    auto idx = atom.species.find_level(obj.at("initial_level").get<std::string>());
    if (!idx) fail(path + ".initial_level", "unknown level");
    atom.initial = PopulationState::pure(n, *idx);
  } else if (obj.contains("initial_populations")) {
    const json& pops = obj.at("initial_populations");
    if (!pops.is_object()) fail(path + ".initial_populations", "expected {label: probability}");
    atom.initial.probabilities.assign(n, 0.0);
    for (const auto& [label, value] : pops.items()) {
      auto idx = atom.species.find_level(label);
      if (!idx) fail(path + ".initial_populations", "unknown level '" + label + "'");
      atom.initial.probabilities[*idx] = read_scalar(value, path + ".initial_populations." + label);
    }
  } else {
    atom.initial = PopulationState::ground(n);
  }
  validate_populations(atom.species, atom.initial);
  return atom;
}

Grid parse_grid(const json& obj, const std::string& path, const std::string& unit_stem,
                const std::vector<std::pair<std::string, double>>& units) {
  const auto min_keys = with_stem("min", units);
  const auto max_keys = with_stem("max", units);
  require_keys(obj, path, merged(merged({"count", "spacing"}, keys_of(min_keys)), keys_of(max_keys)));
  (void)unit_stem;
  Grid g;
  g.min = *one_of<double>(obj, path, min_keys, read_scalar, true);
  g.max = *one_of<double>(obj, path, max_keys, read_scalar, true);
  if (!obj.contains("count") || !obj.at("count").is_number_unsigned())
    fail(path, "'count' must be a positive integer");
  g.count = obj.at("count").get<std::size_t>();
  const std::string spacing = obj.value("spacing", std::string("linear"));
  if (spacing == "linear")
    g.spacing = Grid::Spacing::Linear;
  else if (spacing == "log")
    g.spacing = Grid::Spacing::Log;
  else
    fail(path + ".spacing", "expected 'linear' or 'log'");
  try {
    (void)g.values();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  return g;
}

Environment parse_environment(const json& obj, const std::string& path) {
  if (!obj.contains("type") || !obj.at("type").is_string()) fail(path, "missing 'type'");
  const std::string type = obj.at("type").get<std::string>();
  if (type == "free_space") {
    require_keys(obj, path, {"type"});
    return FreeSpace{};
  }
  if (type != "dilute_body") fail(path + ".type", "expected 'free_space' or 'dilute_body'");
  require_keys(obj, path, {"type", "species", "lattice", "points"});
  if (!obj.contains("species")) fail(path, "dilute body needs 'species'");
  AtomConfig sp = parse_atom(obj.at("species"), path + ".species", false);

  DiluteBody body;
  body.species.push_back({sp.species, sp.initial});
  if (obj.contains("lattice")) {
    const json& lat = obj.at("lattice");
    const std::string lp = path + ".lattice";
    const auto spacing_keys = with_stem("spacing", kLength);
    const auto origin_keys = with_stem("origin", kLength);
    require_keys(lat, lp, merged(merged({"counts", "weight"}, keys_of(spacing_keys)), keys_of(origin_keys)));
    if (!lat.contains("counts") || !lat.at("counts").is_array() || lat.at("counts").size() != 3)
      fail(lp, "'counts' must be three integers");
    std::array<std::size_t, 3> counts{};
    for (int k = 0; k < 3; ++k) {
      if (!lat.at("counts")[k].is_number_unsigned()) fail(lp + ".counts", "expected integers");
      counts[k] = lat.at("counts")[k].get<std::size_t>();
    }
    const double spacing = *one_of<double>(lat, lp, spacing_keys, read_scalar, true);
    if (!(spacing > 0.0)) fail(lp, "spacing must be positive");
    const Vec3 origin = one_of<Vec3>(lat, lp, origin_keys, vec3, false).value_or(Vec3::Zero());
    const double weight = lat.contains("weight") ? number(lat, "weight", lp) : 1.0;
    auto grid = DiluteBody::lattice(body.species.front(), origin, counts, spacing, weight);
    body.points = std::move(grid.points);
  }
  if (obj.contains("points")) {
    if (!obj.at("points").is_array()) fail(path + ".points", "expected an array");
    std::size_t i = 0;
    for (const auto& pt : obj.at("points")) {
      const std::string pp = path + ".points[" + std::to_string(i++) + "]";
      const auto pos_keys = with_stem("position", kLength);
      require_keys(pt, pp, merged({"weight"}, keys_of(pos_keys)));
      const Vec3 pos = *one_of<Vec3>(pt, pp, pos_keys, vec3, true);
      const double weight = pt.contains("weight") ? number(pt, "weight", pp) : 1.0;
      body.points.push_back({pos, weight, 0});
    }
  }
  if (body.points.empty()) fail(path, "dilute body has no points");
  body.validate();
  return body;
}

QuadratureSpec parse_quadrature(const json& obj, const std::string& path) {
  require_keys(obj, path, {"rel_tol", "abs_floor_N", "max_subdivisions", "scale_rad_per_s"});
  QuadratureSpec q;
  if (obj.contains("rel_tol")) q.rel_tol = number(obj, "rel_tol", path);
  if (obj.contains("abs_floor_N")) q.abs_floor = number(obj, "abs_floor_N", path);
  if (obj.contains("max_subdivisions")) {
    if (!obj.at("max_subdivisions").is_number_unsigned())
      fail(path + ".max_subdivisions", "expected a positive integer");
    q.max_subdivisions = obj.at("max_subdivisions").get<std::size_t>();
  }
  if (obj.contains("scale_rad_per_s")) q.scale = number(obj, "scale_rad_per_s", path);
  try {
    q.validate();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  return q;
}

}  // namespace

std::string to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::ForceVsDistance: return "force-vs-distance";
    case Subcommand::ForceVsTime: return "force-vs-time";
    case Subcommand::CpConsistency: return "cp-consistency";
    case Subcommand::KernelCheck: return "kernel-check";
  }
  return "unknown";
}

std::vector<double> Grid::values() const {
  if (count == 0) throw ValidationError("grid must contain at least one point");
  if (!std::isfinite(min) || !std::isfinite(max)) throw ValidationError("grid bounds not finite");
  if (count == 1) {
    if (min != max) throw ValidationError("single-point grid needs min == max");
    return {min};
  }
  if (!(max > min)) throw ValidationError("grid must be strictly increasing (max > min)");
  if (spacing == Spacing::Log && !(min > 0.0))
    throw ValidationError("logarithmic grid needs a positive minimum");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = spacing == Spacing::Linear ? min + f * (max - min)
                                      : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
  }
  v.front() = min;
  v.back() = max;
  for (std::size_t i = 1; i < count; ++i)
    if (!(v[i] > v[i - 1])) throw ValidationError("grid points are not strictly increasing");
  return v;
}

std::vector<double> ScenarioConfig::scan_values() const {
  if (command == Subcommand::ForceVsDistance) return distance_grid->values();
  if (time_grid) return time_grid->values();
  return {time.value_or(0.0)};
}

ScenarioConfig parse_scenario(const std::string& json_text, Subcommand command) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (command == Subcommand::KernelCheck)
    throw ValidationError("kernel-check takes no scenario configuration");

  const auto distance_keys = with_stem("distance", kLength);
  const std::vector<std::pair<std::string, double>> time_keys = {{"time_s", 1.0}};
  require_keys(root, "config",
               merged(merged({"atoms", "environment", "separation_direction", "distance_grid",
                              "time_grid", "time_s", "quadrature", "output"},
                             keys_of(distance_keys)),
                      {}));

  ScenarioConfig cfg;
  cfg.command = command;

  if (!root.contains("atoms")) fail("config", "missing 'atoms'");
  const json& atoms = root.at("atoms");
  const bool two_atoms = command != Subcommand::CpConsistency;
  require_keys(atoms, "config.atoms", two_atoms ? std::set<std::string>{"A", "B"}
                                                : std::set<std::string>{"A"});
  if (!atoms.contains("A")) fail("config.atoms", "missing 'A'");
  cfg.atom_a = parse_atom(atoms.at("A"), "config.atoms.A", true);
  if (two_atoms) {
    if (!atoms.contains("B")) fail("config.atoms", "missing 'B'");
    cfg.atom_b = parse_atom(atoms.at("B"), "config.atoms.B", true);
  }

  if (root.contains("separation_direction")) {
    const Vec3 d = vec3(root.at("separation_direction"), "config.separation_direction");
    if (!(d.norm() > 0.0)) fail("config.separation_direction", "must be nonzero");
    cfg.direction = d.normalized();
  }
  if (root.contains("environment"))
    cfg.environment = parse_environment(root.at("environment"), "config.environment");
  if (root.contains("quadrature"))
    cfg.quadrature = parse_quadrature(root.at("quadrature"), "config.quadrature");
  if (root.contains("output")) {
    const json& out = root.at("output");
    require_keys(out, "config.output", {"csv", "svg"});
    if (out.contains("csv")) {
      if (!out.at("csv").is_string()) fail("config.output.csv", "expected a file name");
      cfg.output.csv = out.at("csv").get<std::string>();
      const std::filesystem::path p(cfg.output.csv);
      if (cfg.output.csv.empty() || p.has_parent_path() || p.filename() != p)
        fail("config.output.csv", "must be a plain file name");
    }
    if (out.contains("svg")) {
      if (!out.at("svg").is_boolean()) fail("config.output.svg", "expected true or false");
      cfg.output.svg = out.at("svg").get<bool>();
    }
  }

  if (root.contains("distance_grid"))
    cfg.distance_grid = parse_grid(root.at("distance_grid"), "config.distance_grid", "distance",
                                   {{"_m", 1.0}, {"_nm", si::nm}});
  cfg.distance = one_of<double>(root, "config", distance_keys, read_scalar, false);
  if (root.contains("time_grid"))
    cfg.time_grid = parse_grid(root.at("time_grid"), "config.time_grid", "time", {{"_s", 1.0}});
  cfg.time = one_of<double>(root, "config", time_keys, read_scalar, false);

  if (cfg.distance_grid && cfg.time_grid)
    fail("config", "give either a distance grid or a time grid, not both");
  switch (command) {
    case Subcommand::ForceVsDistance:
      if (!cfg.distance_grid) fail("config", "force-vs-distance needs 'distance_grid'");
      if (cfg.distance) fail("config", "force-vs-distance takes no fixed distance");
      if (!(cfg.distance_grid->min > 0.0)) fail("config.distance_grid", "distances must be positive");
      break;
    case Subcommand::ForceVsTime:
      if (!cfg.time_grid) fail("config", "force-vs-time needs 'time_grid'");
      if (cfg.time) fail("config", "force-vs-time takes no fixed 'time_s'");
      if (!cfg.distance) fail("config", "force-vs-time needs a fixed distance");
      if (!(*cfg.distance > 0.0)) fail("config", "distance must be positive");
      break;
    case Subcommand::CpConsistency:
      if (!std::holds_alternative<DiluteBody>(cfg.environment))
        fail("config.environment", "cp-consistency needs a dilute_body environment");
      if (cfg.distance_grid || cfg.distance)
        fail("config", "cp-consistency uses the atom position, not a distance");
      break;
    case Subcommand::KernelCheck: break;
  }
  if (cfg.time && *cfg.time < 0.0) fail("config.time_s", "must be nonnegative");
  if (cfg.time_grid && cfg.time_grid->min < 0.0) fail("config.time_grid", "times must be nonnegative");
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path, Subcommand command) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open configuration file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), command);
}

}  // namespace vdw
