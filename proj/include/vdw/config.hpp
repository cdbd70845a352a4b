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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vdw/atomic.hpp"
#include "vdw/green.hpp"
#include "vdw/quadrature.hpp"

namespace vdw {

enum class Subcommand { ForceVsDistance, ForceVsTime, CpConsistency, KernelCheck };

std::string to_string(Subcommand cmd);

struct Grid {
  enum class Spacing { Linear, Log };
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  Spacing spacing = Spacing::Linear;

  /// Grid points, strictly increasing. Throws ValidationError otherwise.
  std::vector<double> values() const;
};

struct AtomConfig {
  AtomicSpecies species;
  PopulationState initial;
};

struct OutputConfig {
  std::string csv = "scan.csv";
  bool svg = false;
};

/// A validated scan description. Physical quantities are SI.
struct ScenarioConfig {
  Subcommand command = Subcommand::ForceVsDistance;
  AtomConfig atom_a;
  std::optional<AtomConfig> atom_b;  // absent for cp-consistency
  Vec3 direction = Vec3::UnitZ();    // B sits at r_A + r * direction
  Environment environment = FreeSpace{};
  std::optional<Grid> distance_grid;
  std::optional<double> distance;
  std::optional<Grid> time_grid;
  std::optional<double> time;
  QuadratureSpec quadrature;
  OutputConfig output;

  /// Scan abscissa for this command: distances (m) or times (s).
  std::vector<double> scan_values() const;
};

/// Parses a JSON configuration. Every key carries its unit in the name
/// (energy_eV, dipole_Cm, distance_nm, ...); unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& json_text, Subcommand command);
ScenarioConfig load_scenario(const std::filesystem::path& path, Subcommand command);

}  // namespace vdw
