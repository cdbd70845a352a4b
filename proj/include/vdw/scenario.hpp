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
#include <string>
#include <vector>

#include "vdw/config.hpp"
#include "vdw/kernel_check.hpp"

namespace vdw {

/// Numeric table with a fixed header; rows are in scan order.
struct ScanTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  double max_quadrature_error = 0.0;  // N
};

/// Force on both atoms along the scan. Free-space scans report components
/// along the outward separation direction of each atom (positive repulsive);
/// scans in a body report full Cartesian components.
ScanTable run_force_scan(const ScenarioConfig& config, std::size_t workers = 1);

/// Single-atom resonant Casimir-Polder force against the pairwise sum over
/// the body points, at each scan time.
ScanTable run_cp_consistency(const ScenarioConfig& config, std::size_t workers = 1);

std::string format_csv(const ScanTable& table);
std::string format_csv(const std::vector<kernels::CheckRow>& rows);

/// Line plot of every force column against column `x_column`, with a
/// signed logarithmic force axis.
std::string render_svg(const ScanTable& table, std::size_t x_column, bool log_x,
                       const std::string& title);

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
  bool pass = true;
};

/// Evaluates the scan and writes its CSV (and SVG if requested) into
/// out_dir. Nothing is written unless the whole scan succeeds.
RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                       std::size_t workers = 1);

/// Writes kernel_check.csv into out_dir; pass is false if any check fails.
RunResult run_kernel_check(const kernels::CheckOptions& options,
                           const std::filesystem::path& out_dir);

}  // namespace vdw
