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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vdw/config.hpp"
#include "vdw/scenario.hpp"

namespace {

// 0 success, 1 a check failed, 2 invalid input, 3 numerical failure.
int run(vdw::Subcommand command, const std::string& config_path, const std::string& out_dir,
        std::size_t workers, const vdw::kernels::CheckOptions& check) {
  try {
    vdw::RunResult result;
    if (command == vdw::Subcommand::KernelCheck) {
      result = vdw::run_kernel_check(check, out_dir);
    } else {
      const vdw::ScenarioConfig config = vdw::load_scenario(config_path, command);
      result = vdw::run_scenario(config, out_dir, workers);
    }
    std::cout << result.summary << '\n';
    return result.pass ? 0 : 1;
  } catch (const vdw::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const vdw::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return 3;
  } catch (const vdw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-dependent van der Waals forces between two atoms"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::size_t workers = 1;
  vdw::kernels::CheckOptions check;

  struct Entry {
    vdw::Subcommand command;
    const char* description;
  };
  const Entry entries[] = {
      {vdw::Subcommand::ForceVsDistance, "Force on both atoms over a distance grid at fixed time"},
      {vdw::Subcommand::ForceVsTime, "Force on both atoms over a time grid at fixed distance"},
      {vdw::Subcommand::CpConsistency,
       "Single-atom Casimir-Polder force against the pairwise sum over a dilute body"},
      {vdw::Subcommand::KernelCheck, "Randomised identity checks of the spectral kernels"},
  };

  vdw::Subcommand selected = vdw::Subcommand::ForceVsDistance;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(vdw::to_string(e.command), e.description);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", check.seed, "Random seed")->capture_default_str();
    if (e.command == vdw::Subcommand::KernelCheck) {
      sub->add_option("--count", check.count, "Random samples per check")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
      sub->add_option("--tolerance", check.tolerance, "Relative tolerance of the identities")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
    } else {
      sub->add_option("--config", config_path, "JSON scenario file")->required()->check(
          CLI::ExistingFile);
      sub->add_option("--workers", workers, "Worker threads over grid points")
          ->capture_default_str()
          ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    }
    sub->callback([&selected, command = e.command] { selected = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(selected, config_path, out_dir, workers, check);
}
