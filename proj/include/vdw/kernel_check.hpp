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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vdw/kernels.hpp"

namespace vdw::kernels {

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  double tolerance = 1e-12;
  double zero_width_tolerance = 1e-5;
};

struct CheckRow {
  std::string name;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Random parameter sets: w_kn in [1e14, 1e16] rad/s, w_kn / w_pl log-uniform
/// in [1e-3, 1e3], widths log-uniform in [1e-6, 1e-2] of the own frequency,
/// eps = 0. w, w' real in [0, 3 scale], or complex when `complex_frequencies`.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}
  KernelParams next(bool complex_frequencies);
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 rng_;
};

/// Direct sum_i 1/D_i + c.c. from the tabulated denominators.
Complex direct_denominator_sum(const KernelParams& p);

/// Right-hand sides of the grouped partial-fraction identities, keyed by the
/// denominator indices (1-based) they combine.
struct PartialIdentity {
  std::string name;
  std::vector<int> indices;
  Complex (*rhs)(const KernelParams&);
};
const std::vector<PartialIdentity>& partial_identities();

/// Deviations are relative to the conditioning scale of the compared sum
/// (sum of magnitudes of its terms). The result-relative maximum of the
/// combined sum is reported as an extra, informational row.
std::vector<CheckRow> run_checks(const CheckOptions& options);

}  // namespace vdw::kernels
