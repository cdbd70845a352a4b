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
#include <functional>

#include "vdw/core.hpp"

namespace vdw {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_floor = 0.0;  // N
  std::size_t max_subdivisions = 4000;
  // Substitution scale for [0, inf). Zero picks max(c/r, w_max).
  double scale = 0.0;  // rad/s

  void validate() const;
};

struct QuadratureResult {
  Vec3 value = Vec3::Zero();
  double error = 0.0;
  std::size_t subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of a vector integrand over
/// [0, inf), after the substitution x = scale * s / (1 - s), s in [0, 1).
/// Stops when error <= max(abs_floor, rel_tol * |value|); throws
/// ConvergenceError carrying the achieved error otherwise.
QuadratureResult integrate_semi_infinite(const std::function<Vec3(double)>& f, double scale,
                                         const QuadratureSpec& spec);

}  // namespace vdw
