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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vdw/atomic.hpp"

namespace vdw::test {

inline double wavelength_to_omega(double lambda) { return 2.0 * si::pi * si::c / lambda; }

// Rubidium and caesium D1 lines as isotropic two-level atoms.
inline constexpr double kRbLambda = 794.979e-9;
inline constexpr double kRbDipole = 2.5377e-29;
inline constexpr double kCsLambda = 894.59e-9;
inline constexpr double kCsDipole = 2.698e-29;

inline AtomicSpecies two_level(double omega, std::vector<Vec3> channels,
                               const Vec3& position = Vec3::Zero(),
                               std::optional<double> rate = std::nullopt) {
  LevelSchemeRecord r;
  r.levels = {{"g", 0.0}, {"e", si::hbar * omega}};
  r.dipoles = {{"e", "g", std::move(channels)}};
  if (rate) r.rates = {{"e", "g", *rate}};
  r.position = position;
  return load_species(r);
}

inline AtomicSpecies isotropic_two_level(double omega, double dipole,
                                         const Vec3& position = Vec3::Zero(),
                                         std::optional<double> rate = std::nullopt) {
  return two_level(omega, isotropic_channels(dipole), position, rate);
}

inline AtomicSpecies rubidium(const Vec3& position = Vec3::Zero()) {
  return isotropic_two_level(wavelength_to_omega(kRbLambda), kRbDipole, position);
}

inline AtomicSpecies caesium(const Vec3& position = Vec3::Zero()) {
  return isotropic_two_level(wavelength_to_omega(kCsLambda), kCsDipole, position);
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

template <typename V>
double rel_diff_vec(const V& a, const V& b) {
  const double s = std::max(a.norm(), b.norm());
  return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

}  // namespace vdw::test
