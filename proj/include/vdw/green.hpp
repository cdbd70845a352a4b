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
#include <variant>
#include <vector>

#include "vdw/atomic.hpp"
#include "vdw/core.hpp"

namespace vdw {

/// Value of the dyadic Green tensor G(r, r', w) (1/m) together with its
/// derivatives with respect to both position arguments (1/m^2).
///
/// Convention: the field of a point dipole d at r' is E(r) = mu0 w^2 G(r, r', w) d.
struct GreenSample {
  CMat3 value = CMat3::Zero();
  TensorGradient gradient{CMat3::Zero(), CMat3::Zero(), CMat3::Zero()};         // d/dr
  TensorGradient source_gradient{CMat3::Zero(), CMat3::Zero(), CMat3::Zero()};  // d/dr'

  GreenSample& operator+=(const GreenSample& other);
  GreenSample& operator*=(Complex factor);
};

struct FreeSpace {};

/// A dilute body discretised into weighted points of polarizable atoms.
/// weight = eta(r) dV at the point (a dimensionless atom count).
struct DiluteBody {
  struct Species {
    AtomicSpecies species;
    PopulationState initial;
  };
  struct Point {
    Vec3 position;
    double weight = 1.0;
    std::size_t species = 0;
  };

  std::vector<Species> species;
  std::vector<Point> points;

  /// Throws ValidationError on nonpositive weights, bad species indices or
  /// mismatched populations.
  void validate() const;

  /// Rectangular lattice of counts[0] x counts[1] x counts[2] points with the
  /// given spacing, starting at origin, all of species 0.
  static DiluteBody lattice(Species species, const Vec3& origin,
                            const std::array<std::size_t, 3>& counts, double spacing,
                            double weight);

  DiluteBody scaled(double factor) const;
};

using Environment = std::variant<FreeSpace, DiluteBody>;

inline constexpr double kCoincidenceTolerance = 1e-15;  // m

/// Free-space dyadic Green tensor and its analytic gradients.
///   G0 = e^{ix}/(4 pi rho) [(1 + i/x - 1/x^2) I - (1 + 3i/x - 3/x^2) e e],
/// x = w rho / c. |x| < 1 is evaluated from the Laurent series.
/// Throws GeometryError if r == r', ValidationError if w == 0.
GreenSample free_space_green(const Vec3& r, const Vec3& r_prime, Complex omega);

/// Leading Born term of the scattering tensor
///   G1(r, r', w) = mu0 w^2 sum_b weight_b G0(r, r_b) alpha_b(w) G0(r_b, r'),
/// with body populations evolved to time t.
GreenSample born_scattering_green(const DiluteBody& body, const Vec3& r, const Vec3& r_prime,
                                  Complex omega, double t);

/// Polarizability of every body species at (omega, t), in species order.
std::vector<CMat3> body_polarizabilities(const DiluteBody& body, Complex omega, double t);

/// Born sum with precomputed body polarizabilities.
GreenSample born_scattering_green(const DiluteBody& body, const std::vector<CMat3>& alphas,
                                  const Vec3& r, const Vec3& r_prime, Complex omega);

/// Total tensor G0 + G1 for the environment.
GreenSample green(const Environment& env, const Vec3& r, const Vec3& r_prime, Complex omega,
                  double t);

/// Throws GeometryError if p coincides with any body point.
void require_outside_body(const Environment& env, const Vec3& p);
void require_outside_body(const DiluteBody& body, const Vec3& p);

}  // namespace vdw
