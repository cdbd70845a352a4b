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
#include <vector>

#include "vdw/atomic.hpp"
#include "vdw/green.hpp"
#include "vdw/quadrature.hpp"

namespace vdw {

enum class Role { A, B };

inline Role other(Role r) { return r == Role::A ? Role::B : Role::A; }

/// Resonant force channel on the atom `atom` driven by the downward
/// transition upper -> lower of atom `source`. Oscillating when the source
/// is the atom itself, monotonic when the source is the partner.
struct TransitionContribution {
  enum class Channel { Oscillating, Monotonic };
  Role atom;
  Role source;
  std::size_t upper;
  std::size_t lower;
  Channel channel;
  Vec3 force;  // N
};

struct ResonantForce {
  Vec3 total = Vec3::Zero();
  std::vector<TransitionContribution> contributions;
};

struct NonresonantForce {
  Vec3 force = Vec3::Zero();
  double error = 0.0;  // quadrature error estimate, N
  std::size_t subdivisions = 0;
};

struct ForceBreakdown {
  Vec3 on_A_resonant = Vec3::Zero();
  Vec3 on_A_nonresonant = Vec3::Zero();
  Vec3 on_B_resonant = Vec3::Zero();
  Vec3 on_B_nonresonant = Vec3::Zero();
  std::vector<TransitionContribution> per_transition;
  double time = 0.0;
  double quadrature_error = 0.0;  // larger of the two nonresonant estimates

  Vec3 on_A() const { return on_A_resonant + on_A_nonresonant; }
  Vec3 on_B() const { return on_B_resonant + on_B_nonresonant; }
};

/// How d/dr_A reaches the product G(r_A, r_B) ... G(r_B, r_A).
/// Direct differentiates both factors; Symmetric takes twice the real part
/// of the first-factor derivative, which is equal for reciprocal media.
enum class GradientRule { Direct, Symmetric };

/// Non-resonant (virtual-photon) force on A, zero line-width limit:
///   F = hbar mu0^2 / (2 pi) int_0^inf dxi xi^4 grad_A Tr{alpha_A G(A,B) alpha_B G(B,A)}
/// at imaginary frequency i xi. Body populations are taken at pops_a.time.
NonresonantForce nonresonant_force(const AtomicSpecies& a, const AtomicSpecies& b,
                                   const PopulationState& pops_a, const PopulationState& pops_b,
                                   const Environment& env, const QuadratureSpec& quad = {},
                                   GradientRule rule = GradientRule::Direct);

/// The scalar whose r_A-gradient is nonresonant_force, integrated with the
/// same quadrature. Only used for finite-difference checks.
double nonresonant_contraction(const AtomicSpecies& a, const AtomicSpecies& b,
                               const PopulationState& pops_a, const PopulationState& pops_b,
                               const Environment& env, const QuadratureSpec& quad = {});

/// Resonant (real-photon) force on A: the oscillating channel from A's own
/// downward transitions plus the monotonic channel from B's.
ResonantForce resonant_force(const AtomicSpecies& a, const AtomicSpecies& b,
                             const PopulationState& pops_a, const PopulationState& pops_b,
                             const Environment& env, double t,
                             GradientRule rule = GradientRule::Direct);

/// Only the oscillating channel (A's own downward transitions).
ResonantForce resonant_force_oscillating(const AtomicSpecies& a, const AtomicSpecies& b,
                                         const PopulationState& pops_a,
                                         const PopulationState& pops_b, const Environment& env,
                                         double t, GradientRule rule = GradientRule::Direct);

/// Only the monotonic channel (B's downward transitions).
ResonantForce resonant_force_monotonic(const AtomicSpecies& a, const AtomicSpecies& b,
                                       const PopulationState& pops_a,
                                       const PopulationState& pops_b, const Environment& env,
                                       double t, GradientRule rule = GradientRule::Direct);

/// Scalar whose r_A-gradient is resonant_force (partner polarizability held fixed).
double resonant_contraction(const AtomicSpecies& a, const AtomicSpecies& b,
                            const PopulationState& pops_a, const PopulationState& pops_b,
                            const Environment& env, double t);

/// Closed form of the resonant force on A for isotropic atoms in free space,
/// with x = r w_nk^A / c and y = r w_lp^B / c:
///   -e_r/(12 pi^2 eps0^2 r^7) { sum p_n |d_nk|^2 alpha_B(w_nk)
///        [(9 - 16x^2 + 3x^4) cos 2x + (18x - 8x^3 + x^5) sin 2x]
///      + sum p_l |d_lp|^2 alpha_A(w_lp) (9 + 2y^2 + y^4) }.
/// e_r points from B to A. Throws ValidationError for anisotropic input.
Vec3 closed_form_resonant_free_space(const AtomicSpecies& a, const AtomicSpecies& b,
                                     const PopulationState& pops_a,
                                     const PopulationState& pops_b);

/// Non-retarded two-atom force on A,
///   F = -e_r/(4 pi^2 eps0^2 r^7) sum p_n p_l sum_{k,p} |d_nk|^2 |d_pl|^2 /
///       (E_k - E_n + E_p - E_l).
Vec3 nonretarded_force(const AtomicSpecies& a, const AtomicSpecies& b,
                       const PopulationState& pops_a, const PopulationState& pops_b);

/// Resonant plus non-resonant forces on both atoms at time t, populations
/// evolved from their initial states. The force on B is computed with the
/// roles exchanged, not by negating the force on A.
ForceBreakdown total_force(const AtomicSpecies& a, const PopulationState& initial_a,
                           const AtomicSpecies& b, const PopulationState& initial_b,
                           const Environment& env, double t, const QuadratureSpec& quad = {});

/// Largest dipole-coupled transition frequency of either atom.
double max_transition_frequency(const AtomicSpecies& a, const AtomicSpecies& b);
double min_transition_frequency(const AtomicSpecies& a, const AtomicSpecies& b);

enum class Regime { ShortDistance, LongDistance };
/// Long distance when r > c / w_min.
Regime classify_regime(const AtomicSpecies& a, const AtomicSpecies& b);

}  // namespace vdw
