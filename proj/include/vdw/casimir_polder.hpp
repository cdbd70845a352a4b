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

#include "vdw/atomic.hpp"
#include "vdw/green.hpp"

namespace vdw {

/// Resonant Casimir-Polder force on an excited atom near a dilute body,
///   F = mu0 sum p_n sum_{k<n} w_nk^2 grad_A Re{d_nk . G1(r_A, r_A, w_nk) . d_kn},
/// with G1 the leading Born scattering tensor. Both slots of G1 move with
/// the atom: the first-slot gradient plus its reciprocity mirror.
Vec3 single_atom_cp_resonant(const AtomicSpecies& atom, const PopulationState& pops,
                             const DiluteBody& body, double t);

/// Sum over body points of weight x (oscillating two-atom resonant force on
/// the atom from a body atom at that point), in free space.
/// `workers` > 1 evaluates points concurrently; the reduction order is fixed.
Vec3 pairwise_cp_sum(const AtomicSpecies& atom, const PopulationState& pops,
                     const DiluteBody& body, double t, std::size_t workers = 1);

/// Monotonic channel of the same pairwise sum; identically zero for a body
/// of ground-state atoms.
Vec3 pairwise_cp_monotonic(const AtomicSpecies& atom, const PopulationState& pops,
                           const DiluteBody& body, double t);

}  // namespace vdw
