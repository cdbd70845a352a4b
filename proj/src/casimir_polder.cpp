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

#include "vdw/casimir_polder.hpp"

#include <cmath>
#include <vector>

#include "vdw/force.hpp"
#include "vdw/parallel.hpp"

namespace vdw {

namespace {

void check_atom(const AtomicSpecies& atom, const PopulationState& pops, const DiluteBody& body) {
  validate_populations(atom, pops);
  body.validate();
  require_outside_body(body, atom.position());
}

}  // namespace

Vec3 single_atom_cp_resonant(const AtomicSpecies& atom, const PopulationState& pops,
                             const DiluteBody& body, double t) {
  check_atom(atom, pops, body);
  Vec3 force = Vec3::Zero();
  if (body.points.empty()) return force;
  for (const auto& tr : atom.transitions()) {
    const double p = pops[tr.upper];
    if (p == 0.0) continue;
    const double w = atom.frequency(tr.upper, tr.lower);
    const GreenSample g1 =
        born_scattering_green(body, atom.position(), atom.position(), Complex(w, 0.0), t);
    const CMat3 d = atom.dyadic(tr.upper, tr.lower).cast<Complex>();
    for (int l = 0; l < 3; ++l) {
      const Complex first = (d * g1.gradient[l]).trace();
      const Complex mirror = (d * g1.gradient[l].transpose()).trace();
      force[l] += si::mu0 * p * w * w * (first + mirror).real();
    }
  }
  return force;
}

Vec3 pairwise_cp_sum(const AtomicSpecies& atom, const PopulationState& pops,
                     const DiluteBody& body, double t, std::size_t workers) {
  check_atom(atom, pops, body);
  std::vector<PopulationState> body_pops;
  for (const auto& sp : body.species)
    body_pops.push_back(evolve_populations(sp.species, sp.initial, t));

  std::vector<Vec3> per_point(body.points.size(), Vec3::Zero());
  const Environment free_space = FreeSpace{};
  parallel_for(body.points.size(), workers, [&](std::size_t i) {
    const auto& point = body.points[i];
    const AtomicSpecies partner = body.species[point.species].species.at(point.position);
    per_point[i] = point.weight * resonant_force_oscillating(atom, partner, pops,
                                                             body_pops[point.species], free_space, t)
                                      .total;
  });
  Vec3 total = Vec3::Zero();
  for (const auto& f : per_point) total += f;
  return total;
}

Vec3 pairwise_cp_monotonic(const AtomicSpecies& atom, const PopulationState& pops,
                           const DiluteBody& body, double t) {
  check_atom(atom, pops, body);
  Vec3 total = Vec3::Zero();
  const Environment free_space = FreeSpace{};
  for (const auto& point : body.points) {
    const auto& sp = body.species[point.species];
    const AtomicSpecies partner = sp.species.at(point.position);
    total += point.weight * resonant_force_monotonic(atom, partner, pops,
                                                     evolve_populations(sp.species, sp.initial, t),
                                                     free_space, t)
                                .total;
  }
  return total;
}

}  // namespace vdw
