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

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vdw/casimir_polder.hpp"
#include "vdw/force.hpp"

using namespace vdw;
using test::rel_diff_vec;

namespace {

AtomicSpecies medium() {
  return test::isotropic_two_level(test::wavelength_to_omega(650e-9), 1.5e-29);
}

DiluteBody slab(std::array<std::size_t, 3> counts, double spacing) {
  return DiluteBody::lattice({medium(), PopulationState::ground(2)}, Vec3(-50e-9, -50e-9, 0.0),
                             counts, spacing, 0.8);
}

const PopulationState kExcited = PopulationState::pure(2, 1);

}  // namespace

TEST_CASE("an empty body exerts no force") {
  DiluteBody body = slab({1, 1, 1}, 10e-9);
  body.points.clear();
  const AtomicSpecies atom = test::rubidium(Vec3(0, 0, -100e-9));
  CHECK(single_atom_cp_resonant(atom, kExcited, body, 0.0).norm() == 0.0);
  CHECK(pairwise_cp_sum(atom, kExcited, body, 0.0).norm() == 0.0);
}

TEST_CASE("a ground-state atom has no resonant force") {
  const AtomicSpecies atom = test::rubidium(Vec3(0, 0, -100e-9));
  const DiluteBody body = slab({2, 2, 2}, 30e-9);
  CHECK(single_atom_cp_resonant(atom, PopulationState::ground(2), body, 0.0).norm() == 0.0);
}

TEST_CASE("single body atom: Born force equals the two-atom resonant force") {
  DiluteBody body = slab({1, 1, 1}, 10e-9);
  const AtomicSpecies atom = test::rubidium(Vec3(20e-9, -10e-9, -150e-9));
  const Vec3 single = single_atom_cp_resonant(atom, kExcited, body, 0.0);
  const AtomicSpecies partner = body.species[0].species.at(body.points[0].position);
  const Vec3 two_atom =
      body.points[0].weight *
      resonant_force_oscillating(atom, partner, kExcited, PopulationState::ground(2), FreeSpace{}, 0.0)
          .total;
  CHECK(rel_diff_vec(single, two_atom) < 1e-10);
}

TEST_CASE("lattice body: Born force equals the pairwise sum") {
  const DiluteBody body = slab({2, 2, 2}, 40e-9);
  for (const Vec3& pos : {Vec3(0, 0, -80e-9), Vec3(30e-9, 70e-9, -200e-9), Vec3(0, 0, 400e-9)}) {
    const AtomicSpecies atom = test::rubidium(pos);
    const Vec3 single = single_atom_cp_resonant(atom, kExcited, body, 0.0);
    const Vec3 pairwise = pairwise_cp_sum(atom, kExcited, body, 0.0);
    CHECK(rel_diff_vec(single, pairwise) < 1e-10);
    CHECK(pairwise_cp_sum(atom, kExcited, body, 0.0, 4) == pairwise);
    // Off-axis position: the force is not along any lattice axis.
    CHECK(single.norm() > 0.0);
  }
}

TEST_CASE("force is linear in the body density") {
  const DiluteBody body = slab({2, 2, 1}, 40e-9);
  const AtomicSpecies atom = test::rubidium(Vec3(10e-9, 0, -120e-9));
  const Vec3 f = single_atom_cp_resonant(atom, kExcited, body, 0.0);
  const Vec3 f2 = single_atom_cp_resonant(atom, kExcited, body.scaled(2.0), 0.0);
  CHECK(rel_diff_vec(f2, Vec3(2.0 * f)) < 1e-13);
}

TEST_CASE("ground-state body atoms give no monotonic channel") {
  const DiluteBody body = slab({2, 2, 2}, 40e-9);
  const AtomicSpecies atom = test::rubidium(Vec3(0, 0, -100e-9));
  CHECK(pairwise_cp_monotonic(atom, kExcited, body, 0.0).norm() == 0.0);
}

TEST_CASE("resonant Casimir-Polder force decays with the excited population") {
  const DiluteBody body = slab({2, 2, 2}, 40e-9);
  const AtomicSpecies atom = test::rubidium(Vec3(0, 0, -100e-9));
  const double gamma = atom.total_rate(1);
  const Vec3 f0 = single_atom_cp_resonant(atom, kExcited, body, 0.0);
  for (double gt : {0.5, 3.0}) {
    const PopulationState p = evolve_populations(atom, kExcited, gt / gamma);
    const Vec3 f = single_atom_cp_resonant(atom, p, body, gt / gamma);
    CHECK(rel_diff_vec(f, Vec3(f0 * std::exp(-gt))) < 1e-12);
  }
}

TEST_CASE("an atom inside the body is rejected") {
  const DiluteBody body = slab({2, 2, 2}, 40e-9);
  const AtomicSpecies atom = test::rubidium(body.points[3].position);
  CHECK_THROWS_AS(single_atom_cp_resonant(atom, kExcited, body, 0.0), GeometryError);
  CHECK_THROWS_AS(pairwise_cp_sum(atom, kExcited, body, 0.0), GeometryError);
}
