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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vdw/core.hpp"

namespace vdw {

/// Raw level-scheme description in SI units, as handed to load_species.
///
/// Dipoles are given per ordered pair (from, to). A missing mirror entry is
/// filled from the given one; if both are present they must agree. Each
/// entry is a list of channels: one vector for an ordinary transition, or
/// several for a transition between degenerate sublevel manifolds (three
/// orthogonal equal channels model an isotropic atom).
struct LevelSchemeRecord {
  struct Level {
    std::string label;
    double energy = 0.0;  // J
  };
  struct Dipole {
    std::string from;
    std::string to;
    std::vector<Vec3> channels;  // C m
  };
  struct Rate {
    std::string upper;
    std::string lower;
    double rate = 0.0;  // 1/s
  };

  std::vector<Level> levels;
  std::vector<Dipole> dipoles;
  std::vector<Rate> rates;
  Vec3 position = Vec3::Zero();  // m
};

/// Channels for an isotropic transition of total strength |d|.
std::vector<Vec3> isotropic_channels(double magnitude);

/// A validated atomic level scheme: energies, dipole couplings, partial
/// decay rates and the position of the atom.
class AtomicSpecies {
 public:
  struct Transition {
    std::size_t upper;
    std::size_t lower;
  };

  std::size_t level_count() const { return labels_.size(); }
  const std::string& label(std::size_t n) const { return labels_.at(n); }
  std::optional<std::size_t> find_level(const std::string& label) const;
  double energy(std::size_t n) const { return energies_.at(n); }

  /// (E_m - E_n) / hbar in rad/s.
  double frequency(std::size_t m, std::size_t n) const;

  /// Sum of d d^T over the channels of (m, n); zero when uncoupled.
  const Mat3& dyadic(std::size_t m, std::size_t n) const { return dyadics_.at(index(m, n)); }
  std::span<const Vec3> channels(std::size_t m, std::size_t n) const {
    return channels_.at(index(m, n));
  }
  bool coupled(std::size_t m, std::size_t n) const;

  /// |d_mn|^2 summed over channels.
  double dipole_strength(std::size_t m, std::size_t n) const { return dyadic(m, n).trace(); }

  /// Gamma_{m -> n} for m > n, zero otherwise.
  double partial_rate(std::size_t m, std::size_t n) const { return rates_.at(index(m, n)); }
  /// Gamma_n = sum_{k<n} Gamma_{n -> k}.
  double total_rate(std::size_t n) const;

  /// Dipole-coupled pairs with upper > lower, ordered by (upper, lower).
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// True when every transition dyadic is proportional to the identity.
  bool is_isotropic(double rel_tol = 1e-12) const;

  const Vec3& position() const { return position_; }
  AtomicSpecies at(const Vec3& position) const;

 private:
  friend AtomicSpecies load_species(const LevelSchemeRecord& record);

  std::size_t index(std::size_t m, std::size_t n) const { return m * labels_.size() + n; }

  std::vector<std::string> labels_;
  std::vector<double> energies_;
  std::vector<std::vector<Vec3>> channels_;
  std::vector<Mat3> dyadics_;
  std::vector<double> rates_;
  std::vector<Transition> transitions_;
  Vec3 position_ = Vec3::Zero();
};

/// Incoherent level occupations at time t.
struct PopulationState {
  std::vector<double> probabilities;
  double time = 0.0;  // s

  /// All population in level `level`.
  static PopulationState pure(std::size_t level_count, std::size_t level, double time = 0.0);
  static PopulationState ground(std::size_t level_count, double time = 0.0) {
    return pure(level_count, 0, time);
  }

  double operator[](std::size_t n) const { return probabilities.at(n); }
  std::size_t size() const { return probabilities.size(); }
};

/// Throws ValidationError unless pops matches the species and is a
/// normalised probability vector.
void validate_populations(const AtomicSpecies& species, const PopulationState& pops);

/// Validates a record and builds the species. Downward dipole-coupled
/// transitions without an explicit rate get the free-space rate.
AtomicSpecies load_species(const LevelSchemeRecord& record);

/// Spontaneous emission rate in free space, omega^3 |d|^2 / (3 pi eps0 hbar c^3).
double free_space_decay_rate(double omega, const Vec3& dipole);
/// Same, for a multi-channel transition with total strength trace(dyadic).
double free_space_decay_rate(double omega, const Mat3& dyadic);

/// Exact solution of the downward rate-equation cascade
///   dp_n/dt = -Gamma_n p_n + sum_{m>n} Gamma_{m->n} p_m
/// from initial.time to t.
PopulationState evolve_populations(const AtomicSpecies& species, const PopulationState& initial,
                                   double t);

inline constexpr double kDefaultPoleTolerance = 1e-6;

/// State-resolved polarizability tensor (C^2 m^2 / J)
///   alpha(w) = 1/hbar sum_n p_n sum_k D_kn [1/(w_kn + w) + 1/(w_kn - w)].
/// For real w, throws PoleProximityError if |w| lies within
/// pole_tolerance * |w_kn| of a populated transition frequency.
CMat3 polarizability(const AtomicSpecies& species, const PopulationState& pops, Complex omega,
                     double pole_tolerance = kDefaultPoleTolerance);

}  // namespace vdw
