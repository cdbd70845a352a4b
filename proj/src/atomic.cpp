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

#include "vdw/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace vdw {

namespace {

bool all_finite(const Vec3& v) { return v.allFinite(); }

bool channels_equal(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(a[i].cwiseAbs().maxCoeff(), b[i].cwiseAbs().maxCoeff());
    if ((a[i] - b[i]).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace

std::vector<Vec3> isotropic_channels(double magnitude) {
  const double component = magnitude / std::sqrt(3.0);
  return {Vec3(component, 0.0, 0.0), Vec3(0.0, component, 0.0), Vec3(0.0, 0.0, component)};
}

std::optional<std::size_t> AtomicSpecies::find_level(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

double AtomicSpecies::frequency(std::size_t m, std::size_t n) const {
  return (energies_.at(m) - energies_.at(n)) / si::hbar;
}

bool AtomicSpecies::coupled(std::size_t m, std::size_t n) const {
  return !dyadic(m, n).isZero(0.0);
}

double AtomicSpecies::total_rate(std::size_t n) const {
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += partial_rate(n, k);
  return total;
}

bool AtomicSpecies::is_isotropic(double rel_tol) const {
  for (const auto& t : transitions_) {
    const Mat3& d = dyadic(t.upper, t.lower);
    const Mat3 iso = Mat3::Identity() * (d.trace() / 3.0);
    if ((d - iso).cwiseAbs().maxCoeff() > rel_tol * std::abs(d.trace())) return false;
  }
  return true;
}

AtomicSpecies AtomicSpecies::at(const Vec3& position) const {
  AtomicSpecies moved = *this;
  moved.position_ = position;
  return moved;
}

PopulationState PopulationState::pure(std::size_t level_count, std::size_t level, double time) {
  if (level >= level_count) throw ValidationError("population level index out of range");
  PopulationState state;
  state.probabilities.assign(level_count, 0.0);
  state.probabilities[level] = 1.0;
  state.time = time;
  return state;
}

void validate_populations(const AtomicSpecies& species, const PopulationState& pops) {
  if (pops.size() != species.level_count())
    throw ValidationError("population vector has " + std::to_string(pops.size()) +
                          " entries, species has " + std::to_string(species.level_count()) +
                          " levels");
  double sum = 0.0;
  for (double p : pops.probabilities) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw ValidationError("population outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("populations do not sum to one");
  if (!std::isfinite(pops.time)) throw ValidationError("population time is not finite");
}

double free_space_decay_rate(double omega, const Mat3& dyadic) {
  if (!(omega > 0.0)) throw ValidationError("decay rate requires a positive transition frequency");
  return std::pow(omega, 3) * dyadic.trace() /
         (3.0 * si::pi * si::epsilon0 * si::hbar * std::pow(si::c, 3));
}

double free_space_decay_rate(double omega, const Vec3& dipole) {
  return free_space_decay_rate(omega, Mat3(dipole * dipole.transpose()));
}

AtomicSpecies load_species(const LevelSchemeRecord& record) {
  if (record.levels.empty()) throw ValidationError("level scheme has no levels");
  if (!all_finite(record.position)) throw ValidationError("atom position is not finite");

  AtomicSpecies s;
  const std::size_t n = record.levels.size();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& level = record.levels[i];
    if (level.label.empty()) throw ValidationError("empty level label");
    if (!seen.insert(level.label).second)
      throw ValidationError("duplicate level label '" + level.label + "'");
    if (!std::isfinite(level.energy))
      throw ValidationError("energy of level '" + level.label + "' is not finite");
    if (i > 0 && !(level.energy > record.levels[i - 1].energy))
      throw ValidationError("level energies must be strictly increasing ('" + level.label + "')");
    s.labels_.push_back(level.label);
    s.energies_.push_back(level.energy);
  }
  s.position_ = record.position;

  auto lookup = [&](const std::string& label) {
    auto idx = s.find_level(label);
    if (!idx) throw ValidationError("unknown level label '" + label + "'");
    return *idx;
  };

  // Collect the supplied direction of every pair first; mirror afterwards.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec3>> given;
  for (const auto& dip : record.dipoles) {
    const std::size_t from = lookup(dip.from);
    const std::size_t to = lookup(dip.to);
    for (const auto& ch : dip.channels)
      if (!all_finite(ch)) throw ValidationError("non-finite dipole component");
    if (from == to) {
      for (const auto& ch : dip.channels)
        if (!ch.isZero(0.0))
          throw ValidationError("diagonal dipole d_nn must vanish ('" + dip.from + "')");
      continue;
    }
    if (!given.emplace(std::make_pair(from, to), dip.channels).second)
      throw ValidationError("duplicate dipole entry " + dip.from + " -> " + dip.to);
  }

  s.channels_.assign(n * n, {});
  s.dyadics_.assign(n * n, Mat3::Zero());
  s.rates_.assign(n * n, 0.0);
  for (const auto& [key, channels] : given) {
    auto mirror = given.find({key.second, key.first});
    if (mirror != given.end() && !channels_equal(channels, mirror->second))
      throw ValidationError("dipole map is not symmetric between '" + s.labels_[key.first] +
                            "' and '" + s.labels_[key.second] + "'");
    Mat3 dyadic = Mat3::Zero();
    for (const auto& ch : channels) dyadic += ch * ch.transpose();
    for (auto [a, b] : {key, std::make_pair(key.second, key.first)}) {
      s.channels_[s.index(a, b)] = channels;
      s.dyadics_[s.index(a, b)] = dyadic;
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> explicit_rates;
  for (const auto& r : record.rates) {
    const std::size_t upper = lookup(r.upper);
    const std::size_t lower = lookup(r.lower);
    if (!(upper > lower))
      throw ValidationError("rate entry " + r.upper + " -> " + r.lower + " is not downward");
    if (!std::isfinite(r.rate) || r.rate < 0.0)
      throw ValidationError("negative or non-finite rate " + r.upper + " -> " + r.lower);
    if (!explicit_rates.insert({upper, lower}).second)
      throw ValidationError("duplicate rate entry " + r.upper + " -> " + r.lower);
    s.rates_[s.index(upper, lower)] = r.rate;
  }

  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < m; ++k) {
      if (!s.coupled(m, k)) continue;
      s.transitions_.push_back({m, k});
      if (!explicit_rates.contains({m, k}))
        s.rates_[s.index(m, k)] = free_space_decay_rate(s.frequency(m, k), s.dyadic(m, k));
    }
  }
  return s;
}

namespace {

// p(tau) = sum over rate groups of poly_g(tau) * exp(-rate_g * tau).
using Polynomial = std::vector<double>;
using ExpPolySum = std::map<std::size_t, Polynomial>;

void add_into(Polynomial& target, const Polynomial& source, double scale) {
  if (target.size() < source.size()) target.resize(source.size(), 0.0);
  for (std::size_t j = 0; j < source.size(); ++j) target[j] += scale * source[j];
}

double eval(const Polynomial& poly, double tau) {
  double value = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) value = value * tau + *it;
  return value;
}

Polynomial derivative(const Polynomial& poly) {
  if (poly.size() <= 1) return {};
  Polynomial d(poly.size() - 1);
  for (std::size_t j = 1; j < poly.size(); ++j) d[j - 1] = static_cast<double>(j) * poly[j];
  return d;
}

}  // namespace

PopulationState evolve_populations(const AtomicSpecies& species, const PopulationState& initial,
                                   double t) {
  validate_populations(species, initial);
  if (!std::isfinite(t) || t < initial.time)
    throw ValidationError("cannot evolve populations backwards in time");
  const double tau = t - initial.time;
  if (tau == 0.0) return PopulationState{initial.probabilities, t};

  const std::size_t n_levels = species.level_count();

  // Rates closer than 1e-9 relative share a group and hence one exponential;
  // a source term in the same group as its receiver produces secular t^k terms.
  std::vector<double> group_rate;
  std::vector<std::size_t> group_of(n_levels);
  for (std::size_t n = n_levels; n-- > 0;) {
    const double rate = species.total_rate(n);
    std::size_t g = 0;
    for (; g < group_rate.size(); ++g) {
      const double other = group_rate[g];
      if (std::abs(other - rate) <= 1e-9 * std::max(other, rate)) break;
    }
    if (g == group_rate.size()) group_rate.push_back(rate);
    group_of[n] = g;
  }

  std::vector<ExpPolySum> solution(n_levels);
  for (std::size_t n = n_levels; n-- > 0;) {
    ExpPolySum source;
    for (std::size_t m = n + 1; m < n_levels; ++m) {
      const double feed = species.partial_rate(m, n);
      if (feed == 0.0) continue;
      for (const auto& [g, poly] : solution[m]) add_into(source[g], poly, feed);
    }

    const std::size_t own = group_of[n];
    const double own_rate = group_rate[own];
    ExpPolySum& p = solution[n];
    double particular_at_zero = 0.0;
    for (const auto& [g, poly] : source) {
      Polynomial q;
      if (g == own) {
        q.assign(poly.size() + 1, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) q[j + 1] = poly[j] / static_cast<double>(j + 1);
      } else {
        // Q' + delta Q = P  =>  Q = sum_j (-1)^j P^(j) / delta^(j+1)
        const double delta = own_rate - group_rate[g];
        q.assign(poly.size(), 0.0);
        Polynomial dj = poly;
        double sign_over = 1.0 / delta;
        while (!dj.empty()) {
          add_into(q, dj, sign_over);
          dj = derivative(dj);
          sign_over *= -1.0 / delta;
        }
      }
      particular_at_zero += q.empty() ? 0.0 : q[0];
      add_into(p[g], q, 1.0);
    }
    add_into(p[own], Polynomial{initial.probabilities[n] - particular_at_zero}, 1.0);
  }

  PopulationState out;
  out.time = t;
  out.probabilities.resize(n_levels);
  for (std::size_t n = 0; n < n_levels; ++n) {
    double value = 0.0;
    for (const auto& [g, poly] : solution[n]) value += eval(poly, tau) * std::exp(-group_rate[g] * tau);
    out.probabilities[n] = std::clamp(value, 0.0, 1.0);
  }
  return out;
}

CMat3 polarizability(const AtomicSpecies& species, const PopulationState& pops, Complex omega,
                     double pole_tolerance) {
  validate_populations(species, pops);
  const bool real_axis = omega.imag() == 0.0;
  CMat3 alpha = CMat3::Zero();
  for (std::size_t n = 0; n < species.level_count(); ++n) {
    const double p = pops[n];
    if (p == 0.0) continue;
    for (std::size_t k = 0; k < species.level_count(); ++k) {
      if (k == n || !species.coupled(k, n)) continue;
      const double w_kn = species.frequency(k, n);
      if (real_axis && std::abs(std::abs(omega.real()) - std::abs(w_kn)) <=
                           pole_tolerance * std::abs(w_kn))
        throw PoleProximityError("polarizability evaluated at a transition frequency (" +
                                 species.label(n) + " <-> " + species.label(k) + ")");
      const Complex weight = p * (1.0 / (w_kn + omega) + 1.0 / (w_kn - omega));
      alpha += weight * species.dyadic(k, n).cast<Complex>();
    }
  }
  return alpha / si::hbar;
}

}  // namespace vdw
