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

#include "vdw/force.hpp"

#include <algorithm>
#include <cmath>

namespace vdw {

namespace {

struct PairGreen {
  GreenSample forward;   // G(r_A, r_B)
  GreenSample backward;  // G(r_B, r_A)
};

PairGreen pair_green(const Environment& env, const Vec3& ra, const Vec3& rb, Complex omega,
                     double t) {
  PairGreen g{free_space_green(ra, rb, omega), free_space_green(rb, ra, omega)};
  if (const auto* body = std::get_if<DiluteBody>(&env); body && !body->points.empty()) {
    const auto alphas = body_polarizabilities(*body, omega, t);
    g.forward += born_scattering_green(*body, alphas, ra, rb, omega);
    g.backward += born_scattering_green(*body, alphas, rb, ra, omega);
  }
  return g;
}

using ComplexVec3 = Eigen::Vector3cd;

// d/dr_A Tr(L M R D), where dl and dr are the r_A-derivatives of L and R.
// `left_primary` names the factor that has r_A in its first slot.
ComplexVec3 chain_gradient(const CMat3& l, const TensorGradient& dl, const CMat3& m,
                           const CMat3& r, const TensorGradient& dr, const CMat3& d,
                           GradientRule rule, bool left_primary) {
  ComplexVec3 g;
  const CMat3 mrd = m * r * d;
  const CMat3 dlm = d * l * m;
  for (int k = 0; k < 3; ++k) {
    const Complex left = (dl[k] * mrd).trace();
    const Complex right = (dlm * dr[k]).trace();
    if (rule == GradientRule::Direct)
      g[k] = left + right;
    else
      g[k] = 2.0 * (left_primary ? left : right);
  }
  return g;
}

TensorGradient conj(const TensorGradient& g) {
  return {g[0].conjugate(), g[1].conjugate(), g[2].conjugate()};
}

void require_geometry(const AtomicSpecies& a, const AtomicSpecies& b, const Environment& env) {
  if ((a.position() - b.position()).norm() <= kCoincidenceTolerance)
    throw GeometryError("the two atoms are at the same position");
  require_outside_body(env, a.position());
  require_outside_body(env, b.position());
  if (const auto* body = std::get_if<DiluteBody>(&env)) body->validate();
}

double substitution_scale(const AtomicSpecies& a, const AtomicSpecies& b, const QuadratureSpec& q) {
  if (q.scale > 0.0) return q.scale;
  const double r = (a.position() - b.position()).norm();
  return std::max(si::c / r, max_transition_frequency(a, b));
}

TensorGradient scaled(const TensorGradient& g, double s) { return {s * g[0], s * g[1], s * g[2]}; }

// xi^4 Tr{alpha_A G(A,B) alpha_B G(B,A)} and its r_A-gradient at w = i xi.
struct NonresonantSample {
  double value;
  Vec3 gradient;
};

NonresonantSample nonresonant_sample(const AtomicSpecies& a, const AtomicSpecies& b,
                                     const PopulationState& pops_a, const PopulationState& pops_b,
                                     const Environment& env, double xi, GradientRule rule) {
  const Complex omega(0.0, xi);
  const CMat3 alpha_a = polarizability(a, pops_a, omega);
  const CMat3 alpha_b = polarizability(b, pops_b, omega);
  const PairGreen g = pair_green(env, a.position(), b.position(), omega, pops_a.time);
  const double s = xi * xi;
  const CMat3 l = s * g.forward.value;
  const CMat3 r = s * g.backward.value;
  const ComplexVec3 grad = chain_gradient(l, scaled(g.forward.gradient, s), alpha_b, r,
                                          scaled(g.backward.source_gradient, s), alpha_a, rule,
                                          true);
  return {(l * alpha_b * r * alpha_a).trace().real(), grad.real()};
}

ResonantForce oscillating(const AtomicSpecies& a, const AtomicSpecies& b,
                          const PopulationState& pops_a, const PopulationState& pops_b,
                          const Environment& env, double t, GradientRule rule) {
  ResonantForce out;
  for (const auto& tr : a.transitions()) {
    const double p = pops_a[tr.upper];
    if (p == 0.0) continue;
    const double w = a.frequency(tr.upper, tr.lower);
    const CMat3 alpha_b = polarizability(b, pops_b, Complex(w, 0.0));
    const PairGreen g = pair_green(env, a.position(), b.position(), w, t);
    const ComplexVec3 grad =
        chain_gradient(g.forward.value, g.forward.gradient, alpha_b, g.backward.value,
                       g.backward.source_gradient, a.dyadic(tr.upper, tr.lower).cast<Complex>(),
                       rule, true);
    const Vec3 f = si::mu0 * si::mu0 * p * std::pow(w, 4) * grad.real();
    out.total += f;
    out.contributions.push_back({Role::A, Role::A, tr.upper, tr.lower,
                                 TransitionContribution::Channel::Oscillating, f});
  }
  return out;
}

ResonantForce monotonic(const AtomicSpecies& a, const AtomicSpecies& b,
                        const PopulationState& pops_a, const PopulationState& pops_b,
                        const Environment& env, double t, GradientRule rule) {
  ResonantForce out;
  for (const auto& tr : b.transitions()) {
    const double p = pops_b[tr.upper];
    if (p == 0.0) continue;
    const double w = b.frequency(tr.upper, tr.lower);
    const CMat3 alpha_a = polarizability(a, pops_a, Complex(w, 0.0));
    const PairGreen g = pair_green(env, a.position(), b.position(), w, t);
    // d_lp . G(B,A) . alpha_A . G*(A,B) . d_pl
    const ComplexVec3 grad = chain_gradient(
        g.backward.value, g.backward.source_gradient, alpha_a, g.forward.value.conjugate(),
        conj(g.forward.gradient), b.dyadic(tr.upper, tr.lower).cast<Complex>(), rule, false);
    const Vec3 f = si::mu0 * si::mu0 * p * std::pow(w, 4) * grad.real();
    out.total += f;
    out.contributions.push_back({Role::A, Role::B, tr.upper, tr.lower,
                                 TransitionContribution::Channel::Monotonic, f});
  }
  return out;
}

void validate_pair(const AtomicSpecies& a, const AtomicSpecies& b, const PopulationState& pops_a,
                   const PopulationState& pops_b, const Environment& env) {
  validate_populations(a, pops_a);
  validate_populations(b, pops_b);
  require_geometry(a, b, env);
}

std::vector<TransitionContribution> swap_roles(std::vector<TransitionContribution> items) {
  for (auto& c : items) {
    c.atom = other(c.atom);
    c.source = other(c.source);
  }
  return items;
}

}  // namespace

double max_transition_frequency(const AtomicSpecies& a, const AtomicSpecies& b) {
  double w = 0.0;
  for (const auto* s : {&a, &b})
    for (const auto& tr : s->transitions()) w = std::max(w, s->frequency(tr.upper, tr.lower));
  return w;
}

double min_transition_frequency(const AtomicSpecies& a, const AtomicSpecies& b) {
  double w = 0.0;
  for (const auto* s : {&a, &b})
    for (const auto& tr : s->transitions()) {
      const double f = s->frequency(tr.upper, tr.lower);
      w = (w == 0.0) ? f : std::min(w, f);
    }
  return w;
}

Regime classify_regime(const AtomicSpecies& a, const AtomicSpecies& b) {
  const double w = min_transition_frequency(a, b);
  const double r = (a.position() - b.position()).norm();
  if (w == 0.0) return Regime::ShortDistance;
  return r > si::c / w ? Regime::LongDistance : Regime::ShortDistance;
}

NonresonantForce nonresonant_force(const AtomicSpecies& a, const AtomicSpecies& b,
                                   const PopulationState& pops_a, const PopulationState& pops_b,
                                   const Environment& env, const QuadratureSpec& quad,
                                   GradientRule rule) {
  validate_pair(a, b, pops_a, pops_b, env);
  const auto integrand = [&](double xi) -> Vec3 {
    return nonresonant_sample(a, b, pops_a, pops_b, env, xi, rule).gradient;
  };
  const QuadratureResult q = integrate_semi_infinite(integrand, substitution_scale(a, b, quad), quad);
  const double prefactor = si::hbar * si::mu0 * si::mu0 / (2.0 * si::pi);
  return {prefactor * q.value, prefactor * q.error, q.subdivisions};
}

double nonresonant_contraction(const AtomicSpecies& a, const AtomicSpecies& b,
                               const PopulationState& pops_a, const PopulationState& pops_b,
                               const Environment& env, const QuadratureSpec& quad) {
  validate_pair(a, b, pops_a, pops_b, env);
  const auto integrand = [&](double xi) -> Vec3 {
    return Vec3(nonresonant_sample(a, b, pops_a, pops_b, env, xi, GradientRule::Direct).value, 0.0,
                0.0);
  };
  const QuadratureResult q = integrate_semi_infinite(integrand, substitution_scale(a, b, quad), quad);
  return si::hbar * si::mu0 * si::mu0 / (2.0 * si::pi) * q.value.x();
}

ResonantForce resonant_force_oscillating(const AtomicSpecies& a, const AtomicSpecies& b,
                                         const PopulationState& pops_a,
                                         const PopulationState& pops_b, const Environment& env,
                                         double t, GradientRule rule) {
  validate_pair(a, b, pops_a, pops_b, env);
  return oscillating(a, b, pops_a, pops_b, env, t, rule);
}

ResonantForce resonant_force_monotonic(const AtomicSpecies& a, const AtomicSpecies& b,
                                       const PopulationState& pops_a,
                                       const PopulationState& pops_b, const Environment& env,
                                       double t, GradientRule rule) {
  validate_pair(a, b, pops_a, pops_b, env);
  return monotonic(a, b, pops_a, pops_b, env, t, rule);
}

ResonantForce resonant_force(const AtomicSpecies& a, const AtomicSpecies& b,
                             const PopulationState& pops_a, const PopulationState& pops_b,
                             const Environment& env, double t, GradientRule rule) {
  validate_pair(a, b, pops_a, pops_b, env);
  ResonantForce out = oscillating(a, b, pops_a, pops_b, env, t, rule);
  ResonantForce mono = monotonic(a, b, pops_a, pops_b, env, t, rule);
  out.total += mono.total;
  out.contributions.insert(out.contributions.end(), mono.contributions.begin(),
                           mono.contributions.end());
  return out;
}

double resonant_contraction(const AtomicSpecies& a, const AtomicSpecies& b,
                            const PopulationState& pops_a, const PopulationState& pops_b,
                            const Environment& env, double t) {
  validate_pair(a, b, pops_a, pops_b, env);
  double total = 0.0;
  for (const auto& tr : a.transitions()) {
    const double p = pops_a[tr.upper];
    if (p == 0.0) continue;
    const double w = a.frequency(tr.upper, tr.lower);
    const CMat3 alpha_b = polarizability(b, pops_b, Complex(w, 0.0));
    const PairGreen g = pair_green(env, a.position(), b.position(), w, t);
    const Complex v = (g.forward.value * alpha_b * g.backward.value *
                       a.dyadic(tr.upper, tr.lower).cast<Complex>())
                          .trace();
    total += si::mu0 * si::mu0 * p * std::pow(w, 4) * v.real();
  }
  for (const auto& tr : b.transitions()) {
    const double p = pops_b[tr.upper];
    if (p == 0.0) continue;
    const double w = b.frequency(tr.upper, tr.lower);
    const CMat3 alpha_a = polarizability(a, pops_a, Complex(w, 0.0));
    const PairGreen g = pair_green(env, a.position(), b.position(), w, t);
    const Complex v = (g.backward.value * alpha_a * g.forward.value.conjugate() *
                       b.dyadic(tr.upper, tr.lower).cast<Complex>())
                          .trace();
    total += si::mu0 * si::mu0 * p * std::pow(w, 4) * v.real();
  }
  return total;
}

Vec3 closed_form_resonant_free_space(const AtomicSpecies& a, const AtomicSpecies& b,
                                     const PopulationState& pops_a,
                                     const PopulationState& pops_b) {
  validate_populations(a, pops_a);
  validate_populations(b, pops_b);
  if (!a.is_isotropic() || !b.is_isotropic())
    throw ValidationError("closed-form resonant force requires isotropic atoms");
  const Vec3 sep = a.position() - b.position();
  const double r = sep.norm();
  if (r <= kCoincidenceTolerance) throw GeometryError("the two atoms are at the same position");
  const Vec3 e_r = sep / r;

  double bracket_sum = 0.0;
  for (const auto& tr : a.transitions()) {
    const double p = pops_a[tr.upper];
    if (p == 0.0) continue;
    const double w = a.frequency(tr.upper, tr.lower);
    const double alpha_b = polarizability(b, pops_b, Complex(w, 0.0)).trace().real() / 3.0;
    const double x = r * w / si::c;
    const double x2 = x * x;
    const double osc = (9.0 - 16.0 * x2 + 3.0 * x2 * x2) * std::cos(2.0 * x) +
                       (18.0 * x - 8.0 * x2 * x + x2 * x2 * x) * std::sin(2.0 * x);
    bracket_sum += p * a.dipole_strength(tr.upper, tr.lower) * alpha_b * osc;
  }
  for (const auto& tr : b.transitions()) {
    const double p = pops_b[tr.upper];
    if (p == 0.0) continue;
    const double w = b.frequency(tr.upper, tr.lower);
    const double alpha_a = polarizability(a, pops_a, Complex(w, 0.0)).trace().real() / 3.0;
    const double y2 = std::pow(r * w / si::c, 2);
    bracket_sum += p * b.dipole_strength(tr.upper, tr.lower) * alpha_a * (9.0 + 2.0 * y2 + y2 * y2);
  }
  const double prefactor =
      -1.0 / (12.0 * si::pi * si::pi * si::epsilon0 * si::epsilon0 * std::pow(r, 7));
  return prefactor * bracket_sum * e_r;
}

Vec3 nonretarded_force(const AtomicSpecies& a, const AtomicSpecies& b,
                       const PopulationState& pops_a, const PopulationState& pops_b) {
  validate_populations(a, pops_a);
  validate_populations(b, pops_b);
  const Vec3 sep = a.position() - b.position();
  const double r = sep.norm();
  if (r <= kCoincidenceTolerance) throw GeometryError("the two atoms are at the same position");

  double sum = 0.0;
  for (std::size_t n = 0; n < a.level_count(); ++n) {
    if (pops_a[n] == 0.0) continue;
    for (std::size_t l = 0; l < b.level_count(); ++l) {
      if (pops_b[l] == 0.0) continue;
      for (std::size_t k = 0; k < a.level_count(); ++k) {
        if (k == n || !a.coupled(k, n)) continue;
        const double de_a = a.energy(k) - a.energy(n);
        for (std::size_t p = 0; p < b.level_count(); ++p) {
          if (p == l || !b.coupled(p, l)) continue;
          const double de_b = b.energy(p) - b.energy(l);
          const double denom = de_a + de_b;
          if (std::abs(denom) <= kDefaultPoleTolerance * (std::abs(de_a) + std::abs(de_b)))
            throw PoleProximityError("vanishing energy denominator in the non-retarded force");
          sum += pops_a[n] * pops_b[l] * a.dipole_strength(k, n) * b.dipole_strength(p, l) / denom;
        }
      }
    }
  }
  return -sum / (4.0 * si::pi * si::pi * si::epsilon0 * si::epsilon0 * std::pow(r, 7)) * sep / r;
}

ForceBreakdown total_force(const AtomicSpecies& a, const PopulationState& initial_a,
                           const AtomicSpecies& b, const PopulationState& initial_b,
                           const Environment& env, double t, const QuadratureSpec& quad) {
  const PopulationState pops_a = evolve_populations(a, initial_a, t);
  const PopulationState pops_b = evolve_populations(b, initial_b, t);

  ForceBreakdown out;
  out.time = t;
  const ResonantForce res_a = resonant_force(a, b, pops_a, pops_b, env, t);
  const ResonantForce res_b = resonant_force(b, a, pops_b, pops_a, env, t);
  const NonresonantForce nr_a = nonresonant_force(a, b, pops_a, pops_b, env, quad);
  const NonresonantForce nr_b = nonresonant_force(b, a, pops_b, pops_a, env, quad);
  out.on_A_resonant = res_a.total;
  out.on_B_resonant = res_b.total;
  out.on_A_nonresonant = nr_a.force;
  out.on_B_nonresonant = nr_b.force;
  out.quadrature_error = std::max(nr_a.error, nr_b.error);
  out.per_transition = res_a.contributions;
  const auto swapped = swap_roles(res_b.contributions);
  out.per_transition.insert(out.per_transition.end(), swapped.begin(), swapped.end());
  return out;
}

}  // namespace vdw
