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

#include <array>

#include "vdw/core.hpp"

namespace vdw::kernels {

/// Frequencies entering the two-atom energy denominators. Line widths enter
/// as w_kn^{A(+-)} = w_kn^A +- i eps_A, w_pl^{B(+-)} = w_pl^B +- i eps_B and
/// the photon damping as w^{(+-)} = w +- i eps.
struct KernelParams {
  Complex omega;        // w
  Complex omega_prime;  // w'
  double omega_a = 0.0;  // w_kn^A
  double omega_b = 0.0;  // w_pl^B
  double eps_a = 0.0;    // (Gamma_k^A + Gamma_n^A)/2
  double eps_b = 0.0;    // (Gamma_p^B + Gamma_l^B)/2
  double eps = 0.0;

  Complex omega_minus() const { return omega - Complex(0.0, eps); }
  Complex omega_plus() const { return omega + Complex(0.0, eps); }
  Complex a_plus() const { return {omega_a, eps_a}; }
  Complex a_minus() const { return {omega_a, -eps_a}; }
  Complex b_plus() const { return {omega_b, eps_b}; }
  Complex b_minus() const { return {omega_b, -eps_b}; }

  /// Largest frequency magnitude among the parameters.
  double scale() const;
  /// Throws ValidationError on negative widths or non-finite input.
  void validate() const;
};

struct Denominators {
  std::array<Complex, 16> values;
  // Set where |D_i| < 1e-12 scale^3; the value is then replaced by infinity.
  std::array<bool, 16> at_pole{};
};

inline constexpr double kPoleThreshold = 1e-12;

/// D_1 .. D_16 (index 0 .. 15).
Denominators energy_denominators(const KernelParams& p);

/// f_1(w')(1/(w^- + w') + 1/(w^+ - w')) + f_2(w^-)(1/(w' + w^-) + 1/(w' - w^-)) + c.c.
/// Equals sum_i 1/D_i + c.c. for real w, w'.
/// Throws PoleProximityError near a pole.
Complex combined_denominator_sum(const KernelParams& p);

struct SpectralKernels {
  Complex f1, f2, g1, g2;
};

/// f_1(xi), f_2(xi), and g_1(w), g_2(w) at w = p.omega.
/// g_1 = conj(f_1(conj w)) + conj(f_2(conj w)), g_2 = Im[f_1(w) + f_2(w)] (real w).
SpectralKernels spectral_kernels(const KernelParams& p, Complex xi);

Complex f1(const KernelParams& p, Complex xi);
Complex f2(const KernelParams& p, Complex xi);

/// g_1 from its expanded partial-fraction form (independent of f_1, f_2).
Complex g1_expanded(const KernelParams& p, Complex omega);
/// g_2 from 2 Re[1/(w_kn^{A+} + w) + 1/(w_kn^{A+} - w)] Im[1/(w + w_pl^{B-})], real w.
double g2_expanded(const KernelParams& p, double omega);
/// Factored small-width limit of g_1.
Complex g1_zero_width_limit(const KernelParams& p, double omega);
/// Weight of the delta-function limit of g_2 at w = -w_pl^B:
/// 2 pi Re[1/(w_kn^{A+} + w) + 1/(w_kn^{A+} - w)].
double g2_delta_weight(const KernelParams& p);

}  // namespace vdw::kernels
