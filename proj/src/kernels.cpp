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

#include "vdw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vdw::kernels {

namespace {

void require_regular(Complex d, double scale_power, const char* where) {
  if (!(std::abs(d) >= kPoleThreshold * scale_power))
    throw PoleProximityError(std::string("kernel evaluated at a pole in ") + where);
}

}  // namespace

double KernelParams::scale() const {
  return std::max({std::abs(omega), std::abs(omega_prime), std::abs(omega_a), std::abs(omega_b)});
}

void KernelParams::validate() const {
  auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!finite(omega) || !finite(omega_prime) || !std::isfinite(omega_a) || !std::isfinite(omega_b))
    throw ValidationError("kernel frequencies must be finite");
  if (!(eps_a >= 0.0) || !(eps_b >= 0.0) || !(eps >= 0.0))
    throw ValidationError("kernel widths must be nonnegative");
}

Denominators energy_denominators(const KernelParams& p) {
  p.validate();
  const Complex w = p.omega_minus();
  const Complex wp = p.omega_prime;
  const Complex ap = p.a_plus(), am = p.a_minus();
  const Complex bp = p.b_plus(), bm = p.b_minus();

  Denominators d;
  d.values = {
      (w + am) * (wp + bm) * (am + bm),
      (w + am) * (wp + bp) * (am - bp),
      (w - ap) * (wp + bm) * (ap - bm),
      (w - ap) * (wp + bp) * (ap + bp),
      (w + am) * (wp + am) * (am + bm),
      -(w - ap) * (wp + ap) * (ap - bm),
      -(w + am) * (wp + am) * (am - bp),
      (w - ap) * (wp + ap) * (ap + bp),
      (w + wp) * (w + am) * (wp + bm),
      (w - wp) * (w + am) * (wp + bp),
      -(w + wp) * (w - ap) * (wp + bm),
      -(w - wp) * (w - ap) * (wp + bp),
      (w + wp) * (w + am) * (w + bm),
      -(w - wp) * (w + am) * (w + bm),
      -(w + wp) * (w - ap) * (w + bm),
      (w - wp) * (w - ap) * (w + bm),
  };
  const double cube = std::pow(p.scale(), 3);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (std::abs(d.values[i]) < kPoleThreshold * cube) {
      d.at_pole[i] = true;
      d.values[i] = Complex(inf, inf);
    }
  }
  return d;
}

Complex f1(const KernelParams& p, Complex xi) {
  const Complex ap = p.a_plus(), am = p.a_minus();
  const Complex bp = p.b_plus(), bm = p.b_minus();
  const double s = p.scale();
  require_regular(xi + ap, s, "f1");
  require_regular(xi + bm, s, "f1");
  return 1.0 / ((ap + bp) * (xi + ap)) + 1.0 / ((am + bm) * (xi + bm)) +
         1.0 / ((xi + ap) * (xi + bm));
}

Complex f2(const KernelParams& p, Complex xi) {
  const Complex ap = p.a_plus(), am = p.a_minus();
  const Complex bp = p.b_plus(), bm = p.b_minus();
  const double s = p.scale();
  require_regular(xi - ap, s, "f2");
  require_regular(xi + am, s, "f2");
  require_regular(xi + bm, s, "f2");
  return 1.0 / ((ap + bp) * (xi - ap)) + 1.0 / ((am + bm) * (xi + am)) +
         (1.0 / (xi + am) - 1.0 / (xi - ap)) / (xi + bm);
}

Complex combined_denominator_sum(const KernelParams& p) {
  p.validate();
  const Complex wm = p.omega_minus();
  const Complex wpl = p.omega_plus();
  const Complex wp = p.omega_prime;
  const double s = p.scale();
  require_regular(wm + wp, s, "combined sum");
  require_regular(wpl - wp, s, "combined sum");
  require_regular(wp - wm, s, "combined sum");
  const Complex first = f1(p, wp) * (1.0 / (wm + wp) + 1.0 / (wpl - wp));
  const Complex second = f2(p, wm) * (1.0 / (wp + wm) + 1.0 / (wp - wm));
  const Complex sum = first + second;
  return sum + std::conj(sum);
}

SpectralKernels spectral_kernels(const KernelParams& p, Complex xi) {
  p.validate();
  const Complex w = p.omega;
  SpectralKernels k;
  k.f1 = f1(p, xi);
  k.f2 = f2(p, xi);
  k.g1 = std::conj(f1(p, std::conj(w))) + std::conj(f2(p, std::conj(w)));
  k.g2 = Complex((f1(p, w) + f2(p, w)).imag(), 0.0);
  return k;
}

Complex g1_expanded(const KernelParams& p, Complex w) {
  const Complex ap = p.a_plus(), am = p.a_minus();
  const Complex bp = p.b_plus(), bm = p.b_minus();
  const double s = p.scale();
  for (Complex d : {w + bp, w + ap, w + am, w - am})
    require_regular(d, s, "g1");
  return (1.0 / (w + ap) + 1.0 / (w + am) - 1.0 / (w - am)) / (w + bp) +
         (1.0 / (w + ap) + 1.0 / (w + bp)) / (ap + bp) +
         (1.0 / (w + am) + 1.0 / (w - am)) / (am + bm);
}

double g2_expanded(const KernelParams& p, double w) {
  const Complex ap = p.a_plus();
  const Complex bm = p.b_minus();
  const double s = p.scale();
  for (Complex d : {ap + w, ap - w, w + bm}) require_regular(d, s, "g2");
  return 2.0 * (1.0 / (ap + w) + 1.0 / (ap - w)).real() * (1.0 / (w + bm)).imag();
}

Complex g1_zero_width_limit(const KernelParams& p, double w) {
  const double a = p.omega_a, b = p.omega_b;
  const Complex i(0.0, 1.0);
  const Complex num = 4.0 * (w - a) * (w + a) * (w + a + b);
  const Complex den = ((w + a) * (w + a) + p.eps_a * p.eps_a) * (w - a + i * p.eps_a) *
                      (w + b + i * p.eps_b) * (a + b);
  require_regular(den, std::pow(p.scale(), 5), "g1 limit");
  return num / den;
}

double g2_delta_weight(const KernelParams& p) {
  const Complex ap = p.a_plus();
  const double w = -p.omega_b;
  return 2.0 * si::pi * (1.0 / (ap + w) + 1.0 / (ap - w)).real();
}

}  // namespace vdw::kernels
