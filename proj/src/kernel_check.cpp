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

#include "vdw/kernel_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace vdw::kernels {

namespace {

Complex rhs_2_7_10(const KernelParams& p) {
  const Complex w = p.omega_minus(), wp = p.omega_prime;
  return 1.0 / ((w - wp) * (wp + p.a_minus()) * (wp + p.b_plus()));
}

Complex rhs_3_6_11(const KernelParams& p) {
  const Complex w = p.omega_minus(), wp = p.omega_prime;
  return 1.0 / ((w + wp) * (wp + p.a_plus()) * (wp + p.b_minus()));
}

Complex rhs_1_9(const KernelParams& p) {
  const Complex w = p.omega_minus(), wp = p.omega_prime;
  return 1.0 / ((w + wp) * (p.a_minus() + p.b_minus())) *
         (1.0 / (w + p.a_minus()) + 1.0 / (wp + p.b_minus()));
}

Complex rhs_4_12(const KernelParams& p) {
  const Complex w = p.omega_minus(), wp = p.omega_prime;
  return 1.0 / ((wp - w) * (p.a_plus() + p.b_plus())) *
         (1.0 / (w - p.a_plus()) - 1.0 / (wp + p.b_plus()));
}

Complex rhs_5(const KernelParams& p) {
  const Complex w = p.omega_minus(), wp = p.omega_prime;
  return 1.0 / ((w - wp) * (p.a_minus() + p.b_minus())) *
         (1.0 / (wp + p.a_minus()) - 1.0 / (w + p.a_minus()));
}

Complex rhs_8(const KernelParams& p) {
  const Complex w = p.omega_minus(), wp = p.omega_prime;
  return 1.0 / ((w + wp) * (p.a_plus() + p.b_plus())) *
         (1.0 / (wp + p.a_plus()) + 1.0 / (w - p.a_plus()));
}

struct Tracker {
  std::size_t samples = 0;
  double max = 0.0;
  void add(double d) {
    ++samples;
    max = std::max(max, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
  }
};

// Draws until fn accepts a parameter set (no pole within tolerance).
template <typename Fn>
void sample(ParamSampler& sampler, bool complex_frequencies, Fn&& fn) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      if (fn(sampler.next(complex_frequencies))) return;
    } catch (const PoleProximityError&) {
    }
  }
  throw Error("kernel check could not draw a regular parameter set");
}

}  // namespace

double ParamSampler::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

KernelParams ParamSampler::next(bool complex_frequencies) {
  KernelParams p;
  p.omega_a = log_uniform(1e14, 1e16);
  p.omega_b = p.omega_a / log_uniform(1e-3, 1e3);
  p.eps_a = p.omega_a * log_uniform(1e-6, 1e-2);
  p.eps_b = p.omega_b * log_uniform(1e-6, 1e-2);
  const double s = 3.0 * std::max(p.omega_a, p.omega_b);
  if (complex_frequencies) {
    p.omega = {uniform(-s, s), uniform(-s, s)};
    p.omega_prime = {uniform(-s, s), uniform(-s, s)};
  } else {
    p.omega = uniform(0.0, s);
    p.omega_prime = uniform(0.0, s);
  }
  return p;
}

Complex direct_denominator_sum(const KernelParams& p) {
  const Denominators d = energy_denominators(p);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.at_pole[i]) throw PoleProximityError("denominator D" + std::to_string(i + 1) + " at a pole");
    sum += 1.0 / d.values[i];
  }
  return sum + std::conj(sum);
}

const std::vector<PartialIdentity>& partial_identities() {
  static const std::vector<PartialIdentity> table = {
      {"partial_D2_D7_D10", {2, 7, 10}, rhs_2_7_10},
      {"partial_D3_D6_D11", {3, 6, 11}, rhs_3_6_11},
      {"partial_D1_D9", {1, 9}, rhs_1_9},
      {"partial_D4_D12", {4, 12}, rhs_4_12},
      {"partial_D5", {5}, rhs_5},
      {"partial_D8", {8}, rhs_8},
  };
  return table;
}

std::vector<CheckRow> run_checks(const CheckOptions& options) {
  if (options.count == 0) throw ValidationError("kernel check needs at least one sample");
  if (!(options.tolerance > 0.0)) throw ValidationError("kernel check tolerance must be positive");
  ParamSampler sampler(options.seed);
  std::vector<CheckRow> rows;
  auto finish = [&](const std::string& name, const Tracker& t, double tol) {
    rows.push_back({name, t.samples, t.max, tol, t.max <= tol});
  };

  Tracker combined, combined_result;
  for (std::size_t n = 0; n < options.count; ++n) {
    sample(sampler, false, [&](const KernelParams& p) {
      const Denominators d = energy_denominators(p);
      if (std::any_of(d.at_pole.begin(), d.at_pole.end(), [](bool b) { return b; })) return false;
      double scale = 0.0;
      for (const Complex& v : d.values) scale += 2.0 * std::abs(1.0 / v);
      const Complex direct = direct_denominator_sum(p);
      const Complex diff = direct - combined_denominator_sum(p);
      combined.add(std::abs(diff) / scale);
      combined_result.add(std::abs(diff) / std::abs(direct));
      return true;
    });
  }
  finish("combined_denominator_sum", combined, options.tolerance);

  for (const PartialIdentity& id : partial_identities()) {
    Tracker t;
    for (std::size_t n = 0; n < options.count; ++n) {
      sample(sampler, true, [&](const KernelParams& p) {
        const Denominators d = energy_denominators(p);
        Complex lhs = 0.0;
        double scale = 0.0;
        for (int i : id.indices) {
          if (d.at_pole[i - 1]) return false;
          lhs += 1.0 / d.values[i - 1];
          scale += std::abs(1.0 / d.values[i - 1]);
        }
        const Complex rhs = id.rhs(p);
        scale = std::max(scale, std::abs(rhs));
        t.add(std::abs(lhs - rhs) / scale);
        return true;
      });
    }
    finish(id.name, t, options.tolerance);
  }

  Tracker g1, g2;
  for (std::size_t n = 0; n < options.count; ++n) {
    sample(sampler, true, [&](const KernelParams& p) {
      const SpectralKernels k = spectral_kernels(p, p.omega_prime);
      const Complex wc = std::conj(p.omega);
      const double scale = std::abs(f1(p, wc)) + std::abs(f2(p, wc));
      g1.add(std::abs(k.g1 - g1_expanded(p, p.omega)) / scale);
      return true;
    });
    sample(sampler, false, [&](const KernelParams& p) {
      const double w = p.omega.real();
      const SpectralKernels k = spectral_kernels(p, p.omega_prime);
      const double scale = std::abs(f1(p, w)) + std::abs(f2(p, w));
      g2.add(std::abs(k.g2.real() - g2_expanded(p, w)) / scale);
      return true;
    });
  }
  finish("g1_identity", g1, options.tolerance);
  finish("g2_identity", g2, options.tolerance);

  Tracker limit;
  for (std::size_t n = 0; n < options.count; ++n) {
    sample(sampler, false, [&](KernelParams p) {
      p.eps_a = 1e-8 * p.omega_a;
      p.eps_b = 1e-8 * p.omega_b;
      const double w = p.omega.real();
      if (std::abs(w - p.omega_a) < 1e-3 * p.omega_a) return false;
      const Complex exact = spectral_kernels(p, p.omega_prime).g1;
      const Complex lim = g1_zero_width_limit(p, w);
      limit.add(std::abs(exact - lim) / std::abs(lim));
      return true;
    });
  }
  finish("g1_zero_width_limit", limit, options.zero_width_tolerance);

  rows.push_back({"combined_denominator_sum_result_relative", combined_result.samples,
                  combined_result.max, std::numeric_limits<double>::infinity(), true});
  return rows;
}

}  // namespace vdw::kernels
