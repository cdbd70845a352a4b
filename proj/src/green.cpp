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

#include "vdw/green.hpp"

#include <cmath>

namespace vdw {

namespace {

constexpr int kSeriesOrder = 30;
constexpr double kSeriesRadius = 1.0;

// Radial functions of the free-space tensor, x = w rho / c:
//   A  = e^{ix}(1 + i/x - 1/x^2)        B  = e^{ix}(1 + 3i/x - 3/x^2)
//   A1 = x A' - A                       B1 = x B' - 3B
struct Radial {
  Complex a, b, a1, b1;
};

Radial radial_closed(Complex x) {
  const Complex i(0.0, 1.0);
  const Complex e = std::exp(i * x);
  const Complex u = 1.0 / x;
  const Complex u2 = u * u;
  return {e * (1.0 + i * u - u2), e * (1.0 + 3.0 * i * u - 3.0 * u2),
          e * (i * x - 2.0 - 3.0 * i * u + 3.0 * u2), e * (i * x - 6.0 - 15.0 * i * u + 15.0 * u2)};
}

// Laurent coefficients: A = sum_{m>=-2} i^m (1/m! - 1/(m+1)! + 1/(m+2)!) x^m,
// B likewise with (1/m! - 3/(m+1)! + 3/(m+2)!).
struct SeriesTables {
  std::array<Complex, kSeriesOrder + 3> a{}, b{};
  SeriesTables() {
    auto inv_fact = [](int n) {
      if (n < 0) return 0.0;
      double f = 1.0;
      for (int j = 2; j <= n; ++j) f *= j;
      return 1.0 / f;
    };
    for (int m = -2; m <= kSeriesOrder; ++m) {
      const Complex im = std::pow(Complex(0.0, 1.0), m);
      a[m + 2] = im * (inv_fact(m) - inv_fact(m + 1) + inv_fact(m + 2));
      b[m + 2] = im * (inv_fact(m) - 3.0 * inv_fact(m + 1) + 3.0 * inv_fact(m + 2));
    }
  }
};

Radial radial_series(Complex x) {
  static const SeriesTables tables;
  Radial r{0.0, 0.0, 0.0, 0.0};
  // Horner in x over x^{m+2}, then divide by x^2.
  for (int m = kSeriesOrder; m >= -2; --m) {
    const double k = m;
    r.a = r.a * x + tables.a[m + 2];
    r.b = r.b * x + tables.b[m + 2];
    r.a1 = r.a1 * x + (k - 1.0) * tables.a[m + 2];
    r.b1 = r.b1 * x + (k - 3.0) * tables.b[m + 2];
  }
  const Complex x2 = x * x;
  return {r.a / x2, r.b / x2, r.a1 / x2, r.b1 / x2};
}

void require_distinct(const Vec3& r, const Vec3& r_prime) {
  if ((r - r_prime).norm() <= kCoincidenceTolerance)
    throw GeometryError("Green tensor requested at coincident points");
}

}  // namespace

GreenSample& GreenSample::operator+=(const GreenSample& other) {
  value += other.value;
  for (int l = 0; l < 3; ++l) {
    gradient[l] += other.gradient[l];
    source_gradient[l] += other.source_gradient[l];
  }
  return *this;
}

GreenSample& GreenSample::operator*=(Complex factor) {
  value *= factor;
  for (int l = 0; l < 3; ++l) {
    gradient[l] *= factor;
    source_gradient[l] *= factor;
  }
  return *this;
}

GreenSample free_space_green(const Vec3& r, const Vec3& r_prime, Complex omega) {
  require_distinct(r, r_prime);
  if (omega == Complex(0.0, 0.0)) throw ValidationError("free-space Green tensor at zero frequency");
  const Vec3 sep = r - r_prime;
  const double rho = sep.norm();
  const Vec3 e = sep / rho;
  const Complex x = omega * rho / si::c;
  const Radial f = std::abs(x) < kSeriesRadius ? radial_series(x) : radial_closed(x);

  const Mat3 ee = e * e.transpose();
  const double norm0 = 1.0 / (4.0 * si::pi * rho);
  GreenSample s;
  s.value = norm0 * (f.a * Mat3::Identity().cast<Complex>() - f.b * ee.cast<Complex>());

  // d_l G_ij = [A1 e_l d_ij - B1 e_l e_i e_j - B (d_il e_j + d_jl e_i)] / (4 pi rho^2)
  const double norm1 = norm0 / rho;
  for (int l = 0; l < 3; ++l) {
    Mat3 mixed = Mat3::Zero();
    mixed.row(l) += e.transpose();
    mixed.col(l) += e;
    CMat3 d = e[l] * (f.a1 * Mat3::Identity().cast<Complex>() - f.b1 * ee.cast<Complex>()) -
              f.b * mixed.cast<Complex>();
    s.gradient[l] = norm1 * d;
    s.source_gradient[l] = -s.gradient[l];
  }
  return s;
}

void DiluteBody::validate() const {
  for (const auto& sp : species) validate_populations(sp.species, sp.initial);
  for (const auto& p : points) {
    if (!(p.weight > 0.0) || !std::isfinite(p.weight))
      throw ValidationError("body point weights must be positive");
    if (p.species >= species.size()) throw ValidationError("body point refers to unknown species");
    if (!p.position.allFinite()) throw ValidationError("body point position is not finite");
  }
}

DiluteBody DiluteBody::lattice(Species sp, const Vec3& origin,
                               const std::array<std::size_t, 3>& counts, double spacing,
                               double weight) {
  DiluteBody body;
  body.species.push_back(std::move(sp));
  for (std::size_t i = 0; i < counts[0]; ++i)
    for (std::size_t j = 0; j < counts[1]; ++j)
      for (std::size_t k = 0; k < counts[2]; ++k)
        body.points.push_back({origin + spacing * Vec3(double(i), double(j), double(k)), weight, 0});
  return body;
}

DiluteBody DiluteBody::scaled(double factor) const {
  DiluteBody out = *this;
  for (auto& p : out.points) p.weight *= factor;
  return out;
}

std::vector<CMat3> body_polarizabilities(const DiluteBody& body, Complex omega, double t) {
  std::vector<CMat3> alphas;
  alphas.reserve(body.species.size());
  for (const auto& sp : body.species)
    alphas.push_back(polarizability(sp.species, evolve_populations(sp.species, sp.initial, t), omega));
  return alphas;
}

GreenSample born_scattering_green(const DiluteBody& body, const std::vector<CMat3>& alphas,
                                  const Vec3& r, const Vec3& r_prime, Complex omega) {
  GreenSample total;
  for (const auto& point : body.points) {
    const GreenSample left = free_space_green(r, point.position, omega);
    const GreenSample right = free_space_green(point.position, r_prime, omega);
    const CMat3& alpha = alphas.at(point.species);
    const CMat3 left_alpha = point.weight * left.value * alpha;
    total.value += left_alpha * right.value;
    for (int l = 0; l < 3; ++l) {
      total.gradient[l] += point.weight * left.gradient[l] * alpha * right.value;
      total.source_gradient[l] += left_alpha * right.source_gradient[l];
    }
  }
  total *= si::mu0 * omega * omega;
  return total;
}

GreenSample born_scattering_green(const DiluteBody& body, const Vec3& r, const Vec3& r_prime,
                                  Complex omega, double t) {
  body.validate();
  return born_scattering_green(body, body_polarizabilities(body, omega, t), r, r_prime, omega);
}

GreenSample green(const Environment& env, const Vec3& r, const Vec3& r_prime, Complex omega,
                  double t) {
  GreenSample total = free_space_green(r, r_prime, omega);
  if (const auto* body = std::get_if<DiluteBody>(&env)) {
    if (!body->points.empty()) total += born_scattering_green(*body, r, r_prime, omega, t);
  }
  return total;
}

void require_outside_body(const DiluteBody& body, const Vec3& p) {
  for (const auto& point : body.points)
    if ((point.position - p).norm() <= kCoincidenceTolerance)
      throw GeometryError("atom coincides with a body point");
}

void require_outside_body(const Environment& env, const Vec3& p) {
  if (const auto* body = std::get_if<DiluteBody>(&env)) require_outside_body(*body, p);
}

}  // namespace vdw
