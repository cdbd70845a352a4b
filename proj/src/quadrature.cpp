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

#include "vdw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vdw {

namespace {

struct Panel {
  double a, b;
  Vec3 value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_panel(const std::function<Vec3(double)>& g, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Vec3 f0 = g(mid);
  Vec3 kronrod = f0 * wk[0];
  Vec3 gauss = f0 * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Vec3 pair = g(mid + half * x[i]) + g(mid - half * x[i]);
    kronrod += pair * wk[i];
    if (i % 2 == 0) gauss += pair * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, (kronrod - gauss).norm()};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  if (!(abs_floor >= 0.0)) throw ValidationError("quadrature absolute floor must be nonnegative");
  if (max_subdivisions == 0) throw ValidationError("quadrature needs at least one subdivision");
  if (!(scale >= 0.0)) throw ValidationError("quadrature scale must be nonnegative");
}

QuadratureResult integrate_semi_infinite(const std::function<Vec3(double)>& f, double scale,
                                         const QuadratureSpec& spec) {
  spec.validate();
  if (!(scale > 0.0)) throw ValidationError("substitution scale must be positive");

  auto mapped = [&](double s) -> Vec3 {
    const double one_minus = 1.0 - s;
    const double x = scale * s / one_minus;
    return f(x) * (scale / (one_minus * one_minus));
  };

  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod_panel(mapped, 0.0, 1.0);
  Vec3 total = first.value;
  double error = first.error;
  panels.push(first);
  std::size_t subdivisions = 0;

  auto converged = [&] { return error <= std::max(spec.abs_floor, spec.rel_tol * total.norm()); };
  while (!converged()) {
    if (subdivisions >= spec.max_subdivisions)
      throw ConvergenceError("quadrature did not converge; achieved error " + std::to_string(error),
                             error);
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod_panel(mapped, worst.a, mid);
    Panel right = gauss_kronrod_panel(mapped, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum from the panels to drop accumulated update rounding.
  Vec3 value = Vec3::Zero();
  double err = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  for (const auto& p : all) {
    value += p.value;
    err += p.error;
  }
  return {value, err, subdivisions};
}

}  // namespace vdw
