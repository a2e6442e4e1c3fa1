// Copyright 2026 The wigent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>

#include "wigent/quadrature.hpp"
#include "wigent/wigner.hpp"

namespace wigent::test {

// Tensor Gauss-Legendre over the field's envelope boxes in all four coordinates.
inline double integrate_field(const WignerField& w, int order) {
  const Box a = w.envelope().mode_box(0);
  const Box b = w.envelope().mode_box(1);
  const GaussLegendre& g = gauss_legendre(order);
  auto map = [&](double lo, double hi, int i) { return 0.5 * (hi - lo) * g.nodes[i] + 0.5 * (hi + lo); };
  const double jac = a.area() * b.area() / 16.0;
  double total = 0.0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      for (int k = 0; k < order; ++k)
        for (int l = 0; l < order; ++l)
          total += g.weights[i] * g.weights[j] * g.weights[k] * g.weights[l] *
                   w({map(a.x_min, a.x_max, i), map(a.p_min, a.p_max, j), map(b.x_min, b.x_max, k),
                      map(b.p_min, b.p_max, l)});
  return total * jac;
}

// Largest pointwise difference on the 5^4 grid over [-4, 4]^4.
inline double grid_disagreement(const WignerField& u, const WignerField& v) {
  const double g[5] = {-4.0, -2.0, 0.0, 2.0, 4.0};
  double worst = 0.0;
  for (double a : g)
    for (double b : g)
      for (double c : g)
        for (double d : g) worst = std::max(worst, std::abs(u({a, b, c, d}) - v({a, b, c, d})));
  return worst;
}

}  // namespace wigent::test
