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

#include <functional>
#include <optional>
#include <vector>

#include "wigent/core.hpp"

namespace wigent {

using Integrand = std::function<double(double, double)>;

struct QuadratureSpec {
  enum class Rule { tensor_gauss_legendre, adaptive_subdivision };

  Rule rule = Rule::tensor_gauss_legendre;
  // Gauss-Legendre points per axis (tensor rule) or per panel side x 8
  // (adaptive rule uses fixed 10-point panels and ignores this).
  int order = 80;
  double tolerance = 1e-8;
  // Box replacing the full plane; required for full-plane regions.
  std::optional<Box> truncation;
  // When false, non-convergence is reported through error_estimate only.
  bool throw_on_nonconvergence = true;
  // Leaf-panel budget for the adaptive rule.
  int max_panels = 20000;

  void validate() const;
  QuadratureSpec with_truncation(const Box& box) const;
  QuadratureSpec with_order(int n) const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// Integral of f over the region. Full-plane regions are replaced by
// spec.truncation. The estimate comes from a lower-order rerun plus a
// round-off floor; throws QuadratureError when it exceeds 10x tolerance and
// spec.throw_on_nonconvergence is set.
IntegralResult integrate(const Integrand& f, const Region& region,
                         const QuadratureSpec& spec);

// Integral of |f|. Switches to adaptive subdivision when f changes sign in
// the region, since the kink ruins the tensor rule's convergence.
IntegralResult integrate_abs(const Integrand& f, const Region& region,
                             const QuadratureSpec& spec);

// Tensor rule on a single box, no error estimate.
double tensor_gauss_legendre(const Integrand& f, const Box& box, int order,
                             double* abs_sum = nullptr);

}  // namespace wigent
