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

#include <cmath>

#include "wigent/core.hpp"

// Closed-form reference values used as test oracles.
namespace wigent::reference {

// Largest criterion-I value for a standard-form Gaussian (n, m, c1, c2).
inline double gaussian_c1_max(double n, double m, double c1, double c2) {
  const double a = std::abs(c1 * c2);
  const double root = std::sqrt(4 * m * n * (c1 * c1 + c2 * c2) - 2 * n * n * (m * m - 2 * a) +
                                4 * a * m * m + std::pow(m, 4) + std::pow(n, 4));
  return 1.0 / (2 * kPi * std::sqrt(0.5 * (-root + 2 * a + m * m + n * n)));
}

// Optimal squeeze t^2 and tan(2 theta) for gaussian_c1_max.
inline double gaussian_c1_t2(double n, double m, double c1, double c2) {
  return (std::abs(c2) * m + std::abs(c1) * n) / (std::abs(c1) * m + std::abs(c2) * n);
}

// Entanglement condition for the standard form.
inline bool gaussian_entangled(double n, double m, double c1, double c2) {
  const double l = std::pow(std::abs(c1 * c2) - 1, 2);
  const double r = (c1 * c1 + c2 * c2) * m * n + m * m + n * n - m * m * n * n;
  return l < r;
}

// Margin of gaussian_entangled (positive when entangled).
inline double gaussian_entangled_margin(double n, double m, double c1, double c2) {
  const double l = std::pow(std::abs(c1 * c2) - 1, 2);
  const double r = (c1 * c1 + c2 * c2) * m * n + m * m + n * n - m * m * n * n;
  return r - l;
}

// Largest purity S1 value for c1 = -c2 = c.
inline double purity_max(double n, double m, double c) {
  return 2.0 / (m + n - std::sqrt(4 * c * c + (n - m) * (n - m)));
}

inline double tmsv_c1(double s) { return std::exp(2 * s) / (2 * kPi); }

// TMST criterion II with p-reflection: optimal theta and the value / bound ratio.
inline double tmst_c2_theta(double s, double eta, double r) {
  const double den = eta + (eta - 2) * std::cosh(2 * r) -
                     2 * eta * std::pow(std::cosh(r), 2) * std::cosh(2 * s);
  return std::atan(std::sqrt(-2 * std::cosh(2 * s) / den));
}
inline double tmst_c2_ratio(double s, double eta, double r) {
  const double den = eta + (eta - 2) * std::cosh(2 * r) -
                     2 * eta * std::pow(std::cosh(r), 2) * std::cosh(2 * s);
  const double q = std::sqrt(-std::cosh(2 * s) / den);
  return std::sqrt(-2 * std::cosh(2 * s) / den) /
         (std::pow(std::cosh(s), 2) + std::pow(std::sinh(s), 2) -
          std::sqrt(2 * eta) * std::cosh(r) * std::sinh(2 * s) * q);
}

inline double werner_c1(double eps) { return (1 + 3 * eps) / (4 * kPi); }
inline double werner_c3(double eps) { return (1 - 3 * eps) / (8 * kPi); }
inline double werner_ppt(double eps) { return (1 - 3 * eps) / 4; }

inline double cat_c1(double gamma, double eps) {
  return (1 + eps * std::tanh(2 * gamma * gamma)) / (2 * kPi);
}
inline double cat_minus_c3(double gamma, double eps) {
  const double g2 = 4 * gamma * gamma;
  return std::exp(-g2) * (1 - (1 + std::exp(g2)) * eps) / (4 * kPi);
}
inline double cat_minus_threshold(double gamma) {
  return 1.0 / (1.0 + std::exp(4 * gamma * gamma));
}

}  // namespace wigent::reference
