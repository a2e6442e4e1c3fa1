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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "wigent/core.hpp"
#include "wigent/fock.hpp"
#include "wigent/gaussian.hpp"
#include "wigent/quadrature.hpp"
#include "wigent/wigner.hpp"

namespace wigent {

enum class CriterionId { C1, C2, C3, PurityS1, Simon, Duan, PPT, PseudospinEPR, BellCHSH };

std::string to_string(CriterionId id);

struct CriterionReport {
  CriterionId id = CriterionId::C1;
  double value = 0.0;
  double bound = 0.0;
  // Bound breached by more than error_estimate, in the criterion's direction.
  bool violated = false;
  std::optional<Transform2> transform;
  std::optional<double> theta;
  std::optional<Region> region;
  double error_estimate = 0.0;
  // Non-fatal diagnostics, e.g. a truncated density matrix.
  std::string warning;
};

// Slice integrals. When `closed_form` is set and the field is a Gaussian
// mixture the exact integral is used and the error estimate is zero.
IntegralResult slice_integral(const SliceField& slice, const QuadratureSpec& spec,
                              bool closed_form = false);
IntegralResult slice_integral_abs(const SliceField& slice, const Region& region,
                                  const QuadratureSpec& spec);

// int W(x c, p c, x' s, p' s) dx dp <= 1/(2 pi).
CriterionReport criterion1(const WignerField& w, const Transform2& t, double theta,
                           const QuadratureSpec& spec = {}, bool closed_form = false);

// int_R |W(x c, p c, x' s, p' s)| dx dp <= 1/(2 pi |sin 2 theta|).
CriterionReport criterion2(const WignerField& w, const Transform2& t, double theta,
                           const Region& region, const QuadratureSpec& spec = {});

// int W(x, p, x', p') dx dp >= 0.
CriterionReport criterion3(const WignerField& w, const Transform2& t,
                           const QuadratureSpec& spec = {}, bool closed_form = false);

// 4 pi int [W'(X, P)]^2 <= 1 for the reduced output mode after a p_B
// reflection and the beam splitter at angle theta. Uses the Gaussian
// mixture, then the density matrix, then nested quadrature.
CriterionReport purity_s1(const WignerField& w, double theta,
                          const QuadratureSpec& spec = {});

// Smallest eigenvalue of V + i Omega~, Omega~ = J (+) -J.
CriterionReport simon_check(const GaussianTwoMode& g);
// Var(x_A + x_B) + Var(p_A - p_B) >= 4.
CriterionReport duan_check(const GaussianTwoMode& g);
// Smallest eigenvalue of the partial transpose over mode B.
CriterionReport ppt_check(const FockDensityMatrix& rho);
// <Px Px>^2 + <Py Py>^2 + <Pz Pz>^2 <= 1.
CriterionReport pseudospin_epr(const FockDensityMatrix& rho);

// <P_A(alpha_A) P_B(alpha_B)> with P(alpha) = D(alpha)^dag (-1)^n D(alpha),
// i.e. kBellScale * W at the phase point x + i p = -2 alpha on each mode.
inline constexpr double kBellScale = 4.0 * kPi * kPi;
double parity_correlator(const WignerField& w, cplx alpha_a, cplx alpha_b);

// Displacements ordered (alpha_A, alpha'_A, alpha_B, alpha'_B).
using BellSettings = std::array<cplx, 4>;

// Signed CHSH combination E(a,b) + E(a',b) + E(a,b') - E(a',b').
double chsh_sum(const WignerField& w, const BellSettings& alphas);
CriterionReport bell_chsh(const WignerField& w, const BellSettings& alphas);

// Least-squares constant c in <P_A P_B> = c W, fitted against the Fock
// displaced-parity oracle on a squeezed vacuum (s = 0.3, cutoff 30) at ten
// seeded random displacement pairs.
double calibrate_bell_scale(std::uint64_t seed = 7);

struct BellSearch {
  int starts = 150;
  int max_iterations = 6000;
  std::uint64_t seed = 1;
};

// Largest |B| at fixed state, multi-start Nelder-Mead over the displacements.
CriterionReport bell_optimize(const WignerField& w, const BellSearch& search = {});

struct BellThreshold {
  double epsilon_min = 1.0;
  BellSettings alphas{};
  bool found = false;
};

// Smallest epsilon with |B| > 2 for a family affine in epsilon (mixtures
// eps rho_1 + (1 - eps) rho_0). For fixed displacements B is affine too, so
// the crossing is solved exactly and the search minimizes it directly.
BellThreshold bell_epsilon_min(const std::function<WignerField(double)>& family,
                               const BellSearch& search = {});

}  // namespace wigent
