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

#include <optional>
#include <string>
#include <variant>

#include "wigent/fock.hpp"
#include "wigent/gaussian.hpp"
#include "wigent/wigner.hpp"

namespace wigent {

// Two-mode squeezed vacuum with squeezing s whose mode A passes through a
// quantum-limited attenuator (transmissivity eta) and then a quantum-limited
// amplifier (gain cosh^2 r).
struct TmstParams {
  double s = 0.0;
  double eta = 1.0;
  double r = 0.0;

  void validate() const;
};

enum class BellState { phi_plus, psi_plus };

// eps |psi><psi| + (1 - eps) 1/4 on the two-qubit Fock subspace {|0>, |1>}^2.
struct WernerParams {
  BellState bell = BellState::phi_plus;
  double epsilon = 1.0;

  void validate() const;
};

enum class CatSign { plus, minus };

// eps |psi><psi| + (1 - eps)/2 (|g,g><g,g| + |-g,-g><-g,-g|) with
// |psi> ~ |g,g> +- |-g,-g> and real coherent amplitude g = gamma.
struct CatParams {
  double gamma = 1.0;
  double epsilon = 1.0;
  CatSign sign = CatSign::plus;

  void validate() const;
};

using StateSpec = std::variant<TmstParams, WernerParams, CatParams, GaussianTwoMode>;

std::string to_string(BellState b);
std::string to_string(CatSign s);
std::string describe(const StateSpec& spec);

GaussianTwoMode tmst_covariance(const TmstParams& p);
WignerField tmst_wigner(const TmstParams& p);
WignerField werner_wigner(const WernerParams& p);
// Throws InvalidArgument for the minus branch at gamma = 0.
WignerField cat_wigner(const CatParams& p);

// Field for any supported spec, using the analytic backend.
WignerField state_wigner(const StateSpec& spec);

int default_cutoff(const TmstParams& p);
int default_cutoff(const WernerParams& p);
int default_cutoff(const CatParams& p);

// Truncated density matrices. Throw CutoffError when the truncated trace
// falls more than 1e-6 short of 1.
FockDensityMatrix state_to_fock(const TmstParams& p,
                                std::optional<int> cutoff = std::nullopt);
FockDensityMatrix state_to_fock(const WernerParams& p,
                                std::optional<int> cutoff = std::nullopt);
FockDensityMatrix state_to_fock(const CatParams& p,
                                std::optional<int> cutoff = std::nullopt);

}  // namespace wigent
