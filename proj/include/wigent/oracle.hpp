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

#include <Eigen/Dense>

#include "wigent/core.hpp"
#include "wigent/fock.hpp"

namespace wigent {

// Operator on one mode (N x N) or two modes (N^2 x N^2, index n_A * N + n_B).
struct FockOperator {
  int cutoff = 1;
  bool two_mode = false;
  Eigen::MatrixXcd matrix;

  int dim() const { return two_mode ? cutoff * cutoff : cutoff; }
};

Eigen::MatrixXcd annihilation(int cutoff);

FockOperator parity_operator(int cutoff);
// exp(alpha a^dag - alpha^* a), exponentiated on a padded space and truncated.
FockOperator displacement_operator(int cutoff, cplx alpha);
// D(alpha) Pi D(alpha)^dag; its expectation is 2 pi W at x + i p = 2 alpha.
FockOperator displaced_parity(int cutoff, cplx alpha);

// Pseudospin operators on the parity doublets (|2n>, |2n+1>); an unpaired top
// level (odd cutoff) is annihilated by x and y.
FockOperator pseudospin_x(int cutoff);
FockOperator pseudospin_y(int cutoff);
FockOperator pseudospin_z(int cutoff);

FockOperator tensor(const FockOperator& a, const FockOperator& b);

// Tr[rho op]. Throws InvalidArgument on cutoff mismatch.
cplx expectation(const FockDensityMatrix& rho, const FockOperator& op);

// Tr[rho (a (x) b)] for single-mode a, b without forming the tensor product.
cplx expectation(const FockDensityMatrix& rho, const FockOperator& a,
                 const FockOperator& b);

// Transpose on the mode-B indices.
Eigen::MatrixXcd partial_transpose_b(const FockDensityMatrix& rho);

// U rho U^dag with U = exp(theta (a^dag b - a b^dag)). The output cutoff
// defaults to 2N - 1, which holds every state of the input exactly;
// throws CutoffError if a smaller cutoff loses more than 1e-8 of the trace.
FockDensityMatrix beam_splitter(const FockDensityMatrix& rho, double theta,
                                int out_cutoff = 0);

// (1/2pi)^2 Tr[rho (D Pi D^dag)_A (D Pi D^dag)_B], with alpha = (x + i p)/2.
double parity_wigner(const FockDensityMatrix& rho, const PhaseVec4& v);

}  // namespace wigent
