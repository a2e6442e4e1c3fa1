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

#include <complex>

#include <Eigen/Dense>

namespace wigent {

using cplx = std::complex<double>;

// Two-mode density matrix truncated to Fock levels 0..cutoff-1 per mode.
// Basis index of |n_A, n_B> is n_A * cutoff + n_B.
struct FockDensityMatrix {
  int cutoff = 1;
  Eigen::MatrixXcd rho;

  FockDensityMatrix() = default;
  FockDensityMatrix(int cutoff, Eigen::MatrixXcd rho);

  static FockDensityMatrix from_pure(int cutoff, const Eigen::VectorXcd& psi);
  // |n_A, n_B><n_A, n_B|
  static FockDensityMatrix number_state(int cutoff, int n_a, int n_b);

  int dim() const { return cutoff * cutoff; }
  int index(int n_a, int n_b) const { return n_a * cutoff + n_b; }
  double trace() const { return rho.trace().real(); }
  double trace_deficit() const { return 1.0 - trace(); }

  // Hermiticity, trace window and spectrum checks; throws InvalidArgument.
  void validate() const;
};

// Kronecker product rho_A (x) rho_B of single-mode matrices of equal size.
FockDensityMatrix product_state(const Eigen::MatrixXcd& rho_a,
                                const Eigen::MatrixXcd& rho_b);

// Fock amplitudes <n|gamma> of a coherent state, n < cutoff.
Eigen::VectorXcd coherent_amplitudes(cplx gamma, int cutoff);

// Reduced single-mode matrices.
Eigen::MatrixXcd reduce_to_a(const FockDensityMatrix& rho);
Eigen::MatrixXcd reduce_to_b(const FockDensityMatrix& rho);

}  // namespace wigent
