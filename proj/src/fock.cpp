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

#include "wigent/fock.hpp"

#include <cmath>
#include <sstream>

#include "wigent/core.hpp"

namespace wigent {

FockDensityMatrix::FockDensityMatrix(int n, Eigen::MatrixXcd r)
    : cutoff(n), rho(std::move(r)) {
  if (cutoff < 1) throw InvalidArgument("Fock cutoff must be >= 1");
  if (rho.rows() != dim() || rho.cols() != dim()) {
    throw InvalidArgument("density matrix size does not match cutoff^2");
  }
}

FockDensityMatrix FockDensityMatrix::from_pure(int cutoff,
                                               const Eigen::VectorXcd& psi) {
  return {cutoff, psi * psi.adjoint()};
}

FockDensityMatrix FockDensityMatrix::number_state(int cutoff, int n_a,
                                                  int n_b) {
  if (n_a < 0 || n_b < 0 || n_a >= cutoff || n_b >= cutoff) {
    throw InvalidArgument("number state outside the cutoff");
  }
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(cutoff * cutoff, cutoff * cutoff);
  const int i = n_a * cutoff + n_b;
  r(i, i) = 1.0;
  return {cutoff, std::move(r)};
}

void FockDensityMatrix::validate() const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  const double tr = trace();
  if (tr > 1.0 + 1e-9 || tr < 1.0 - 1e-6) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " outside [1 - 1e-6, 1]";
    throw InvalidArgument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -1e-10) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
}

FockDensityMatrix product_state(const Eigen::MatrixXcd& rho_a,
                                const Eigen::MatrixXcd& rho_b) {
  const int n = static_cast<int>(rho_a.rows());
  if (rho_b.rows() != n || rho_a.cols() != n || rho_b.cols() != n) {
    throw InvalidArgument("product_state needs equal square factors");
  }
  Eigen::MatrixXcd r(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r.block(i * n, j * n, n, n) = rho_a(i, j) * rho_b;
    }
  }
  return {n, std::move(r)};
}

Eigen::VectorXcd coherent_amplitudes(cplx gamma, int cutoff) {
  Eigen::VectorXcd v(cutoff);
  const double norm = std::exp(-0.5 * std::norm(gamma));
  cplx term = norm;
  for (int n = 0; n < cutoff; ++n) {
    v(n) = term;
    term *= gamma / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

Eigen::MatrixXcd reduce_to_a(const FockDensityMatrix& r) {
  const int n = r.cutoff;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = r.rho.block(i * n, j * n, n, n).trace();
    }
  }
  return out;
}

Eigen::MatrixXcd reduce_to_b(const FockDensityMatrix& r) {
  const int n = r.cutoff;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) out += r.rho.block(k * n, k * n, n, n);
  return out;
}

}  // namespace wigent
