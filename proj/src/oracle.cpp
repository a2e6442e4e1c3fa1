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

#include "wigent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace wigent {

Eigen::MatrixXcd annihilation(int cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

FockOperator parity_operator(int cutoff) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return {cutoff, false, std::move(m)};
}

FockOperator displacement_operator(int cutoff, cplx alpha) {
  const int pad = cutoff + 40 + static_cast<int>(std::ceil(4.0 * std::norm(alpha)));
  const Eigen::MatrixXcd a = annihilation(pad);
  const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const Eigen::MatrixXcd d = gen.exp();
  return {cutoff, false, d.topLeftCorner(cutoff, cutoff)};
}

FockOperator displaced_parity(int cutoff, cplx alpha) {
  const int pad = cutoff + 40 + static_cast<int>(std::ceil(4.0 * std::norm(alpha)));
  const Eigen::MatrixXcd a = annihilation(pad);
  const Eigen::MatrixXcd d = (alpha * a.adjoint() - std::conj(alpha) * a).exp();
  Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(pad, pad);
  for (int n = 0; n < pad; ++n) pi(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  const Eigen::MatrixXcd full = d * pi * d.adjoint();
  return {cutoff, false, full.topLeftCorner(cutoff, cutoff)};
}

namespace {

FockOperator pseudospin(int cutoff, cplx upper) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 0; 2 * n + 1 < cutoff; ++n) {
    m(2 * n, 2 * n + 1) = upper;
    m(2 * n + 1, 2 * n) = std::conj(upper);
  }
  return {cutoff, false, std::move(m)};
}

}  // namespace

FockOperator pseudospin_x(int cutoff) { return pseudospin(cutoff, 1.0); }
FockOperator pseudospin_y(int cutoff) { return pseudospin(cutoff, cplx(0.0, -1.0)); }
FockOperator pseudospin_z(int cutoff) { return parity_operator(cutoff); }

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
  if (a.two_mode || b.two_mode || a.cutoff != b.cutoff) {
    throw InvalidArgument("tensor needs single-mode operators of equal cutoff");
  }
  const int n = a.cutoff;
  Eigen::MatrixXcd m(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.block(i * n, j * n, n, n) = a.matrix(i, j) * b.matrix;
  }
  return {n, true, std::move(m)};
}

cplx expectation(const FockDensityMatrix& rho, const FockOperator& op) {
  if (!op.two_mode || op.cutoff != rho.cutoff) {
    throw InvalidArgument("operator and density matrix cutoffs differ");
  }
  return (rho.rho.array() * op.matrix.transpose().array()).sum();
}

cplx expectation(const FockDensityMatrix& rho, const FockOperator& a,
                 const FockOperator& b) {
  if (a.two_mode || b.two_mode || a.cutoff != rho.cutoff || b.cutoff != rho.cutoff) {
    throw InvalidArgument("operator and density matrix cutoffs differ");
  }
  const int n = rho.cutoff;
  const Eigen::MatrixXcd bt = b.matrix.transpose();
  cplx total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx aji = a.matrix(j, i);
      if (aji == cplx(0.0)) continue;
      total += aji * (rho.rho.block(i * n, j * n, n, n).array() * bt.array()).sum();
    }
  }
  return total;
}

Eigen::MatrixXcd partial_transpose_b(const FockDensityMatrix& rho) {
  const int n = rho.cutoff;
  Eigen::MatrixXcd out(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.block(i * n, j * n, n, n) = rho.rho.block(i * n, j * n, n, n).transpose();
    }
  }
  return out;
}

FockDensityMatrix beam_splitter(const FockDensityMatrix& rho, double theta,
                                int out_cutoff) {
  const int n = rho.cutoff;
  const int m = out_cutoff > 0 ? out_cutoff : 2 * n - 1;
  // Columns: input basis |i, j>, i, j < n. Rows: output basis, cutoff m.
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m * m, n * n);
  for (int total = 0; total <= 2 * (n - 1); ++total) {
    // Block basis |k, total - k>, k = 0..total.
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(total + 1, total + 1);
    for (int k = 0; k < total; ++k) {
      // a^dag b |k, K-k> = sqrt((k+1)(K-k)) |k+1, K-k-1>
      const double v = theta * std::sqrt((k + 1.0) * (total - k));
      g(k + 1, k) += v;
      g(k, k + 1) -= v;
    }
    const Eigen::MatrixXd block = g.exp();
    for (int col = 0; col <= total; ++col) {
      const int ia = col, ib = total - col;
      if (ia >= n || ib >= n) continue;
      for (int row = 0; row <= total; ++row) {
        const int oa = row, ob = total - row;
        if (oa >= m || ob >= m) continue;
        u(oa * m + ob, ia * n + ib) = block(row, col);
      }
    }
  }
  FockDensityMatrix out(m, u * rho.rho * u.adjoint());
  if (rho.trace() - out.trace() > 1e-8) {
    throw CutoffError("beam splitter output cutoff truncates the state");
  }
  return out;
}

double parity_wigner(const FockDensityMatrix& rho, const PhaseVec4& v) {
  const int n = rho.cutoff;
  const FockOperator a = displaced_parity(n, cplx(v[0], v[1]) / 2.0);
  const FockOperator b = displaced_parity(n, cplx(v[2], v[3]) / 2.0);
  const cplx e = expectation(rho, a, b);
  return e.real() / (4.0 * kPi * kPi);
}

}  // namespace wigent
