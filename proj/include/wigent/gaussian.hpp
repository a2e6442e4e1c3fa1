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

namespace wigent {

// Two-mode symplectic form Omega = J (+) J with J = [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

// Symplectic form seen by a state partially transposed on mode B: J (+) -J.
Eigen::Matrix4d partial_transpose_symplectic_form();

// Gaussian two-mode state in (x_A, p_A, x_B, p_B) ordering; the covariance
// uses the [x,p] = 2i convention, so the vacuum has V = I.
struct GaussianTwoMode {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();

  static GaussianTwoMode vacuum() { return {}; }

  //     [ n  0  c1 0  ]
  // V = [ 0  n  0  c2 ]
  //     [ c1 0  m  0  ]
  //     [ 0  c2 0  m  ]
  static GaussianTwoMode standard_form(double n, double m, double c1,
                                       double c2);

  // Smallest eigenvalue of the Hermitian matrix V + i Omega.
  double physicality_margin() const;

  // Throws InvalidArgument on asymmetric or unphysical covariance.
  void validate() const;
};

// Product of two single-mode Gaussians (block-diagonal covariance).
GaussianTwoMode product_gaussian(const Eigen::Vector2d& mean_a,
                                 const Eigen::Matrix2d& cov_a,
                                 const Eigen::Vector2d& mean_b,
                                 const Eigen::Matrix2d& cov_b);

}  // namespace wigent
