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

#include "wigent/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "wigent/core.hpp"
#include "wigent/fock.hpp"

namespace wigent {

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d om = Eigen::Matrix4d::Zero();
  om(0, 1) = 1.0;
  om(1, 0) = -1.0;
  om(2, 3) = 1.0;
  om(3, 2) = -1.0;
  return om;
}

Eigen::Matrix4d partial_transpose_symplectic_form() {
  Eigen::Matrix4d om = symplectic_form();
  om(2, 3) = -1.0;
  om(3, 2) = 1.0;
  return om;
}

GaussianTwoMode GaussianTwoMode::standard_form(double n, double m, double c1,
                                               double c2) {
  GaussianTwoMode g;
  g.cov << n, 0, c1, 0,  //
      0, n, 0, c2,       //
      c1, 0, m, 0,       //
      0, c2, 0, m;
  return g;
}

double GaussianTwoMode::physicality_margin() const {
  const Eigen::Matrix4cd h =
      cov.cast<cplx>() + cplx(0.0, 1.0) * symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void GaussianTwoMode::validate() const {
  if (!cov.allFinite() || !mean.allFinite()) {
    throw InvalidArgument("Gaussian state has non-finite entries");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("covariance matrix is not symmetric");
  }
  const double margin = physicality_margin();
  if (margin < -1e-10) {
    std::ostringstream os;
    os << "covariance violates V + i Omega >= 0 (min eigenvalue " << margin
       << ")";
    throw InvalidArgument(os.str());
  }
}

GaussianTwoMode product_gaussian(const Eigen::Vector2d& mean_a,
                                 const Eigen::Matrix2d& cov_a,
                                 const Eigen::Vector2d& mean_b,
                                 const Eigen::Matrix2d& cov_b) {
  GaussianTwoMode g;
  g.mean << mean_a, mean_b;
  g.cov.setZero();
  g.cov.topLeftCorner<2, 2>() = cov_a;
  g.cov.bottomRightCorner<2, 2>() = cov_b;
  return g;
}

}  // namespace wigent
