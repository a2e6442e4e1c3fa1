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

#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "wigent/states.hpp"

using namespace wigent;

TEST(TmstCovariance, VacuumAtZeroSqueezing) {
  const GaussianTwoMode g = tmst_covariance({0.0, 1.0, 0.0});
  EXPECT_LT((g.cov - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(g.mean.norm(), 1e-15);
}

TEST(TmstCovariance, LosslessMatchesTmsv) {
  for (double s : {0.2, 0.5, 1.0}) {
    const GaussianTwoMode g = tmst_covariance({s, 1.0, 0.0});
    const GaussianTwoMode ref =
        GaussianTwoMode::standard_form(std::cosh(2 * s), std::cosh(2 * s), std::sinh(2 * s),
                                       -std::sinh(2 * s));
    EXPECT_LT((g.cov - ref.cov).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(TmstCovariance, StandardFormEntries) {
  const double s = 0.5, eta = 0.8, r = 0.3;
  const GaussianTwoMode g = tmst_covariance({s, eta, r});
  const double ch2 = std::pow(std::cosh(r), 2);
  const double n = eta * ch2 * std::cosh(2 * s) + (1 - eta) * ch2 + std::pow(std::sinh(r), 2);
  const double c = std::sqrt(eta) * std::cosh(r) * std::sinh(2 * s);
  EXPECT_NEAR(g.cov(0, 0), n, 1e-14);
  EXPECT_NEAR(g.cov(1, 1), n, 1e-14);
  EXPECT_NEAR(g.cov(2, 2), std::cosh(2 * s), 1e-14);
  EXPECT_NEAR(std::abs(g.cov(0, 2)), c, 1e-14);
  EXPECT_NEAR(g.cov(0, 2), -g.cov(1, 3), 1e-14);
  EXPECT_GE(g.physicality_margin(), -1e-10);
}

TEST(TmstCovariance, EntangledAboveTanhSquared) {
  EXPECT_LT(std::pow(std::tanh(0.3), 2), 0.8);
  const GaussianTwoMode g = tmst_covariance({0.5, 0.8, 0.3});
  EXPECT_NO_THROW(g.validate());
}

TEST(TmstParams, Validation) {
  EXPECT_THROW((TmstParams{-0.1, 1.0, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((TmstParams{0.1, 0.0, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((TmstParams{0.1, 1.1, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((TmstParams{0.1, 1.0, -1.0}.validate()), InvalidArgument);
  EXPECT_THROW((WernerParams{BellState::phi_plus, 1.5}.validate()), InvalidArgument);
  EXPECT_THROW((CatParams{-1.0, 0.5, CatSign::plus}.validate()), InvalidArgument);
}

TEST(Werner, OriginValues) {
  const double v = 1.0 / (4 * kPi * kPi);
  EXPECT_NEAR(werner_wigner({BellState::phi_plus, 0.0})({0, 0, 0, 0}), 0.0, 1e-16);
  EXPECT_NEAR(werner_wigner({BellState::phi_plus, 1.0})({0, 0, 0, 0}), v, 1e-15);
  EXPECT_NEAR(werner_wigner({BellState::psi_plus, 1.0})({0, 0, 0, 0}), -v, 1e-15);
}

TEST(Werner, MaximallyMixedIsProduct) {
  const WignerField w = werner_wigner({BellState::phi_plus, 0.0});
  Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  const SingleModeWigner m = single_mode_fock(half);
  const std::vector<PhaseVec4> pts = {{0.3, -0.2, 1.1, 0.4}, {1.5, 0.5, -0.7, -1.2}, {0, 2, 0, 0}};
  for (const auto& v : pts) {
    EXPECT_NEAR(w(v), m.eval(v[0], v[1]) * m.eval(v[2], v[3]), 1e-15);
  }
  const auto norm = integrate(m.eval, Region::rectangle({-8, 8, -8, 8}), QuadratureSpec{});
  EXPECT_NEAR(norm.value, 1.0, 1e-9);
}

TEST(Cat, GammaZeroIsVacuum) {
  for (double eps : {0.0, 0.4, 1.0}) {
    const WignerField w = cat_wigner({0.0, eps, CatSign::plus});
    EXPECT_NEAR(w({0, 0, 0, 0}), 1.0 / (4 * kPi * kPi), 1e-15);
    EXPECT_NEAR(w({1, 0, 0, 0}), std::exp(-0.5) / (4 * kPi * kPi), 1e-15);
  }
}

TEST(Cat, MinusAtGammaZeroRejected) {
  EXPECT_THROW(cat_wigner({0.0, 0.5, CatSign::minus}), InvalidArgument);
}

TEST(Cat, MinusOriginMatchesFock) {
  const CatParams p{1.0, 1.0, CatSign::minus};
  const double closed = cat_wigner(p)({0, 0, 0, 0});
  const double fock = fock_wigner(state_to_fock(p, 16))({0, 0, 0, 0});
  EXPECT_NEAR(closed, fock, 1e-10);
  EXPECT_NEAR(closed, -1.0 / (4 * kPi * kPi), 1e-12);
}

TEST(Normalization, EveryFactoryIntegratesToOne) {
  const std::vector<WignerField> fields = {
      tmst_wigner({0.5, 0.7, 0.2}),
      werner_wigner({BellState::phi_plus, 0.6}),
      werner_wigner({BellState::psi_plus, 1.0}),
      cat_wigner({1.0, 0.5, CatSign::plus}),
      cat_wigner({1.5, 1.0, CatSign::minus}),
  };
  for (const WignerField& w : fields) {
    EXPECT_NEAR(wigent::test::integrate_field(w, 60), 1.0, 1e-6);
  }
}

TEST(Fock, WernerPhiPlusPure) {
  const FockDensityMatrix r = state_to_fock(WernerParams{BellState::phi_plus, 1.0}, 2);
  EXPECT_NEAR(r.rho(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(r.rho(0, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(r.rho(3, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(r.rho(3, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(r.rho.cwiseAbs().sum(), 2.0, 1e-15);
}

TEST(Fock, TmsvSchmidtCoefficients) {
  const double s = 0.5;
  const FockDensityMatrix r = state_to_fock(TmstParams{s, 1.0, 0.0}, 20);
  EXPECT_LT(r.trace_deficit(), 1e-8);
  for (int n = 0; n < 6; ++n) {
    const double lam = std::pow(std::tanh(s), n) / std::cosh(s);
    EXPECT_NEAR(std::abs(r.rho(r.index(n, n), r.index(0, 0))), lam / std::cosh(s), 1e-14);
  }
}

TEST(Fock, CatTrace) {
  const FockDensityMatrix r = state_to_fock(CatParams{1.0, 1.0, CatSign::minus}, 16);
  EXPECT_GE(r.trace(), 1.0 - 1e-8);
  EXPECT_NO_THROW(r.validate());
}

TEST(Fock, CutoffTooSmall) {
  EXPECT_THROW(state_to_fock(TmstParams{1.0, 1.0, 0.0}, 4), CutoffError);
  EXPECT_THROW(state_to_fock(CatParams{2.0, 1.0, CatSign::plus}, 5), CutoffError);
}

TEST(Fock, DefaultCutoffs) {
  EXPECT_EQ(default_cutoff(WernerParams{}), 2);
  EXPECT_EQ(default_cutoff(TmstParams{0.5, 1.0, 0.0}), 20);
  EXPECT_EQ(default_cutoff(CatParams{1.0, 1.0, CatSign::plus}), 17);
}

TEST(Engines, GaussianMatchesFockOnTmsv) {
  for (double s : {0.3, 1.0}) {
    const TmstParams p{s, 1.0, 0.0};
    EXPECT_LT(wigent::test::grid_disagreement(tmst_wigner(p), fock_wigner(state_to_fock(p, 30))),
              1e-6);
  }
}

TEST(Engines, FockConvergesOnStrongTmsvWithCutoff) {
  const TmstParams p{1.0, 1.0, 0.0};
  const double d30 = wigent::test::grid_disagreement(tmst_wigner(p), fock_wigner(state_to_fock(p, 30)));
  const double d50 = wigent::test::grid_disagreement(tmst_wigner(p), fock_wigner(state_to_fock(p, 50)));
  EXPECT_LT(d50, 1e-6);
  EXPECT_LT(d50, d30 / 100);
}

TEST(Engines, ClosedFormMatchesFockOnTmstWernerCat) {
  const TmstParams t{0.5, 0.6, 0.3};
  EXPECT_LT(wigent::test::grid_disagreement(tmst_wigner(t), fock_wigner(state_to_fock(t, 30))),
            1e-6);
  for (BellState b : {BellState::phi_plus, BellState::psi_plus}) {
    const WernerParams w{b, 0.7};
    EXPECT_LT(wigent::test::grid_disagreement(werner_wigner(w), fock_wigner(state_to_fock(w))),
              1e-12);
  }
  for (CatSign sg : {CatSign::plus, CatSign::minus}) {
    const CatParams c{1.2, 0.8, sg};
    EXPECT_LT(wigent::test::grid_disagreement(cat_wigner(c), fock_wigner(state_to_fock(c))),
              1e-9);
  }
}
