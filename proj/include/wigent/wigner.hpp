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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wigent/core.hpp"
#include "wigent/fock.hpp"
#include "wigent/gaussian.hpp"

namespace wigent {

enum class Backend { gaussian, closed_form, fock };

std::string to_string(Backend b);

// Per-mode square support used to truncate full-plane integrals. Mode k
// occupies [center - half_width, center + half_width] on both quadratures.
struct Envelope {
  PhaseVec4 center{};
  double half_width_a = 8.0;
  double half_width_b = 8.0;

  Box mode_box(int mode) const;
  // Smallest envelope containing both.
  Envelope merge(const Envelope& other) const;
};

// Weighted Gaussian term of a mixture; weights may be of either sign only in
// intermediate algebra, fields built by the factories carry weights > 0.
struct GaussianComponent {
  double weight = 1.0;
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();
};

// Component with its precision matrix and sqrt(det V) cached.
struct PreparedComponent {
  double weight = 1.0;
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d precision = Eigen::Matrix4d::Identity();
  double sqrt_det = 1.0;
};

// Two-mode Wigner function W_AB(x_A, p_A, x_B, p_B), normalised to 1 over R^4.
//
// Every field has a point evaluator and an envelope. Fields that are exactly
// a mixture of Gaussians or that were built from a density matrix keep that
// representation so criteria can use closed-form or Fock-space routes.
class WignerField {
 public:
  using Evaluator = std::function<double(const PhaseVec4&)>;

  WignerField(Backend backend, Evaluator eval, Envelope envelope);

  double operator()(const PhaseVec4& v) const { return (*eval_)(v); }
  double operator()(double xa, double pa, double xb, double pb) const {
    return (*eval_)({xa, pa, xb, pb});
  }

  Backend backend() const { return backend_; }
  const Envelope& envelope() const { return envelope_; }

  // Non-null when the field is exactly sum_i w_i G(mean_i, cov_i).
  const std::vector<GaussianComponent>* gaussian_mixture() const {
    return mixture_.get();
  }
  const std::vector<PreparedComponent>* prepared_mixture() const {
    return prepared_.get();
  }
  // Non-null when the field came from (or equals) a Fock density matrix.
  const FockDensityMatrix* fock() const { return fock_.get(); }

  WignerField with_gaussian_mixture(std::vector<GaussianComponent> mix) const;
  WignerField with_fock(FockDensityMatrix rho) const;
  WignerField with_envelope(const Envelope& env) const;

 private:
  Backend backend_;
  std::shared_ptr<const Evaluator> eval_;
  Envelope envelope_;
  std::shared_ptr<const std::vector<GaussianComponent>> mixture_;
  std::shared_ptr<const std::vector<PreparedComponent>> prepared_;
  std::shared_ptr<const FockDensityMatrix> fock_;
};

// Single-mode Wigner function with its support box.
struct SingleModeWigner {
  std::function<double(double, double)> eval;
  PhasePoint center;
  double half_width = 8.0;
  // Present when the mode is Gaussian.
  std::optional<std::pair<Eigen::Vector2d, Eigen::Matrix2d>> gaussian;
  // Present when the mode is given by a Fock density matrix.
  std::optional<Eigen::MatrixXcd> fock;
};

// --- engines ---------------------------------------------------------------

// exp(-1/2 (v - mean)^T V^-1 (v - mean)) / ((2 pi)^2 sqrt(det V)).
// Throws InvalidArgument when det V < 1e-12 or the state is unphysical.
WignerField gaussian_wigner(const GaussianTwoMode& g);

// Convex combination of Gaussian states.
WignerField gaussian_mixture_wigner(std::vector<GaussianComponent> components);

// Evaluates (1/2pi)^2 Tr[rho (K_A (x) K_B)] with the displaced-parity kernel
// K(n, m) = (-1)^m <n|D(x + i p)|m>, i.e. the Laguerre closed form.
WignerField fock_wigner(const FockDensityMatrix& rho);

// Single-mode kernel matrix (n, m) -> (-1)^m <n|D(beta)|m>, beta = x + i p.
Eigen::MatrixXcd parity_kernel(int cutoff, double x, double p);

SingleModeWigner single_mode_gaussian(const Eigen::Vector2d& mean,
                                      const Eigen::Matrix2d& cov);
SingleModeWigner single_mode_fock(const Eigen::MatrixXcd& rho);
double single_mode_fock_value(const Eigen::MatrixXcd& rho, double x, double p);

// W_A(x_A, p_A) * W_B(x_B, p_B). Carries the Gaussian or Fock representation
// when both factors do (Fock factors must share the cutoff).
WignerField product_wigner(const SingleModeWigner& a, const SingleModeWigner& b);

// sum_i w_i W_i with w_i >= 0 summing to 1.
WignerField mix_fields(const std::vector<std::pair<double, WignerField>>& parts);

// --- slices ----------------------------------------------------------------

// Affine embedding of the (x, p) plane into R^4: v = map * (x, p) + offset.
struct AffineSlice {
  Eigen::Matrix<double, 4, 2> map = Eigen::Matrix<double, 4, 2>::Zero();
  Eigen::Vector4d offset = Eigen::Vector4d::Zero();

  PhaseVec4 point(double x, double p) const;
};

// Two-dimensional restriction of a field along an affine slice.
class SliceField {
 public:
  SliceField(WignerField field, AffineSlice slice);

  double operator()(double x, double p) const {
    return field_(slice_.point(x, p));
  }
  const WignerField& field() const { return field_; }
  const AffineSlice& slice() const { return slice_; }

  // Box in (x, p) outside which the field's envelope says the slice is
  // negligible. Empty when the envelope and slice do not meet.
  Box truncation_box() const;

  // Exact integral over R^2 for Gaussian-mixture fields.
  std::optional<double> gaussian_integral() const;

 private:
  WignerField field_;
  AffineSlice slice_;
};

// (x, p) -> W(x cos(theta), p cos(theta), x' sin(theta), p' sin(theta)) with
// (x', p') = t(x, p).
SliceField make_slice(const WignerField& w, const Transform2& t, double theta);

// (x, p) -> W(x, p, x', p').
SliceField make_direct_slice(const WignerField& w, const Transform2& t);

struct QuadratureSpec;

// Reduced Wigner function of the second beam-splitter output after mode B is
// remapped by t (offsets scaled by sin(theta)):
//   (X, P) -> int W(cx + sX, cp + sP, t_h(sx - cX, sp - cP)) dx dp,
// with c = cos(theta), s = sin(theta) and the splitter [[c, s], [s, -c]].
// At (X, P) = 0 this equals the criterion-I slice integral for (t, theta).
class ReducedModeWigner {
 public:
  ReducedModeWigner(WignerField w, double theta, Transform2 t);

  double theta() const { return theta_; }
  const Transform2& transform() const { return t_; }

  // Slice whose full-plane integral is the reduced value at (X, P).
  SliceField slice_at(double X, double P) const;

  // Quadrature evaluation; closed form is used for Gaussian mixtures when
  // `allow_closed_form` is set.
  double operator()(double X, double P) const;
  double evaluate(double X, double P, const QuadratureSpec& spec,
                  bool allow_closed_form = true) const;

  // Output-mode mixture when the input is a Gaussian mixture.
  std::optional<std::vector<std::pair<double, std::pair<Eigen::Vector2d,
                                                        Eigen::Matrix2d>>>>
  gaussian_output() const;

  // Support box of the output mode in (X, P).
  Box output_box() const;

 private:
  WignerField w_;
  double theta_;
  Transform2 t_;
};

ReducedModeWigner reduced_mode_wigner(const WignerField& w, double theta,
                                      const Transform2& t);

}  // namespace wigent
