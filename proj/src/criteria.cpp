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

#include "wigent/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wigent/oracle.hpp"
#include "wigent/simplex.hpp"
#include "wigent/states.hpp"

namespace wigent {

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::C1:
      return "C1";
    case CriterionId::C2:
      return "C2";
    case CriterionId::C3:
      return "C3";
    case CriterionId::PurityS1:
      return "PurityS1";
    case CriterionId::Simon:
      return "Simon";
    case CriterionId::Duan:
      return "Duan";
    case CriterionId::PPT:
      return "PPT";
    case CriterionId::PseudospinEPR:
      return "PseudospinEPR";
    case CriterionId::BellCHSH:
      return "BellCHSH";
  }
  return "unknown";
}

IntegralResult slice_integral(const SliceField& slice, const QuadratureSpec& spec,
                              bool closed_form) {
  if (closed_form) {
    if (auto v = slice.gaussian_integral()) return {*v, 0.0, 1};
  }
  const Box box = slice.truncation_box();
  if (box.empty()) return {};
  return integrate([&slice](double x, double p) { return slice(x, p); },
                   Region::full_plane(), spec.with_truncation(box));
}

IntegralResult slice_integral_abs(const SliceField& slice, const Region& region,
                                  const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  if (region.kind() == Region::Kind::full_plane) {
    const Box box = slice.truncation_box();
    if (box.empty()) return {};
    s = spec.with_truncation(box);
  }
  return integrate_abs([&slice](double x, double p) { return slice(x, p); }, region, s);
}

CriterionReport criterion1(const WignerField& w, const Transform2& t, double theta,
                           const QuadratureSpec& spec, bool closed_form) {
  require_open_angle(theta, "criterion1");
  const IntegralResult r = slice_integral(make_slice(w, t, theta), spec, closed_form);
  CriterionReport rep;
  rep.id = CriterionId::C1;
  rep.value = r.value;
  rep.bound = 1.0 / (2.0 * kPi);
  rep.error_estimate = r.error_estimate;
  rep.violated = rep.value > rep.bound + rep.error_estimate;
  rep.transform = t;
  rep.theta = theta;
  rep.region = Region::full_plane();
  return rep;
}

CriterionReport criterion2(const WignerField& w, const Transform2& t, double theta,
                           const Region& region, const QuadratureSpec& spec) {
  require_open_angle(theta, "criterion2");
  const double s2 = std::abs(std::sin(2.0 * theta));
  if (s2 < 1e-9) {
    throw InvalidArgument("criterion2: |sin 2 theta| < 1e-9, bound is degenerate");
  }
  const IntegralResult r = slice_integral_abs(make_slice(w, t, theta), region, spec);
  CriterionReport rep;
  rep.id = CriterionId::C2;
  rep.value = r.value;
  rep.bound = 1.0 / (2.0 * kPi * s2);
  rep.error_estimate = r.error_estimate;
  rep.violated = rep.value > rep.bound + rep.error_estimate;
  rep.transform = t;
  rep.theta = theta;
  rep.region = region;
  return rep;
}

CriterionReport criterion3(const WignerField& w, const Transform2& t,
                           const QuadratureSpec& spec, bool closed_form) {
  const IntegralResult r = slice_integral(make_direct_slice(w, t), spec, closed_form);
  CriterionReport rep;
  rep.id = CriterionId::C3;
  rep.value = r.value;
  rep.bound = 0.0;
  rep.error_estimate = r.error_estimate;
  rep.violated = rep.value < -rep.error_estimate;
  rep.transform = t;
  rep.region = Region::full_plane();
  return rep;
}

namespace {

double mixture_purity(
    const std::vector<std::pair<double, std::pair<Eigen::Vector2d, Eigen::Matrix2d>>>& mix) {
  // 4 pi sum_ij w_i w_j N(mu_i - mu_j; 0, S_i + S_j)
  double total = 0.0;
  for (const auto& [wi, gi] : mix) {
    for (const auto& [wj, gj] : mix) {
      const Eigen::Matrix2d s = gi.second + gj.second;
      const Eigen::Vector2d d = gi.first - gj.first;
      total += wi * wj * std::exp(-0.5 * d.dot(s.inverse() * d)) /
               (2.0 * kPi * std::sqrt(s.determinant()));
    }
  }
  return 4.0 * kPi * total;
}

double fock_purity(const FockDensityMatrix& rho, double theta) {
  const FockDensityMatrix pt(rho.cutoff, partial_transpose_b(rho));
  const FockDensityMatrix out = beam_splitter(pt, theta);
  const Eigen::MatrixXcd rb = reduce_to_b(out);
  return (rb * rb).trace().real();
}

}  // namespace

CriterionReport purity_s1(const WignerField& w, double theta, const QuadratureSpec& spec) {
  require_open_angle(theta, "purity_s1");
  const ReducedModeWigner red(w, theta, Transform2::p_reflection());
  CriterionReport rep;
  rep.id = CriterionId::PurityS1;
  rep.bound = 1.0;
  rep.theta = theta;
  rep.transform = Transform2::p_reflection();
  if (auto mix = red.gaussian_output()) {
    rep.value = mixture_purity(*mix);
  } else if (w.fock()) {
    rep.value = fock_purity(*w.fock(), theta);
  } else {
    QuadratureSpec inner = spec;
    inner.throw_on_nonconvergence = false;
    const IntegralResult r = integrate(
        [&](double X, double P) {
          const double v = red.evaluate(X, P, inner, false);
          return v * v;
        },
        Region::full_plane(), spec.with_truncation(red.output_box()));
    rep.value = 4.0 * kPi * r.value;
    rep.error_estimate = 4.0 * kPi * r.error_estimate;
  }
  rep.violated = rep.value > 1.0 + std::max(spec.tolerance, rep.error_estimate);
  return rep;
}

CriterionReport simon_check(const GaussianTwoMode& g) {
  g.validate();
  const Eigen::Matrix4cd h =
      g.cov.cast<cplx>() + cplx(0.0, 1.0) * partial_transpose_symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  CriterionReport rep;
  rep.id = CriterionId::Simon;
  rep.value = es.eigenvalues()(0);
  rep.bound = 0.0;
  rep.violated = rep.value < -1e-10;
  return rep;
}

CriterionReport duan_check(const GaussianTwoMode& g) {
  g.validate();
  const Eigen::Matrix4d& v = g.cov;
  CriterionReport rep;
  rep.id = CriterionId::Duan;
  rep.value = v(0, 0) + v(2, 2) + 2.0 * v(0, 2) + v(1, 1) + v(3, 3) - 2.0 * v(1, 3);
  rep.bound = 4.0;
  rep.violated = rep.value < 4.0 - 1e-10;
  return rep;
}

namespace {

std::string truncation_warning(const FockDensityMatrix& rho) {
  const double deficit = rho.trace_deficit();
  if (deficit <= 1e-6) return {};
  std::ostringstream os;
  os << "density matrix trace deficit " << deficit << " exceeds 1e-6; raise the cutoff";
  return os.str();
}

}  // namespace

CriterionReport ppt_check(const FockDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(partial_transpose_b(rho),
                                                     Eigen::EigenvaluesOnly);
  CriterionReport rep;
  rep.id = CriterionId::PPT;
  rep.value = es.eigenvalues()(0);
  rep.bound = 0.0;
  rep.violated = rep.value < -1e-10;
  rep.warning = truncation_warning(rho);
  return rep;
}

CriterionReport pseudospin_epr(const FockDensityMatrix& rho) {
  const int n = rho.cutoff;
  const double cx = expectation(rho, pseudospin_x(n), pseudospin_x(n)).real();
  const double cy = expectation(rho, pseudospin_y(n), pseudospin_y(n)).real();
  const double cz = expectation(rho, pseudospin_z(n), pseudospin_z(n)).real();
  CriterionReport rep;
  rep.id = CriterionId::PseudospinEPR;
  rep.value = cx * cx + cy * cy + cz * cz;
  rep.bound = 1.0;
  rep.violated = rep.value > 1.0 + 1e-8;
  rep.warning = truncation_warning(rho);
  return rep;
}

double parity_correlator(const WignerField& w, cplx alpha_a, cplx alpha_b) {
  return kBellScale * w(-2.0 * alpha_a.real(), -2.0 * alpha_a.imag(),
                        -2.0 * alpha_b.real(), -2.0 * alpha_b.imag());
}

double chsh_sum(const WignerField& w, const BellSettings& a) {
  return parity_correlator(w, a[0], a[2]) + parity_correlator(w, a[1], a[2]) +
         parity_correlator(w, a[0], a[3]) - parity_correlator(w, a[1], a[3]);
}

CriterionReport bell_chsh(const WignerField& w, const BellSettings& alphas) {
  CriterionReport rep;
  rep.id = CriterionId::BellCHSH;
  rep.value = std::abs(chsh_sum(w, alphas));
  rep.bound = 2.0;
  rep.violated = rep.value > 2.0 + 1e-8;
  return rep;
}

double calibrate_bell_scale(std::uint64_t seed) {
  const TmstParams tmsv{0.3, 1.0, 0.0};
  const FockDensityMatrix rho = state_to_fock(tmsv, 30);
  const WignerField w = tmst_wigner(tmsv);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  double num = 0.0, den = 0.0;
  for (int k = 0; k < 10; ++k) {
    const cplx aa(u(rng), u(rng)), ab(u(rng), u(rng));
    // P(alpha) = D(alpha)^dag Pi D(alpha) = D(-alpha) Pi D(-alpha)^dag
    const double oracle =
        expectation(rho, displaced_parity(30, -aa), displaced_parity(30, -ab)).real();
    const double model = w(-2.0 * aa.real(), -2.0 * aa.imag(), -2.0 * ab.real(),
                           -2.0 * ab.imag());
    num += oracle * model;
    den += model * model;
  }
  return num / den;
}

namespace {

BellSettings unpack(const std::vector<double>& v) {
  return {cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5]), cplx(v[6], v[7])};
}

std::vector<std::vector<double>> bell_starts(const BellSearch& search) {
  std::mt19937_64 rng(search.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 1.0);
  std::vector<std::vector<double>> starts(search.starts, std::vector<double>(8));
  for (auto& s : starts) {
    const double sc = scale(rng);
    for (double& x : s) x = sc * normal(rng);
  }
  return starts;
}

}  // namespace

CriterionReport bell_optimize(const WignerField& w, const BellSearch& search) {
  double best = -1.0;
  BellSettings best_alphas{};
  SimplexOptions opts;
  opts.max_iterations = search.max_iterations;
  opts.size_tolerance = 1e-10;
  opts.step = {0.1};
  for (const auto& x0 : bell_starts(search)) {
    const SimplexResult r = nelder_mead(
        [&w](const std::vector<double>& v) { return -std::abs(chsh_sum(w, unpack(v))); },
        x0, opts);
    if (-r.value > best) {
      best = -r.value;
      best_alphas = unpack(r.x);
    }
  }
  return bell_chsh(w, best_alphas);
}

BellThreshold bell_epsilon_min(const std::function<WignerField(double)>& family,
                               const BellSearch& search) {
  const WignerField w0 = family(0.0), w1 = family(1.0), wh = family(0.5);
  for (const PhaseVec4& v : {PhaseVec4{0.3, -0.2, 0.5, 0.1}, PhaseVec4{-1.0, 0.4, 0.2, 0.9}}) {
    if (std::abs(wh(v) - 0.5 * (w0(v) + w1(v))) > 1e-12) {
      throw InvalidArgument("bell_epsilon_min: family is not affine in epsilon");
    }
  }
  // Smallest eps in [0, 1] with |S0 + eps (S1 - S0)| > 2, or a penalty above
  // 1 that still rewards larger |B| when no crossing exists.
  auto crossing = [&](const std::vector<double>& v) {
    const BellSettings a = unpack(v);
    const double s0 = chsh_sum(w0, a), s1 = chsh_sum(w1, a);
    if (std::abs(s0) > 2.0) return 0.0;
    for (double target : {2.0, -2.0}) {
      if ((target > 0 && s1 > target) || (target < 0 && s1 < target)) {
        return (target - s0) / (s1 - s0);
      }
    }
    return 2.0 - 0.1 * std::max(std::abs(s0), std::abs(s1));
  };
  SimplexOptions opts;
  opts.max_iterations = search.max_iterations;
  opts.size_tolerance = 1e-10;
  opts.step = {0.1};
  BellThreshold out;
  double best = 3.0;
  for (const auto& x0 : bell_starts(search)) {
    const SimplexResult r = nelder_mead(crossing, x0, opts);
    if (r.value < best) {
      best = r.value;
      out.alphas = unpack(r.x);
    }
  }
  out.found = best <= 1.0;
  out.epsilon_min = out.found ? best : 1.0;
  return out;
}

}  // namespace wigent
