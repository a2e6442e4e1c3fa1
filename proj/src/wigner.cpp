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

#include "wigent/wigner.hpp"

#include <algorithm>
#include <cmath>

#include "wigent/quadrature.hpp"

namespace wigent {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::gaussian:
      return "gaussian";
    case Backend::closed_form:
      return "closed-form";
    case Backend::fock:
      return "fock";
  }
  return "unknown";
}

Box Envelope::mode_box(int mode) const {
  const double cx = center[2 * mode], cp = center[2 * mode + 1];
  const double h = mode == 0 ? half_width_a : half_width_b;
  return {cx - h, cx + h, cp - h, cp + h};
}

Envelope Envelope::merge(const Envelope& o) const {
  Envelope out;
  for (int mode = 0; mode < 2; ++mode) {
    const Box a = mode_box(mode), b = o.mode_box(mode);
    const Box u{std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max),
                std::min(a.p_min, b.p_min), std::max(a.p_max, b.p_max)};
    out.center[2 * mode] = 0.5 * (u.x_min + u.x_max);
    out.center[2 * mode + 1] = 0.5 * (u.p_min + u.p_max);
    const double h = 0.5 * std::max(u.width(), u.height());
    (mode == 0 ? out.half_width_a : out.half_width_b) = h;
  }
  return out;
}

WignerField::WignerField(Backend backend, Evaluator eval, Envelope envelope)
    : backend_(backend),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      envelope_(envelope) {}

WignerField WignerField::with_gaussian_mixture(
    std::vector<GaussianComponent> mix) const {
  WignerField out = *this;
  std::vector<PreparedComponent> prep;
  prep.reserve(mix.size());
  for (const GaussianComponent& c : mix) {
    prep.push_back({c.weight, c.mean, c.cov.inverse(), std::sqrt(c.cov.determinant())});
  }
  out.mixture_ =
      std::make_shared<const std::vector<GaussianComponent>>(std::move(mix));
  out.prepared_ =
      std::make_shared<const std::vector<PreparedComponent>>(std::move(prep));
  return out;
}

WignerField WignerField::with_fock(FockDensityMatrix rho) const {
  WignerField out = *this;
  out.fock_ = std::make_shared<const FockDensityMatrix>(std::move(rho));
  return out;
}

WignerField WignerField::with_envelope(const Envelope& env) const {
  WignerField out = *this;
  out.envelope_ = env;
  return out;
}

namespace {

constexpr double kSigmas = 8.0;

struct PreparedGaussian {
  double norm;  // weight / ((2 pi)^2 sqrt det V)
  Eigen::Vector4d mean;
  Eigen::Matrix4d inv;
};

Envelope gaussian_envelope(const std::vector<GaussianComponent>& comps) {
  Envelope env;
  bool first = true;
  for (const GaussianComponent& c : comps) {
    Envelope e;
    for (int mode = 0; mode < 2; ++mode) {
      const Eigen::Matrix2d block = c.cov.block<2, 2>(2 * mode, 2 * mode);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block,
                                                        Eigen::EigenvaluesOnly);
      const double sigma = std::sqrt(std::max(es.eigenvalues()(1), 0.0));
      e.center[2 * mode] = c.mean(2 * mode);
      e.center[2 * mode + 1] = c.mean(2 * mode + 1);
      (mode == 0 ? e.half_width_a : e.half_width_b) = kSigmas * sigma;
    }
    env = first ? e : env.merge(e);
    first = false;
  }
  return env;
}

double gaussian_density(const std::vector<PreparedGaussian>& comps,
                        const PhaseVec4& v) {
  const Eigen::Vector4d x(v[0], v[1], v[2], v[3]);
  double total = 0.0;
  for (const PreparedGaussian& g : comps) {
    const Eigen::Vector4d d = x - g.mean;
    total += g.norm * std::exp(-0.5 * d.dot(g.inv * d));
  }
  return total;
}

// <n|D(beta)|m> into a zeroed column-major cutoff x cutoff buffer; lag needs
// cutoff entries of scratch.
void fill_displacement(int cutoff, cplx beta, cplx* out, double* lag) {
  const double y = std::norm(beta);
  if (y == 0.0) {
    for (int k = 0; k < cutoff; ++k) out[k + k * cutoff] = 1.0;
    return;
  }
  const double r = std::sqrt(y);
  const cplx unit = beta / r;
  double base = std::exp(-0.5 * y);  // r^k e^{-y/2} / sqrt(k!)
  cplx phase = 1.0;                  // (beta / r)^k
  for (int k = 0; k < cutoff; ++k) {
    if (k > 0) {
      base *= r / std::sqrt(static_cast<double>(k));
      phase *= unit;
    }
    // L_j^{(k)}(y), j = 0 .. cutoff-1-k
    const int jmax = cutoff - 1 - k;
    lag[0] = 1.0;
    if (jmax >= 1) lag[1] = 1.0 + k - y;
    for (int j = 1; j < jmax; ++j) {
      lag[j + 1] = ((2.0 * j + 1.0 + k - y) * lag[j] - (j + k) * lag[j - 1]) /
                   (j + 1.0);
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double ratio = 1.0;  // sqrt(j! k! / (j + k)!)
    for (int j = 0; j <= jmax; ++j) {
      if (j > 0) ratio *= std::sqrt(j / (j + k + 0.0));
      const double v = base * ratio * lag[j];
      // n = j + k >= m = j: beta^k; n < m: (-beta*)^k
      out[(j + k) + j * cutoff] = v * phase;
      if (k > 0) out[j + (j + k) * cutoff] = sign * v * std::conj(phase);
    }
  }
}

Eigen::MatrixXcd displacement_elements(int cutoff, cplx beta) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  std::vector<double> lag(cutoff);
  fill_displacement(cutoff, beta, out.data(), lag.data());
  return out;
}

void reduced_moments(const Eigen::MatrixXcd& rho, double& mx, double& mp,
                     double& vx, double& vp) {
  const int n = static_cast<int>(rho.rows());
  cplx a = 0.0, a2 = 0.0;
  double num = 0.0;
  for (int k = 0; k < n; ++k) {
    num += k * rho(k, k).real();
    // <a> = sum_k sqrt(k) rho(k, k-1)... Tr[rho a] = sum_k sqrt(k+1) rho(k+1, k)
    if (k + 1 < n) a += std::sqrt(k + 1.0) * rho(k + 1, k);
    if (k + 2 < n) a2 += std::sqrt((k + 1.0) * (k + 2.0)) * rho(k + 2, k);
  }
  mx = 2.0 * a.real();
  mp = 2.0 * a.imag();
  const double x2 = 2.0 * a2.real() + 2.0 * num + 1.0;
  const double p2 = -2.0 * a2.real() + 2.0 * num + 1.0;
  vx = std::max(x2 - mx * mx, 1e-12);
  vp = std::max(p2 - mp * mp, 1e-12);
}

Envelope fock_envelope(const FockDensityMatrix& rho) {
  Envelope env;
  const Eigen::MatrixXcd ra = reduce_to_a(rho), rb = reduce_to_b(rho);
  double mx, mp, vx, vp;
  reduced_moments(ra, mx, mp, vx, vp);
  env.center[0] = mx;
  env.center[1] = mp;
  env.half_width_a = kSigmas * std::sqrt(std::max(vx, vp));
  reduced_moments(rb, mx, mp, vx, vp);
  env.center[2] = mx;
  env.center[3] = mp;
  env.half_width_b = kSigmas * std::sqrt(std::max(vx, vp));
  return env;
}

}  // namespace

WignerField gaussian_wigner(const GaussianTwoMode& g) {
  g.validate();
  return gaussian_mixture_wigner({GaussianComponent{1.0, g.mean, g.cov}});
}

WignerField gaussian_mixture_wigner(std::vector<GaussianComponent> components) {
  if (components.empty()) {
    throw InvalidArgument("Gaussian mixture needs at least one component");
  }
  std::vector<PreparedGaussian> prepared;
  prepared.reserve(components.size());
  for (const GaussianComponent& c : components) {
    const double det = c.cov.determinant();
    if (!(det >= 1e-12)) {
      throw InvalidArgument("covariance is (near-)singular: det V < 1e-12");
    }
    prepared.push_back({c.weight / (4.0 * kPi * kPi * std::sqrt(det)), c.mean,
                        c.cov.inverse()});
  }
  const Envelope env = gaussian_envelope(components);
  WignerField f(
      Backend::gaussian,
      [prepared = std::move(prepared)](const PhaseVec4& v) {
        return gaussian_density(prepared, v);
      },
      env);
  return f.with_gaussian_mixture(std::move(components));
}

Eigen::MatrixXcd parity_kernel(int cutoff, double x, double p) {
  Eigen::MatrixXcd k = displacement_elements(cutoff, cplx(x, p));
  for (int m = 1; m < cutoff; m += 2) k.col(m) = -k.col(m);
  return k;
}

WignerField fock_wigner(const FockDensityMatrix& rho) {
  const int n = rho.cutoff;
  auto shared = std::make_shared<const Eigen::MatrixXcd>(rho.rho);
  WignerField f(
      Backend::fock,
      [n, shared](const PhaseVec4& v) {
        const Eigen::MatrixXcd ka = parity_kernel(n, v[0], v[1]);
        const Eigen::MatrixXcd kbt =
            parity_kernel(n, v[2], v[3]).transpose();
        const Eigen::MatrixXcd& r = *shared;
        cplx total = 0.0;
        for (int m1 = 0; m1 < n; ++m1) {
          for (int n1 = 0; n1 < n; ++n1) {
            const cplx a = ka(n1, m1);
            if (a == cplx(0.0)) continue;
            total += a * (r.block(m1 * n, n1 * n, n, n).array() * kbt.array())
                             .sum();
          }
        }
        return total.real() / (4.0 * kPi * kPi);
      },
      fock_envelope(rho));
  return f.with_fock(rho);
}

double single_mode_fock_value(const Eigen::MatrixXcd& rho, double x, double p) {
  const int n = static_cast<int>(rho.rows());
  thread_local std::vector<cplx> d;
  thread_local std::vector<double> lag;
  d.assign(static_cast<std::size_t>(n) * n, cplx(0.0));
  lag.resize(n);
  fill_displacement(n, cplx(x, p), d.data(), lag.data());
  // sum_ij rho(i, j) (-1)^i <j|D|i>
  cplx total = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx col = 0.0;
    for (int j = 0; j < n; ++j) col += rho(i, j) * d[j + i * n];
    total += (i % 2 == 0) ? col : -col;
  }
  return total.real() / (2.0 * kPi);
}

SingleModeWigner single_mode_gaussian(const Eigen::Vector2d& mean,
                                      const Eigen::Matrix2d& cov) {
  const double det = cov.determinant();
  if (!(det >= 1.0 - 1e-10) || cov(0, 0) <= 0.0) {
    throw InvalidArgument("single-mode covariance violates det V >= 1");
  }
  const Eigen::Matrix2d inv = cov.inverse();
  const double norm = 1.0 / (2.0 * kPi * std::sqrt(det));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov, Eigen::EigenvaluesOnly);
  SingleModeWigner s;
  s.eval = [mean, inv, norm](double x, double p) {
    const Eigen::Vector2d d(x - mean(0), p - mean(1));
    return norm * std::exp(-0.5 * d.dot(inv * d));
  };
  s.center = {mean(0), mean(1)};
  s.half_width = kSigmas * std::sqrt(es.eigenvalues()(1));
  s.gaussian = std::make_pair(mean, cov);
  return s;
}

SingleModeWigner single_mode_fock(const Eigen::MatrixXcd& rho) {
  SingleModeWigner s;
  auto shared = std::make_shared<const Eigen::MatrixXcd>(rho);
  s.eval = [shared](double x, double p) {
    return single_mode_fock_value(*shared, x, p);
  };
  double mx, mp, vx, vp;
  reduced_moments(rho, mx, mp, vx, vp);
  s.center = {mx, mp};
  s.half_width = kSigmas * std::sqrt(std::max(vx, vp));
  s.fock = rho;
  return s;
}

WignerField product_wigner(const SingleModeWigner& a,
                           const SingleModeWigner& b) {
  Envelope env;
  env.center = {a.center.x, a.center.p, b.center.x, b.center.p};
  env.half_width_a = a.half_width;
  env.half_width_b = b.half_width;
  const bool gaussian = a.gaussian && b.gaussian;
  const bool fock = a.fock && b.fock && a.fock->rows() == b.fock->rows();
  const Backend backend =
      gaussian ? Backend::gaussian : (fock ? Backend::fock : Backend::closed_form);
  WignerField f(
      backend,
      [ea = a.eval, eb = b.eval](const PhaseVec4& v) {
        const double wa = ea(v[0], v[1]);
        if (wa == 0.0) return 0.0;
        return wa * eb(v[2], v[3]);
      },
      env);
  if (gaussian) {
    const GaussianTwoMode g = product_gaussian(a.gaussian->first, a.gaussian->second,
                                               b.gaussian->first, b.gaussian->second);
    f = f.with_gaussian_mixture({GaussianComponent{1.0, g.mean, g.cov}});
  }
  if (fock) f = f.with_fock(product_state(*a.fock, *b.fock));
  return f;
}

WignerField mix_fields(
    const std::vector<std::pair<double, WignerField>>& parts) {
  if (parts.empty()) throw InvalidArgument("mixture needs at least one part");
  double total = 0.0;
  for (const auto& [w, f] : parts) {
    if (!(w >= 0.0)) throw InvalidArgument("mixture weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("mixture weights must sum to 1");
  }
  Envelope env = parts.front().second.envelope();
  Backend backend = parts.front().second.backend();
  bool all_gaussian = true, all_fock = true;
  for (const auto& [w, f] : parts) {
    env = env.merge(f.envelope());
    if (f.backend() != backend) backend = Backend::closed_form;
    all_gaussian = all_gaussian && f.gaussian_mixture() != nullptr;
    all_fock = all_fock && f.fock() != nullptr &&
               f.fock()->cutoff == parts.front().second.fock()->cutoff;
  }
  WignerField out(
      backend,
      [parts](const PhaseVec4& v) {
        double s = 0.0;
        for (const auto& [w, f] : parts) s += w * f(v);
        return s;
      },
      env);
  if (all_gaussian) {
    std::vector<GaussianComponent> mix;
    for (const auto& [w, f] : parts) {
      for (GaussianComponent c : *f.gaussian_mixture()) {
        c.weight *= w;
        mix.push_back(c);
      }
    }
    out = out.with_gaussian_mixture(std::move(mix));
  }
  if (all_fock) {
    const int n = parts.front().second.fock()->cutoff;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (const auto& [w, f] : parts) r += w * f.fock()->rho;
    out = out.with_fock(FockDensityMatrix(n, std::move(r)));
  }
  return out;
}

PhaseVec4 AffineSlice::point(double x, double p) const {
  PhaseVec4 v;
  for (int i = 0; i < 4; ++i) v[i] = map(i, 0) * x + map(i, 1) * p + offset(i);
  return v;
}

SliceField::SliceField(WignerField field, AffineSlice slice)
    : field_(std::move(field)), slice_(slice) {}

namespace {

// Bounding box of {z : L z + c in box} for invertible 2x2 L.
std::optional<Box> preimage_box(const Eigen::Matrix2d& l,
                                const Eigen::Vector2d& c, const Box& box) {
  if (std::abs(l.determinant()) < 1e-14) return std::nullopt;
  const Eigen::Matrix2d inv = l.inverse();
  const Eigen::Vector2d center(0.5 * (box.x_min + box.x_max),
                               0.5 * (box.p_min + box.p_max));
  const Eigen::Vector2d half(0.5 * box.width(), 0.5 * box.height());
  const Eigen::Vector2d z0 = inv * (center - c);
  const Eigen::Vector2d hz = inv.cwiseAbs() * half;
  return Box{z0(0) - hz(0), z0(0) + hz(0), z0(1) - hz(1), z0(1) + hz(1)};
}

}  // namespace

Box SliceField::truncation_box() const {
  std::optional<Box> result;
  for (int mode = 0; mode < 2; ++mode) {
    const Eigen::Matrix2d l = slice_.map.block<2, 2>(2 * mode, 0);
    const Eigen::Vector2d c = slice_.offset.segment<2>(2 * mode);
    const auto b = preimage_box(l, c, field_.envelope().mode_box(mode));
    if (!b) continue;
    result = result ? result->intersect(*b) : *b;
  }
  if (!result) {
    throw InvalidArgument("slice is degenerate on both modes");
  }
  return *result;
}

std::optional<double> SliceField::gaussian_integral() const {
  const auto* mix = field_.prepared_mixture();
  if (!mix) return std::nullopt;
  const Eigen::Matrix<double, 4, 2>& l = slice_.map;
  double total = 0.0;
  for (const PreparedComponent& g : *mix) {
    const Eigen::Matrix<double, 4, 2> ql = g.precision * l;
    const Eigen::Matrix2d a = l.transpose() * ql;
    const double det_a = a.determinant();
    if (!(det_a > 0.0)) return std::nullopt;
    const Eigen::Vector4d d = slice_.offset - g.mean;
    const Eigen::Vector2d b = ql.transpose() * d;
    const Eigen::Matrix2d a_inv = a.inverse();
    const double expo = -0.5 * (d.dot(g.precision * d) - b.dot(a_inv * b));
    total += g.weight * std::exp(expo) /
             (2.0 * kPi * std::sqrt(det_a) * g.sqrt_det);
  }
  return total;
}

SliceField make_slice(const WignerField& w, const Transform2& t, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  AffineSlice sl;
  sl.map(0, 0) = c;
  sl.map(1, 1) = c;
  sl.map(2, 0) = s * t.a();
  sl.map(2, 1) = s * t.b();
  sl.map(3, 0) = s * t.c();
  sl.map(3, 1) = s * t.d();
  sl.offset(2) = s * t.x0();
  sl.offset(3) = s * t.p0();
  return {w, sl};
}

SliceField make_direct_slice(const WignerField& w, const Transform2& t) {
  AffineSlice sl;
  sl.map(0, 0) = 1.0;
  sl.map(1, 1) = 1.0;
  sl.map(2, 0) = t.a();
  sl.map(2, 1) = t.b();
  sl.map(3, 0) = t.c();
  sl.map(3, 1) = t.d();
  sl.offset(2) = t.x0();
  sl.offset(3) = t.p0();
  return {w, sl};
}

ReducedModeWigner::ReducedModeWigner(WignerField w, double theta, Transform2 t)
    : w_(std::move(w)), theta_(theta), t_(t) {
  require_open_angle(theta, "reduced_mode_wigner");
}

SliceField ReducedModeWigner::slice_at(double X, double P) const {
  const double c = std::cos(theta_), s = std::sin(theta_);
  Eigen::Matrix2d m;
  m << t_.a(), t_.b(), t_.c(), t_.d();
  AffineSlice sl;
  sl.map(0, 0) = c;
  sl.map(1, 1) = c;
  sl.map.block<2, 2>(2, 0) = s * m;
  sl.offset(0) = s * X;
  sl.offset(1) = s * P;
  const Eigen::Vector2d b =
      -c * (m * Eigen::Vector2d(X, P)) + s * Eigen::Vector2d(t_.x0(), t_.p0());
  sl.offset(2) = b(0);
  sl.offset(3) = b(1);
  return {w_, sl};
}

double ReducedModeWigner::operator()(double X, double P) const {
  return evaluate(X, P, QuadratureSpec{}, true);
}

double ReducedModeWigner::evaluate(double X, double P,
                                   const QuadratureSpec& spec,
                                   bool allow_closed_form) const {
  const SliceField sl = slice_at(X, P);
  if (allow_closed_form) {
    if (auto v = sl.gaussian_integral()) return *v;
  }
  const Box box = sl.truncation_box();
  if (box.empty()) return 0.0;
  return integrate([&sl](double x, double p) { return sl(x, p); },
                   Region::full_plane(), spec.with_truncation(box))
      .value;
}

std::optional<std::vector<
    std::pair<double, std::pair<Eigen::Vector2d, Eigen::Matrix2d>>>>
ReducedModeWigner::gaussian_output() const {
  const auto* mix = w_.gaussian_mixture();
  if (!mix) return std::nullopt;
  const double c = std::cos(theta_), s = std::sin(theta_);
  Eigen::Matrix2d m;
  m << t_.a(), t_.b(), t_.c(), t_.d();
  const Eigen::Matrix2d minv = m.inverse();
  Eigen::Matrix4d sm = Eigen::Matrix4d::Identity();
  sm.block<2, 2>(2, 2) = minv;
  Eigen::Matrix<double, 2, 4> proj;
  proj << s * Eigen::Matrix2d::Identity(), -c * Eigen::Matrix2d::Identity();
  const Eigen::Vector2d off(t_.x0(), t_.p0());
  std::vector<std::pair<double, std::pair<Eigen::Vector2d, Eigen::Matrix2d>>> out;
  for (const GaussianComponent& g : *mix) {
    Eigen::Vector4d mu = g.mean;
    mu.segment<2>(2) = minv * (g.mean.segment<2>(2) - s * off);
    const Eigen::Matrix4d v = sm * g.cov * sm.transpose();
    out.push_back({g.weight, {proj * mu, proj * v * proj.transpose()}});
  }
  return out;
}

Box ReducedModeWigner::output_box() const {
  const double c = std::cos(theta_), s = std::sin(theta_);
  const Envelope& env = w_.envelope();
  Eigen::Matrix2d m;
  m << t_.a(), t_.b(), t_.c(), t_.d();
  const Eigen::Matrix2d minv = m.inverse();
  const Eigen::Vector2d off(t_.x0(), t_.p0());
  const Eigen::Vector2d ca(env.center[0], env.center[1]);
  const Eigen::Vector2d cb(env.center[2], env.center[3]);
  const Eigen::Vector2d cu = minv * (cb - s * off);
  const Eigen::Vector2d center = s * ca - c * cu;
  const Eigen::Vector2d hu =
      minv.cwiseAbs() * Eigen::Vector2d::Constant(env.half_width_b);
  const Eigen::Vector2d half =
      Eigen::Vector2d::Constant(s * env.half_width_a) + std::abs(c) * hu;
  return {center(0) - half(0), center(0) + half(0), center(1) - half(1),
          center(1) + half(1)};
}

ReducedModeWigner reduced_mode_wigner(const WignerField& w, double theta,
                                      const Transform2& t) {
  return {w, theta, t};
}

}  // namespace wigent
