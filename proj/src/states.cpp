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

#include "wigent/states.hpp"

#include <cmath>
#include <sstream>

namespace wigent {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

void check_trace(const FockDensityMatrix& rho, const char* what) {
  const double deficit = rho.trace_deficit();
  if (deficit > 1e-6) {
    std::ostringstream os;
    os << what << ": cutoff " << rho.cutoff << " leaves trace deficit "
       << deficit << " > 1e-6";
    throw CutoffError(os.str());
  }
}

int resolve_cutoff(std::optional<int> cutoff, int fallback) {
  const int n = cutoff.value_or(fallback);
  if (n < 1) throw InvalidArgument("Fock cutoff must be >= 1");
  return n;
}

// Pure-state vectors reshaped as N x N matrices Psi(n_A, n_B).
Eigen::MatrixXcd outer_sum(const std::vector<Eigen::MatrixXcd>& terms, int n) {
  Eigen::MatrixXcd f(n * n, static_cast<Eigen::Index>(terms.size()));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) f(a * n + b, static_cast<Eigen::Index>(k)) = terms[k](a, b);
    }
  }
  return f * f.adjoint();
}

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Kraus operators of the pure-loss channel.
std::vector<Eigen::MatrixXd> attenuator_kraus(double eta, int n) {
  std::vector<Eigen::MatrixXd> ks;
  if (eta >= 1.0) {
    ks.push_back(Eigen::MatrixXd::Identity(n, n));
    return ks;
  }
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int j = k; j < n; ++j) {
      const double logv = 0.5 * (log_binom(j, k) + (j - k) * std::log(eta) +
                                 k * std::log1p(-eta));
      m(j - k, j) = (eta == 0.0 && j > k) ? 0.0 : std::exp(logv);
    }
    ks.push_back(std::move(m));
  }
  return ks;
}

// Kraus operators of the quantum-limited amplifier with gain g >= 1,
// truncated to n levels.
std::vector<Eigen::MatrixXd> amplifier_kraus(double g, int n) {
  std::vector<Eigen::MatrixXd> ks;
  if (g <= 1.0) {
    ks.push_back(Eigen::MatrixXd::Identity(n, n));
    return ks;
  }
  const double lg = std::log(g), lr = std::log((g - 1.0) / g);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j + k < n; ++j) {
      m(j + k, j) =
          std::exp(0.5 * (log_binom(j + k, k) - (j + 1) * lg + k * lr));
    }
    ks.push_back(std::move(m));
  }
  return ks;
}

}  // namespace

void TmstParams::validate() const {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("s must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InvalidArgument("eta must lie in (0, 1]");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be >= 0");
}

void WernerParams::validate() const { check_unit(epsilon, "epsilon"); }

void CatParams::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be >= 0");
  }
  check_unit(epsilon, "epsilon");
  if (sign == CatSign::minus && gamma == 0.0) {
    throw InvalidArgument(
        "odd cat state is undefined at gamma = 0 (normalization diverges)");
  }
}

std::string to_string(BellState b) {
  return b == BellState::phi_plus ? "phi+" : "psi+";
}

std::string to_string(CatSign s) { return s == CatSign::plus ? "plus" : "minus"; }

std::string describe(const StateSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TmstParams>) {
          os << "tmst(s=" << p.s << ", eta=" << p.eta << ", r=" << p.r << ")";
        } else if constexpr (std::is_same_v<T, WernerParams>) {
          os << "werner(bell=" << to_string(p.bell) << ", epsilon=" << p.epsilon
             << ")";
        } else if constexpr (std::is_same_v<T, CatParams>) {
          os << "cat(gamma=" << p.gamma << ", epsilon=" << p.epsilon
             << ", sign=" << to_string(p.sign) << ")";
        } else {
          os << "gaussian(mean=[";
          for (int i = 0; i < 4; ++i) os << (i ? "," : "") << p.mean(i);
          os << "], cov=[";
          for (int i = 0; i < 16; ++i) os << (i ? "," : "") << p.cov(i / 4, i % 4);
          os << "])";
        }
      },
      spec);
  return os.str();
}

GaussianTwoMode tmst_covariance(const TmstParams& p) {
  p.validate();
  const double ch2 = std::cosh(2.0 * p.s);
  const double cr2 = std::cosh(p.r) * std::cosh(p.r);
  const double sr2 = std::sinh(p.r) * std::sinh(p.r);
  const double n = p.eta * cr2 * ch2 + (1.0 - p.eta) * cr2 + sr2;
  const double c = std::sqrt(p.eta) * std::cosh(p.r) * std::sinh(2.0 * p.s);
  return GaussianTwoMode::standard_form(n, ch2, c, -c);
}

WignerField tmst_wigner(const TmstParams& p) {
  return gaussian_wigner(tmst_covariance(p));
}

WignerField werner_wigner(const WernerParams& p) {
  p.validate();
  const double e = p.epsilon;
  const bool phi = p.bell == BellState::phi_plus;
  Envelope env;
  env.half_width_a = env.half_width_b = 8.0 * std::sqrt(3.0);
  const WignerField f(
      Backend::closed_form,
      [e, phi](const PhaseVec4& v) {
        const double ra = v[0] * v[0] + v[1] * v[1];
        const double rb = v[2] * v[2] + v[3] * v[3];
        const double g = std::exp(-0.5 * (ra + rb)) / (16.0 * kPi * kPi);
        if (phi) {
          return g * ((1.0 + e) * ra * rb + 4.0 * e * (v[0] * v[2] - v[1] * v[3]) -
                      2.0 * e * (ra + rb) + 4.0 * e);
        }
        return g * ((1.0 - e) * ra * rb + 4.0 * e * (v[0] * v[2] + v[1] * v[3]) +
                    2.0 * e * (ra + rb) - 4.0 * e);
      },
      env);
  return f.with_fock(state_to_fock(p));
}

WignerField cat_wigner(const CatParams& p) {
  p.validate();
  const double g = p.gamma, e = p.epsilon, g2 = 4.0 * g * g;
  double c_cos, c_cosh;
  if (p.sign == CatSign::plus) {
    c_cos = e / (1.0 + std::exp(-g2));
    c_cosh = 1.0 - e / (1.0 + std::exp(g2));
  } else {
    c_cos = -e / -std::expm1(-g2);
    c_cosh = 1.0 + e / std::expm1(g2);
  }
  Envelope env;
  env.half_width_a = env.half_width_b = 8.0 + 2.0 * g;
  return WignerField(
      Backend::closed_form,
      [g, g2, c_cos, c_cosh](const PhaseVec4& v) {
        const double q = 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
        const double sx = 2.0 * g * (v[0] + v[2]);
        const double osc = c_cos * std::exp(-q) * std::cos(2.0 * g * (v[1] + v[3]));
        const double hyp =
            0.5 * c_cosh * (std::exp(-q - g2 + sx) + std::exp(-q - g2 - sx));
        return (osc + hyp) / (4.0 * kPi * kPi);
      },
      env);
}

WignerField state_wigner(const StateSpec& spec) {
  return std::visit(
      [](const auto& p) -> WignerField {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TmstParams>) {
          return tmst_wigner(p);
        } else if constexpr (std::is_same_v<T, WernerParams>) {
          return werner_wigner(p);
        } else if constexpr (std::is_same_v<T, CatParams>) {
          return cat_wigner(p);
        } else {
          return gaussian_wigner(p);
        }
      },
      spec);
}

int default_cutoff(const TmstParams& p) {
  return static_cast<int>(std::ceil(10.0 + 20.0 * p.s));
}
int default_cutoff(const WernerParams&) { return 2; }
int default_cutoff(const CatParams& p) {
  return static_cast<int>(std::ceil(p.gamma * p.gamma + 6.0 * p.gamma + 10.0));
}

FockDensityMatrix state_to_fock(const TmstParams& p, std::optional<int> cutoff) {
  p.validate();
  const int n = resolve_cutoff(cutoff, default_cutoff(p));
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(n, n);
  const double th = std::tanh(p.s), inv_ch = 1.0 / std::cosh(p.s);
  double amp = inv_ch;
  for (int k = 0; k < n; ++k) {
    psi(k, k) = amp;
    amp *= th;
  }
  std::vector<Eigen::MatrixXcd> terms;
  const auto att = attenuator_kraus(p.eta, n);
  const auto amp_k = amplifier_kraus(std::cosh(p.r) * std::cosh(p.r), n);
  for (const auto& ka : att) {
    const Eigen::MatrixXcd lost = ka.cast<cplx>() * psi;
    if (lost.cwiseAbs2().sum() < 1e-30) continue;
    for (const auto& kb : amp_k) {
      Eigen::MatrixXcd t = kb.cast<cplx>() * lost;
      if (t.cwiseAbs2().sum() < 1e-30) continue;
      terms.push_back(std::move(t));
    }
  }
  FockDensityMatrix rho(n, outer_sum(terms, n));
  check_trace(rho, "tmst");
  return rho;
}

FockDensityMatrix state_to_fock(const WernerParams& p,
                                std::optional<int> cutoff) {
  p.validate();
  const int n = resolve_cutoff(cutoff, default_cutoff(p));
  if (n < 2) throw CutoffError("werner: cutoff must be >= 2");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
  const double h = 1.0 / std::sqrt(2.0);
  if (p.bell == BellState::phi_plus) {
    psi(0) = h;
    psi(n + 1) = h;
  } else {
    psi(1) = h;
    psi(n) = h;
  }
  Eigen::MatrixXcd r = p.epsilon * psi * psi.adjoint();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) r(a * n + b, a * n + b) += 0.25 * (1.0 - p.epsilon);
  }
  return {n, std::move(r)};
}

FockDensityMatrix state_to_fock(const CatParams& p, std::optional<int> cutoff) {
  p.validate();
  const int n = resolve_cutoff(cutoff, default_cutoff(p));
  const Eigen::VectorXcd cp = coherent_amplitudes(p.gamma, n);
  const Eigen::VectorXcd cm = coherent_amplitudes(-p.gamma, n);
  Eigen::VectorXcd pp(n * n), mm(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      pp(a * n + b) = cp(a) * cp(b);
      mm(a * n + b) = cm(a) * cm(b);
    }
  }
  const double overlap = std::exp(-4.0 * p.gamma * p.gamma);
  const double s = p.sign == CatSign::plus ? 1.0 : -1.0;
  const double norm = 1.0 / std::sqrt(2.0 * (1.0 + s * overlap));
  const Eigen::VectorXcd psi = norm * (pp + s * mm);
  Eigen::MatrixXcd r = p.epsilon * psi * psi.adjoint() +
                       0.5 * (1.0 - p.epsilon) *
                           (pp * pp.adjoint() + mm * mm.adjoint());
  FockDensityMatrix rho(n, std::move(r));
  check_trace(rho, "cat");
  return rho;
}

}  // namespace wigent
