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

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reference.hpp"
#include "unit/helpers.hpp"
#include "wigent/cli.hpp"
#include "wigent/criteria.hpp"
#include "wigent/optimize.hpp"
#include "wigent/oracle.hpp"
#include "wigent/quadrature.hpp"
#include "wigent/states.hpp"

using namespace wigent;
namespace ref = wigent::reference;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double bisect(const std::function<bool(double)>& violated, double lo, double hi, double tol = 1e-6) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (violated(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

QuadratureSpec lenient(QuadratureSpec s = {}) {
  s.throw_on_nonconvergence = false;
  return s;
}

// Wigner function of the mode (a_A + a_B)/sqrt2 by direct quadrature.
double plus_mode(const WignerField& w, double xp, double pp) {
  const double r = std::sqrt(0.5);
  auto f = [&](double xm, double pm) {
    return w({r * (xp + xm), r * (pp + pm), r * (xp - xm), r * (pp - pm)});
  };
  const QuadratureSpec spec = QuadratureSpec{}.with_order(160).with_truncation({-14, 14, -14, 14});
  return integrate(f, Region::full_plane(), spec).value;
}

bool random_standard_form(std::mt19937_64& rng, double& n, double& m, double& c1, double& c2, bool antisym) {
  std::uniform_real_distribution<double> nm(1.0, 3.0), c(-2.5, 2.5);
  for (int tries = 0; tries < 10000; ++tries) {
    n = nm(rng);
    m = nm(rng);
    c1 = c(rng);
    c2 = antisym ? -c1 : c(rng);
    try {
      GaussianTwoMode::standard_form(n, m, c1, c2).validate();
      return true;
    } catch (const Error&) {
    }
  }
  return false;
}

std::string run_cli_binary(const std::string& args) {
  const std::string cmd = std::string(WIGENT_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  if (FILE* f = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    pclose(f);
  }
  return out;
}

// --- criteria ----------------------------------------------------------------

void tmsv_criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  bool all_violated = true;
  for (double s : {0.1, 0.5, 1.0}) {
    const CriterionReport r = criterion1(tmst_wigner({s, 1.0, 0.0}), Transform2::p_reflection(), kPi / 4);
    worst = std::max(worst, std::abs(r.value - ref::tmsv_c1(s)));
    all_violated = all_violated && r.violated;
  }
  const double dt = seconds_since(t0);
  o.detail << "max |value - e^{2s}/2pi| = " << worst << ", " << dt << " s";
  o.require(worst <= 1e-6, "value within 1e-6");
  o.require(all_violated, "all violated");
  o.require(dt < 5.0, "runtime < 5 s");
}

void tmst_boundary(Outcome& o) {
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"sweep", "--config", std::string(WIGENT_SOURCE_DIR) + "/configs/fig2.ini"}, out, err);
  const double dt = seconds_since(t0);
  o.require(code == 0, "sweep exit code 0: " + err.str());
  if (code != 0) return;

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::map<std::string, int> col;
  {
    std::istringstream h(line);
    std::string name;
    for (int i = 0; std::getline(h, name, ','); ++i) col[name] = i;
  }
  struct Row {
    double r, eta, lam;
    bool c1, simon;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows.push_back({std::stod(cells[col["r"]]), std::stod(cells[col["eta"]]), std::stod(cells[col["simon_value"]]),
                    cells[col["c1_violated"]] == "true", cells[col["simon_violated"]] == "true"});
  }
  o.require(rows.size() == 900, "900 grid points");
  if (rows.size() != 900) return;

  // Rows are r-major: index = i_r * 30 + i_eta.
  auto side = [](const Row& p) { return p.eta > std::tanh(p.r) * std::tanh(p.r); };
  int c1_off = 0, simon_off = 0, disagree = 0, compared = 0, interior = 0;
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 30; ++j) {
      const Row& p = rows[i * 30 + j];
      bool near_boundary = false;
      for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        const int a = i + di, b = j + dj;
        if (a < 0 || a >= 30 || b < 0 || b >= 30) continue;
        near_boundary = near_boundary || side(rows[a * 30 + b]) != side(p);
      }
      if (!near_boundary) {
        ++interior;
        c1_off += p.c1 != side(p);
        simon_off += p.simon != side(p);
      }
      if (std::abs(p.lam) > 1e-4) {
        ++compared;
        disagree += p.c1 != p.simon;
      }
    }
  }
  o.detail << interior << " points off the tanh^2 r boundary: " << c1_off << " C1 and " << simon_off
           << " Simon mismatches; C1 vs Simon disagreements " << disagree << "/" << compared << ", " << dt << " s";
  o.require(c1_off == 0, "C1 tracks tanh^2 r");
  o.require(simon_off == 0, "Simon tracks tanh^2 r");
  o.require(disagree == 0, "C1 agrees with Simon where |lambda| > 1e-4");
  o.require(dt < 600.0, "runtime < 10 min");
}

void gaussian_optimum(Outcome& o) {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int verdict_checked = 0, verdict_wrong = 0, entangled = 0;
  for (int k = 0; k < 20; ++k) {
    double n, m, c1, c2;
    if (!random_standard_form(rng, n, m, c1, c2, false)) {
      o.require(false, "sample standard form");
      return;
    }
    const OptimizationResult r =
        optimize_criterion(gaussian_wigner(GaussianTwoMode::standard_form(n, m, c1, c2)), CriterionId::C1);
    worst = std::max(worst, std::abs(r.best_value - ref::gaussian_c1_max(n, m, c1, c2)));
    const bool ent = ref::gaussian_entangled(n, m, c1, c2);
    entangled += ent;
    if (std::abs(ref::gaussian_entangled_margin(n, m, c1, c2)) > 1e-4) {
      ++verdict_checked;
      verdict_wrong += r.report.violated != ent;
    }
  }
  o.detail << "max |optimum - closed form| = " << worst << "; verdict mismatches " << verdict_wrong << "/"
           << verdict_checked << " (" << entangled << " of 20 entangled)";
  o.require(worst <= 1e-4, "optimum within 1e-4");
  o.require(verdict_wrong == 0, "verdicts match");
}

void werner_thresholds(Outcome& o) {
  const auto t0 = Clock::now();
  const Transform2 pr = Transform2::p_reflection();
  const double c1 = bisect([&](double e) {
    return criterion1(werner_wigner({BellState::phi_plus, e}), pr, kPi / 4).violated;
  }, 0.0, 1.0);
  const double c2 = bisect([&](double e) {
    return criterion2(werner_wigner({BellState::phi_plus, e}), pr, kPi / 4, Region::full_plane()).violated;
  }, 0.0, 1.0);
  const double c3 = bisect([&](double e) {
    return criterion3(werner_wigner({BellState::psi_plus, e}), Transform2::neg_identity()).violated;
  }, 0.0, 1.0);
  const double ppt_phi = bisect([&](double e) {
    return ppt_check(state_to_fock(WernerParams{BellState::phi_plus, e})).violated;
  }, 0.0, 1.0);
  const double ppt_psi = bisect([&](double e) {
    return ppt_check(state_to_fock(WernerParams{BellState::psi_plus, e})).violated;
  }, 0.0, 1.0);
  const double dt = seconds_since(t0);
  o.detail << "C1 " << c1 << ", C2 " << c2 << ", C3 " << c3 << ", PPT(phi+) " << ppt_phi << ", PPT(psi+) "
           << ppt_psi << ", " << dt << " s";
  for (double t : {c1, c2, c3, ppt_phi, ppt_psi}) o.require(std::abs(t - 1.0 / 3.0) <= 1e-3, "threshold 1/3");
  o.require(dt < 60.0, "runtime < 1 min");
}

void cat_states(Outcome& o) {
  const auto t0 = Clock::now();
  double c1_dev = 0.0, c3_dev = 0.0, th_dev = 0.0;
  for (double g : {0.5, 1.0, 2.0}) {
    for (double e : {0.25, 0.5, 1.0}) {
      const CriterionReport a = criterion1(cat_wigner({g, e, CatSign::plus}), Transform2::p_reflection(), kPi / 4);
      c1_dev = std::max(c1_dev, std::abs(a.value - ref::cat_c1(g, e)));
      const CriterionReport b = criterion3(cat_wigner({g, e, CatSign::minus}), Transform2::neg_identity());
      c3_dev = std::max(c3_dev, std::abs(b.value - ref::cat_minus_c3(g, e)));
    }
    const double th = bisect([&](double e) {
      return criterion3(cat_wigner({g, e, CatSign::minus}), Transform2::neg_identity()).violated;
    }, 0.0, 1.0);
    th_dev = std::max(th_dev, std::abs(th - ref::cat_minus_threshold(g)));
  }
  const double dt = seconds_since(t0);
  o.detail << "max C1 dev " << c1_dev << ", max C3 dev " << c3_dev << ", max threshold dev " << th_dev << ", "
           << dt << " s";
  o.require(c1_dev <= 1e-6, "C1 within 1e-6");
  o.require(c3_dev <= 1e-6, "C3 within 1e-6");
  o.require(th_dev <= 1e-3, "C3 threshold within 1e-3");
  o.require(dt < 120.0, "runtime < 2 min");
}

void criterion3_reduction(Outcome& o) {
  const std::vector<std::pair<std::string, WignerField>> states = {
      {"werner psi+", werner_wigner({BellState::psi_plus, 1.0})},
      {"werner phi+", werner_wigner({BellState::phi_plus, 0.6})},
      {"tmst", tmst_wigner({0.4, 0.8, 0.1})},
      {"cat-", cat_wigner({1.0, 0.7, CatSign::minus})},
      {"cat+", cat_wigner({1.5, 0.5, CatSign::plus})}};
  double worst = 0.0;
  for (const auto& [name, w] : states) {
    for (auto [xp, pp] : {std::pair{0.0, 0.0}, {0.5, -0.3}}) {
      const Transform2 t(-1, 0, 0, -1, std::sqrt(2.0) * xp, std::sqrt(2.0) * pp);
      worst = std::max(worst, std::abs(criterion3(w, t).value - 0.5 * plus_mode(w, xp, pp)));
    }
  }
  o.detail << "max |C3 - W+/2| = " << worst << " over 5 states x 2 points";
  o.require(worst <= 1e-7, "within 1e-7");
}

void purity_s1_check(Outcome& o) {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  int wrong = 0, entangled = 0;
  for (int k = 0; k < 10; ++k) {
    double n, m, c, c2;
    if (!random_standard_form(rng, n, m, c, c2, true)) {
      o.require(false, "sample standard form");
      return;
    }
    const CriterionReport r = maximize_purity_s1(gaussian_wigner(GaussianTwoMode::standard_form(n, m, c, -c)));
    worst = std::max(worst, std::abs(r.value - ref::purity_max(n, m, c)));
    const bool ent = c * c > (n - 1) * (m - 1);
    entangled += ent;
    wrong += r.violated != ent;
  }
  o.detail << "max |max S1 - closed form| = " << worst << "; verdict mismatches " << wrong << "/10 (" << entangled
           << " entangled)";
  o.require(worst <= 1e-6, "within 1e-6");
  o.require(wrong == 0, "verdicts match");
}

void engine_crossvalidation(Outcome& o) {
  double worst = 0.0;
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    const TmstParams p{s, 1.0, 0.0};
    const double d = test::grid_disagreement(tmst_wigner(p), fock_wigner(state_to_fock(p, 30)));
    o.detail << "s=" << s << ": " << d << "; ";
    worst = std::max(worst, d);
  }
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  double parity = 0.0;
  const std::vector<FockDensityMatrix> rhos = {state_to_fock(TmstParams{0.5, 0.7, 0.2}, 20),
                                               state_to_fock(CatParams{1.0, 0.6, CatSign::minus})};
  for (const FockDensityMatrix& rho : rhos) {
    const WignerField w = fock_wigner(rho);
    for (int k = 0; k < 20; ++k) {
      const PhaseVec4 v{u(rng), u(rng), u(rng), u(rng)};
      parity = std::max(parity, std::abs(w(v) - parity_wigner(rho, v)));
    }
  }
  o.detail << "grid max " << worst << ", parity oracle max " << parity;
  o.require(worst < 1e-6, "Gaussian vs Fock < 1e-6 at cutoff 30");
  o.require(parity <= 1e-9, "displaced parity within 1e-9");
}

void bell_thresholds(Outcome& o) {
  const auto t0 = Clock::now();
  const BellThreshold phi = bell_epsilon_min([](double e) { return werner_wigner({BellState::phi_plus, e}); });
  const BellThreshold psi = bell_epsilon_min([](double e) { return werner_wigner({BellState::psi_plus, e}); });
  const double dt = seconds_since(t0);
  const bool two_sided = std::abs(phi.epsilon_min - 0.9146) <= 5e-3 && std::abs(psi.epsilon_min - 0.8919) <= 5e-3;
  o.detail << "phi+ " << phi.epsilon_min << " (ref 0.9146), psi+ " << psi.epsilon_min << " (ref 0.8919); "
           << (two_sided ? "within 5e-3 both sides" : "one-sided check (multi-start, no global certificate)")
           << ", " << dt << " s";
  o.require(phi.found && psi.found, "threshold found");
  o.require(phi.epsilon_min <= 0.9146 + 5e-3, "phi+ <= 0.9146 + 5e-3");
  o.require(psi.epsilon_min <= 0.8919 + 5e-3, "psi+ <= 0.8919 + 5e-3");
  o.require(dt < 600.0, "runtime < 10 min");
}

WignerField random_separable(std::mt19937_64& rng, int index) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto uni = [&](double a, double b) { return a + (b - a) * u(rng); };
  if (index % 5 != 4) {
    const int k = 1 + static_cast<int>(3 * u(rng));
    std::vector<GaussianComponent> comps;
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
      GaussianComponent g;
      g.weight = uni(0.1, 1.0);
      total += g.weight;
      for (int i = 0; i < 4; ++i) g.mean(i) = uni(-2.0, 2.0);
      g.cov.setZero();
      for (int mode = 0; mode < 2; ++mode) {
        const double a = uni(-1.0, 1.0), b = -a + uni(0.0, 1.0), phi = uni(0.0, kPi);
        Eigen::Matrix2d rot;
        rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
        g.cov.block<2, 2>(2 * mode, 2 * mode) =
            rot * Eigen::Vector2d(std::exp(a), std::exp(b)).asDiagonal() * rot.transpose();
      }
      comps.push_back(g);
    }
    for (GaussianComponent& g : comps) g.weight /= total;
    return gaussian_mixture_wigner(std::move(comps));
  }
  std::normal_distribution<double> n;
  auto density = [&](int dim) {
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = cplx(n(rng), n(rng));
    Eigen::MatrixXcd r = a * a.adjoint();
    return Eigen::MatrixXcd(r / r.trace().real());
  };
  const double w = uni(0.2, 0.8);
  return mix_fields({{w, product_wigner(single_mode_fock(density(3)), single_mode_fock(density(3)))},
                     {1 - w, product_wigner(single_mode_fock(density(3)), single_mode_fock(density(3)))}});
}

void no_false_positives(Outcome& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto uni = [&](double a, double b) { return a + (b - a) * u(rng); };
  // Property-suite budget: verdicts already discount each report's error_estimate.
  QuadratureSpec q = lenient();
  q.tolerance = 1e-6;
  q.max_panels = 500;
  std::array<int, 4> hits{};
  std::array<double, 4> worst_estimate{};
  int evaluations = 0;
  for (int s = 0; s < 500; ++s) {
    const WignerField w = random_separable(rng, s);
    for (int d = 0; d < 50; ++d) {
      const SymplecticParam sp{uni(0, 2 * kPi), uni(0, 2 * kPi), std::exp(uni(-1, 1)), u(rng) < 0.5,
                               uni(-2, 2), uni(-2, 2)};
      const Transform2 t = param_to_transform(sp);
      double theta = uni(0.05, kPi - 0.05);
      while (std::abs(std::sin(2 * theta)) < 1e-3) theta = uni(0.05, kPi - 0.05);
      Region region = Region::full_plane();
      if (d % 2 == 1) {
        std::vector<Disk> disks;
        const int k = 1 + static_cast<int>(3 * u(rng));
        for (int i = 0; i < k; ++i) disks.push_back({uni(-3, 3), uni(-3, 3), uni(0.3, 3.0)});
        region = Region::disk_union(std::move(disks));
      }
      const std::array<CriterionReport, 4> reps = {criterion1(w, t, theta, q), criterion2(w, t, theta, region, q),
                                                   criterion3(w, t, q), purity_s1(w, theta, q)};
      for (int i = 0; i < 4; ++i) {
        hits[i] += reps[i].violated;
        worst_estimate[i] = std::max(worst_estimate[i], reps[i].error_estimate);
      }
      ++evaluations;
    }
  }
  const double dt = seconds_since(t0);
  o.detail << evaluations << " draws; violations C1 " << hits[0] << ", C2 " << hits[1] << ", C3 " << hits[2]
           << ", PurityS1 " << hits[3] << "; largest error_estimate " << worst_estimate[0] << ", "
           << worst_estimate[1] << ", " << worst_estimate[2] << ", " << worst_estimate[3] << "; " << dt << " s";
  o.require(hits[0] + hits[1] + hits[2] + hits[3] == 0, "no violations");
  o.require(dt < 1200.0, "runtime < 20 min");
}

void region_shrinking(Outcome& o) {
  const WignerField w = cat_wigner({2.0, 1.0, CatSign::plus});
  const Transform2 t = Transform2::p_reflection();
  const Region reg = shrink_region(w, t, kPi / 4);
  const double box = make_slice(w, t, kPi / 4).truncation_box().area();
  const CriterionReport again = criterion2(w, t, kPi / 4, reg, QuadratureSpec{}.with_order(160));
  // The slice is taken in cos(theta)-scaled coordinates; the unscaled integral is half.
  o.detail << reg.disks().size() << " disks, area " << reg.nominal_area() << " of box " << box << " ("
           << 100 * reg.nominal_area() / box << "%); re-integrated " << again.value << " (unscaled "
           << again.value / 2 << " vs 1/4pi " << 1 / (4 * kPi) << ")";
  o.require(reg.kind() == Region::Kind::disk_union, "disk union");
  o.require(reg.nominal_area() < 0.6 * box, "area < 60% of box");
  o.require(again.violated, "re-integration violates");
  o.require(again.value / 2 > 1 / (4 * kPi), "unscaled integral > 1/4pi");
}

void determinism(Outcome& o) {
  const std::vector<std::string> commands = {
      "evaluate --state tmsv --s 0.5 --criterion c1",
      "evaluate --state cat-plus --gamma 1.5 --epsilon 0.7 --criterion c2 --transform p-reflect --theta 0.7",
      "oracle --bell --state werner-phi+ --epsilon 0.95 --optimize",
      "sweep --config " + std::string(WIGENT_SOURCE_DIR) + "/configs/fig3b.ini --workers 2"};
  int identical = 0;
  for (const std::string& c : commands) {
    const std::string a = run_cli_binary(c), b = run_cli_binary(c);
    identical += !a.empty() && a == b;
  }

  struct Golden {
    std::string name;
    std::function<CriterionReport(const QuadratureSpec&)> eval;
  };
  const WignerField tmsv = tmst_wigner({0.5, 1.0, 0.0});
  const WignerField tmst = tmst_wigner({0.5, 0.5, 0.5});
  const WignerField psi = werner_wigner({BellState::psi_plus, 0.8});
  const WignerField catp = cat_wigner({1.5, 0.7, CatSign::plus});
  const WignerField catm = cat_wigner({1.0, 0.5, CatSign::minus});
  const std::vector<Golden> golden = {
      {"tmsv c1", [&](const QuadratureSpec& s) { return criterion1(tmsv, Transform2::p_reflection(), kPi / 4, s); }},
      {"tmst c2", [&](const QuadratureSpec& s) {
         return criterion2(tmst, Transform2::p_reflection(), ref::tmst_c2_theta(0.5, 0.5, 0.5), Region::full_plane(), s);
       }},
      {"werner c3", [&](const QuadratureSpec& s) { return criterion3(psi, Transform2::neg_identity(), s); }},
      {"cat+ c1", [&](const QuadratureSpec& s) { return criterion1(catp, Transform2::p_reflection(), 0.7, s); }},
      {"cat+ c2 disks", [&](const QuadratureSpec& s) {
         return criterion2(catp, Transform2::p_reflection(), kPi / 4,
                           Region::disk_union({{0, 0, 1.5}, {2, 0, 1.5}, {-2, 0, 1.5}}), s);
       }},
      {"cat- c3", [&](const QuadratureSpec& s) { return criterion3(catm, Transform2::neg_identity(), s); }},
      {"tmst purity", [&](const QuadratureSpec& s) { return purity_s1(tmst, 0.6, s); }}};
  int consistent = 0;
  for (const Golden& g : golden) {
    const CriterionReport base = g.eval(lenient());
    const CriterionReport twice = g.eval(lenient(QuadratureSpec{}.with_order(160)));
    const double diff = std::abs(twice.value - base.value);
    const bool ok = diff <= base.error_estimate;
    consistent += ok;
    if (!ok) o.detail << g.name << ": |diff| " << diff << " > estimate " << base.error_estimate << "; ";
  }
  o.detail << identical << "/" << commands.size() << " CLI commands byte-identical; " << consistent << "/"
           << golden.size() << " golden values stable under doubled order";
  o.require(identical == static_cast<int>(commands.size()), "byte-identical CLI output");
  o.require(consistent == static_cast<int>(golden.size()), "order doubling within error estimate");
}

struct Criterion {
  const char* name;
  void (*run)(Outcome&);
};

const std::array<Criterion, 12> kCriteria = {{
    {"tmsv_criterion1", tmsv_criterion1},
    {"tmst_boundary", tmst_boundary},
    {"gaussian_optimum", gaussian_optimum},
    {"werner_thresholds", werner_thresholds},
    {"cat_states", cat_states},
    {"criterion3_reduction", criterion3_reduction},
    {"purity_s1", purity_s1_check},
    {"engine_crossvalidation", engine_crossvalidation},
    {"bell_thresholds", bell_thresholds},
    {"no_false_positives", no_false_positives},
    {"region_shrinking", region_shrinking},
    {"determinism", determinism},
}};

bool run_one(int index) {
  const Criterion& c = kCriteria[index - 1];
  Outcome o;
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  std::printf("[PRIMARY] %02d %s: %s | %s\n", index, c.name, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 12; ++i) which.push_back(i);
  bool all = true;
  for (int i : which) {
    if (i < 1 || i > 12) {
      std::fprintf(stderr, "criterion index must be 1..12\n");
      return 2;
    }
    all = run_one(i) && all;
  }
  return all ? 0 : 1;
}
