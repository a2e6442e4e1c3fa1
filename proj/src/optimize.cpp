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

#include "wigent/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "wigent/simplex.hpp"

namespace wigent {

namespace {

constexpr double kPenalty = 1e6;

struct Candidate {
  SymplecticParam param;
  double theta = kPi / 4;
};

Candidate decode(const std::vector<double>& v, bool reflect, CriterionId which) {
  Candidate c;
  c.param = {v[0], v[1], std::exp(v[2]), reflect, v[3], v[4]};
  if (which != CriterionId::C3) c.theta = v[5];
  return c;
}

bool out_of_bounds(const std::vector<double>& v, CriterionId which) {
  if (std::abs(v[2]) > 4.0 || std::abs(v[3]) > 25.0 || std::abs(v[4]) > 25.0) return true;
  if (which == CriterionId::C3) return false;
  const double th = v[5];
  if (!(th > 1e-3 && th < kPi - 1e-3)) return true;
  return which == CriterionId::C2 && std::abs(std::sin(2.0 * th)) < 1e-3;
}

// Criterion value at a candidate using the cheap search rule.
double search_value(const WignerField& w, CriterionId which, const Candidate& c,
                    const OptimizeOptions& opts) {
  const Transform2 t = param_to_transform(c.param);
  const SliceField sl =
      which == CriterionId::C3 ? make_direct_slice(w, t) : make_slice(w, t, c.theta);
  // Gaussian mixtures are non-negative, so the C2 integrand equals C1's.
  if (opts.closed_form_search) {
    if (auto v = sl.gaussian_integral()) return *v;
  }
  const Box box = sl.truncation_box();
  if (box.empty()) return 0.0;
  if (which == CriterionId::C2) {
    return tensor_gauss_legendre(
        [&sl](double x, double p) { return std::abs(sl(x, p)); }, box, opts.search_order);
  }
  return tensor_gauss_legendre([&sl](double x, double p) { return sl(x, p); }, box,
                               opts.search_order);
}

// Minimized objective; see optimize_criterion.
double objective_of(CriterionId which, double value, double theta) {
  switch (which) {
    case CriterionId::C1:
      return -value;
    case CriterionId::C2:
      return -value * 2.0 * kPi * std::abs(std::sin(2.0 * theta));
    default:
      return value;
  }
}

double value_of(CriterionId which, double objective, double theta) {
  switch (which) {
    case CriterionId::C1:
      return -objective;
    case CriterionId::C2:
      return -objective / (2.0 * kPi * std::abs(std::sin(2.0 * theta)));
    default:
      return objective;
  }
}

struct StartResult {
  std::vector<double> x;
  double objective = 0.0;
  double seed_objective = 0.0;
  int iterations = 0;
  bool reflect = false;
};

template <class F>
void run_pool(int tasks, int workers, const F& body) {
  if (workers <= 1 || tasks <= 1) {
    for (int i = 0; i < tasks; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int k = 0; k < std::min(workers, tasks); ++k) {
    pool.emplace_back([&] {
      for (int i = next++; i < tasks; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<std::vector<double>> default_start_lattice(CriterionId which) {
  const double angles[] = {0.0, kPi / 3, 2 * kPi / 3};
  const double logt[] = {-0.7, 0.0, 0.7};
  const double offs[] = {-1.0, 0.0, 1.0};
  const double thetas[] = {kPi / 6, kPi / 4, kPi / 3};
  std::vector<std::vector<double>> out;
  const int nth = which == CriterionId::C3 ? 1 : 3;
  for (double a1 : angles)
    for (double a2 : angles)
      for (double lt : logt)
        for (double x0 : offs)
          for (double p0 : offs)
            for (int k = 0; k < nth; ++k) {
              std::vector<double> v{a1, a2, lt, x0, p0};
              if (which != CriterionId::C3) v.push_back(thetas[k]);
              out.push_back(std::move(v));
            }
  return out;
}

OptimizationResult optimize_criterion(const WignerField& w, CriterionId which,
                                      const OptimizeOptions& opts) {
  if (which != CriterionId::C1 && which != CriterionId::C2 && which != CriterionId::C3) {
    throw InvalidArgument("optimize_criterion supports C1, C2 and C3 only");
  }
  const std::vector<std::vector<double>> starts =
      opts.starts ? *opts.starts : default_start_lattice(which);
  const std::size_t dim = which == CriterionId::C3 ? 5 : 6;
  for (const auto& s : starts) {
    if (s.size() != dim) throw InvalidArgument("start point has the wrong dimension");
  }

  auto objective = [&](const std::vector<double>& v, bool reflect) {
    if (out_of_bounds(v, which)) return kPenalty;
    const Candidate c = decode(v, reflect, which);
    return objective_of(which, search_value(w, which, c, opts), c.theta);
  };

  const int n = static_cast<int>(starts.size());
  std::vector<StartResult> results(2 * n);
  SimplexOptions sopts;
  sopts.max_iterations = opts.max_iterations;
  sopts.size_tolerance = opts.simplex_tolerance;
  sopts.step = {0.3, 0.3, 0.2, 0.3, 0.3, 0.15};
  sopts.step.resize(dim);
  const int workers = opts.workers > 0
                          ? opts.workers
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  run_pool(2 * n, workers, [&](int task) {
    const int k = task / 2;
    const bool reflect = task % 2 == 1;
    StartResult& r = results[task];
    r.reflect = reflect;
    r.seed_objective = objective(starts[k], reflect);
    const SimplexResult s = nelder_mead(
        [&](const std::vector<double>& v) { return objective(v, reflect); }, starts[k], sopts);
    r.x = s.x;
    r.objective = std::min(s.value, r.seed_objective);
    if (s.value > r.seed_objective) r.x = starts[k];
    r.iterations = s.iterations;
  });

  OptimizationResult out;
  out.restarts = 2 * n;
  int best = -1, iters = 0;
  double best_value = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    const StartResult& r = results[i];
    const double th0 = which == CriterionId::C3 ? kPi / 4 : starts[i / 2][5];
    out.seed_values.push_back(value_of(which, r.seed_objective, th0));
    bool take = best < 0;
    if (!take) {
      const double a = r.objective, b = results[best].objective;
      const double tol = 1e-9 * std::max(1.0, std::abs(b));
      take = a < b - tol || (std::abs(a - b) <= tol && r.reflect && !results[best].reflect);
    }
    if (take) {
      best = i;
      const double th = which == CriterionId::C3 ? kPi / 4 : r.x[5];
      best_value = value_of(which, r.objective, th);
    }
    iters += r.iterations;
    out.trace.push_back({iters, best_value});
  }

  // Polish the winner with a finer search rule.
  {
    OptimizeOptions fine = opts;
    fine.search_order = 2 * opts.search_order;
    const bool reflect = results[best].reflect;
    auto fine_objective = [&](const std::vector<double>& v) {
      if (out_of_bounds(v, which)) return kPenalty;
      const Candidate c = decode(v, reflect, which);
      return objective_of(which, search_value(w, which, c, fine), c.theta);
    };
    SimplexOptions popts = sopts;
    for (double& st : popts.step) st *= 0.1;
    const SimplexResult s = nelder_mead(fine_objective, results[best].x, popts);
    if (s.value < fine_objective(results[best].x)) results[best].x = s.x;
  }

  const Candidate c = decode(results[best].x, results[best].reflect, which);
  out.best_param = c.param;
  out.best_theta = c.theta;
  QuadratureSpec final_spec = opts.final_spec;
  final_spec.throw_on_nonconvergence = false;
  const Transform2 t = param_to_transform(c.param);
  switch (which) {
    case CriterionId::C1:
      out.report = criterion1(w, t, c.theta, final_spec);
      break;
    case CriterionId::C2:
      out.report = criterion2(w, t, c.theta, Region::full_plane(), final_spec);
      break;
    default:
      out.report = criterion3(w, t, final_spec);
      break;
  }
  out.best_value = out.report.value;
  return out;
}

CriterionReport maximize_purity_s1(const WignerField& w, const QuadratureSpec& spec) {
  constexpr int kScan = 64;
  const double h = kPi / kScan;
  auto value = [&](double th) { return purity_s1(w, th, spec).value; };
  int best = 1;
  double best_v = -1e300;
  for (int k = 1; k < kScan; ++k) {
    const double v = value(k * h);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  double a = (best - 1) * h, b = (best + 1) * h;
  if (a <= 0.0) a = 1e-6;
  if (b >= kPi) b = kPi - 1e-6;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = value(c), fd = value(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = value(d);
    }
  }
  const double th = fc > fd ? c : d;
  CriterionReport r = purity_s1(w, th, spec);
  if (best_v > r.value) r = purity_s1(w, best * h, spec);
  return r;
}

namespace {

struct Grid {
  Box box;
  int n = 0;
  double h = 0.0, k = 0.0;  // cell sizes in x and p
  std::vector<double> a;    // |f| at cell centres

  double x(int i) const { return box.x_min + (i + 0.5) * h; }
  double p(int j) const { return box.p_min + (j + 0.5) * k; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

std::vector<Disk> local_maxima(const Grid& g, int max_count) {
  double peak = 0.0;
  for (double v : g.a) peak = std::max(peak, v);
  std::vector<std::pair<double, Disk>> found;
  for (int i = 1; i + 1 < g.n; ++i) {
    for (int j = 1; j + 1 < g.n; ++j) {
      const double v = g.at(i, j);
      if (v < 1e-3 * peak) continue;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di)
        for (int dj = -1; dj <= 1 && is_max; ++dj)
          if ((di || dj) && g.at(i + di, j + dj) > v) is_max = false;
      if (is_max) found.push_back({v, Disk{g.x(i), g.p(j), 0.0}});
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  std::vector<Disk> out;
  const double sep = 3.0 * std::max(g.h, g.k);
  for (const auto& [v, d] : found) {
    bool close = false;
    for (const Disk& o : out) close = close || std::hypot(o.x - d.x, o.p - d.p) < sep;
    if (!close) out.push_back(d);
    if (static_cast<int>(out.size()) >= max_count) break;
  }
  return out;
}

}  // namespace

Region shrink_region(const WignerField& w, const Transform2& t, double theta,
                     const ShrinkOptions& opts) {
  QuadratureSpec spec = opts.spec;
  spec.throw_on_nonconvergence = false;
  const CriterionReport full = criterion2(w, t, theta, Region::full_plane(), spec);
  if (!full.violated) {
    throw NotViolatedError("criterion II is not violated on the full plane");
  }
  const SliceField sl = make_slice(w, t, theta);
  Grid g;
  g.box = sl.truncation_box();
  g.n = opts.grid;
  g.h = g.box.width() / g.n;
  g.k = g.box.height() / g.n;
  g.a.resize(static_cast<std::size_t>(g.n) * g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) g.a[static_cast<std::size_t>(i) * g.n + j] = std::abs(sl(g.x(i), g.p(j)));

  std::vector<Disk> disks = local_maxima(g, opts.max_disks);
  if (disks.empty()) throw NotViolatedError("slice has no local maxima to seed a region");

  // Greedy growth on the grid: enlarge the disk with the best gain per area.
  const double cell = g.h * g.k, step = std::max(g.h, g.k);
  const double target = full.bound * (1.0 + 1e-3) + full.error_estimate;
  std::vector<char> covered(g.a.size(), 0);
  double current = 0.0;
  auto sweep = [&](const Disk& d, bool commit) {
    double gain = 0.0;
    const int i0 = std::max(0, static_cast<int>((d.x - d.radius - g.box.x_min) / g.h) - 1);
    const int i1 = std::min(g.n - 1, static_cast<int>((d.x + d.radius - g.box.x_min) / g.h) + 1);
    const int j0 = std::max(0, static_cast<int>((d.p - d.radius - g.box.p_min) / g.k) - 1);
    const int j1 = std::min(g.n - 1, static_cast<int>((d.p + d.radius - g.box.p_min) / g.k) + 1);
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
        if (covered[idx] || !d.contains(g.x(i), g.p(j))) continue;
        gain += g.a[idx] * cell;
        if (commit) covered[idx] = 1;
      }
    }
    return gain;
  };
  for (int it = 0; current <= target && it < 100000; ++it) {
    int pick = -1;
    double best_ratio = -1.0, best_gain = 0.0;
    for (std::size_t k = 0; k < disks.size(); ++k) {
      Disk d = disks[k];
      const double r0 = d.radius;
      d.radius += step;
      const double gain = sweep(d, false);
      const double ratio = gain / (kPi * (d.radius * d.radius - r0 * r0));
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_gain = gain;
        pick = static_cast<int>(k);
      }
    }
    disks[pick].radius += step;
    current += best_gain;
    sweep(disks[pick], true);
    if (best_gain == 0.0 && disks[pick].radius > 2.0 * std::max(g.box.width(), g.box.height())) {
      break;
    }
  }
  std::erase_if(disks, [](const Disk& d) { return d.radius <= 0.0; });

  auto violates = [&](const std::vector<Disk>& ds) {
    if (ds.empty()) return false;
    return criterion2(w, t, theta, Region::disk_union(ds), spec).violated;
  };
  for (int k = 0; k < 200 && !violates(disks); ++k) {
    for (Disk& d : disks) d.radius *= 1.02;
  }
  if (!violates(disks)) {
    throw NotViolatedError("greedy region growth failed to reach a violation");
  }

  // No single disk may survive a further 5% radius cut.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < disks.size(); ++k) {
      std::vector<Disk> trial = disks;
      trial[k].radius *= 1.0 - opts.shrink_step;
      if (trial[k].radius < 1e-3) trial.erase(trial.begin() + static_cast<long>(k));
      if (violates(trial)) {
        disks = std::move(trial);
        changed = true;
        break;
      }
    }
  }
  return Region::disk_union(disks);
}

}  // namespace wigent
