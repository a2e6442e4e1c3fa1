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

#include "wigent/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <sstream>

#include <gsl/gsl_integration.h>

namespace wigent {

void QuadratureSpec::validate() const {
  if (order < 8) throw InvalidArgument("quadrature order must be >= 8");
  if (!(tolerance > 0.0)) {
    throw InvalidArgument("quadrature tolerance must be > 0");
  }
  if (max_panels < 16) throw InvalidArgument("max_panels must be >= 16");
}

QuadratureSpec QuadratureSpec::with_truncation(const Box& box) const {
  QuadratureSpec s = *this;
  s.truncation = box;
  return s;
}

QuadratureSpec QuadratureSpec::with_order(int n) const {
  QuadratureSpec s = *this;
  s.order = n;
  return s;
}

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  gsl_integration_fixed_workspace* w =
      gsl_integration_fixed_alloc(gsl_integration_fixed_legendre, n, -1.0, 1.0, 0.0, 0.0);
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  gl.nodes.assign(x, x + n);
  gl.weights.assign(wt, wt + n);
  gsl_integration_fixed_free(w);
  return gl;
}

int lower_order(int n) { return std::max(4, n - std::max(2, n / 4)); }

double roundoff_floor(double abs_sum) { return 16.0 * DBL_EPSILON * abs_sum; }

constexpr int kPanelOrder = 8;

// Global adaptive subdivision on a rectangle: the panel with the largest
// coarse-vs-children difference is split until the summed estimate meets the
// tolerance or the panel budget runs out.
class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(const Integrand& f, int max_panels)
      : f_(f), max_panels_(max_panels) {}

  IntegralResult run(const Box& domain, double tolerance) {
    constexpr int kBase = 4;
    const double hx = domain.width() / kBase, hp = domain.height() / kBase;
    for (int i = 0; i < kBase; ++i) {
      for (int j = 0; j < kBase; ++j) {
        const Box b{domain.x_min + i * hx, domain.x_min + (i + 1) * hx,
                    domain.p_min + j * hp, domain.p_min + (j + 1) * hp};
        push(b, rule(b, nullptr));
      }
    }
    while (err_sum_ > tolerance &&
           static_cast<int>(heap_.size()) + 3 <= max_panels_) {
      const Node top = heap_.top();
      heap_.pop();
      err_sum_ -= top.error;
      for (int k = 0; k < 4; ++k) push(top.children[k], top.child_values[k]);
      if (heap_.size() % 256 == 0) resum();
    }
    std::vector<Node> leaves;
    leaves.reserve(heap_.size());
    while (!heap_.empty()) {
      leaves.push_back(heap_.top());
      heap_.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    IntegralResult r;
    double abs_sum = 0.0;
    for (const Node& n : leaves) {
      r.value += n.value;
      r.error_estimate += n.error;
      abs_sum += n.abs_sum;
    }
    r.error_estimate += roundoff_floor(abs_sum);
    r.evaluations = evaluations_;
    return r;
  }

 private:
  struct Node {
    long id = 0;
    double value = 0.0;
    double error = 0.0;
    double abs_sum = 0.0;
    Box children[4];
    double child_values[4] = {0, 0, 0, 0};
  };
  struct Cmp {
    bool operator()(const Node& a, const Node& b) const {
      if (a.error != b.error) return a.error < b.error;
      return a.id > b.id;
    }
  };

  double rule(const Box& b, double* abs_sum) {
    evaluations_ += static_cast<long>(kPanelOrder) * kPanelOrder;
    return tensor_gauss_legendre(f_, b, kPanelOrder, abs_sum);
  }

  void push(const Box& b, double coarse) {
    Node n;
    n.id = next_id_++;
    const double xm = 0.5 * (b.x_min + b.x_max);
    const double pm = 0.5 * (b.p_min + b.p_max);
    n.children[0] = {b.x_min, xm, b.p_min, pm};
    n.children[1] = {xm, b.x_max, b.p_min, pm};
    n.children[2] = {b.x_min, xm, pm, b.p_max};
    n.children[3] = {xm, b.x_max, pm, b.p_max};
    double fine = 0.0;
    for (int k = 0; k < 4; ++k) {
      double a = 0.0;
      n.child_values[k] = rule(n.children[k], &a);
      n.abs_sum += a;
      fine += n.child_values[k];
    }
    n.value = fine;
    n.error = std::abs(fine - coarse);
    err_sum_ += n.error;
    heap_.push(n);
  }

  // Guards the running error sum against cancellation drift.
  void resum() {
    std::vector<Node> tmp;
    tmp.reserve(heap_.size());
    double s = 0.0;
    while (!heap_.empty()) {
      tmp.push_back(heap_.top());
      s += tmp.back().error;
      heap_.pop();
    }
    for (Node& n : tmp) heap_.push(std::move(n));
    err_sum_ = s;
  }

  const Integrand& f_;
  int max_panels_;
  long next_id_ = 0;
  long evaluations_ = 0;
  double err_sum_ = 0.0;
  std::priority_queue<Node, std::vector<Node>, Cmp> heap_;
};

// Integrand over the polar parameter rectangle [0, R^2] x [0, 2 pi] of disk k,
// with points already covered by disks 0..k-1 masked out.
Integrand disk_integrand(const Integrand& f, const std::vector<Disk>& disks,
                         std::size_t k, bool absolute) {
  return [&f, &disks, k, absolute](double u, double phi) {
    const Disk& d = disks[k];
    const double r = std::sqrt(std::max(u, 0.0));
    const double x = d.x + r * std::cos(phi);
    const double p = d.p + r * std::sin(phi);
    for (std::size_t j = 0; j < k; ++j) {
      if (disks[j].contains(x, p)) return 0.0;
    }
    const double v = f(x, p);
    return 0.5 * (absolute ? std::abs(v) : v);
  };
}

bool disks_overlap(const std::vector<Disk>& disks) {
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double dx = disks[i].x - disks[j].x, dp = disks[i].p - disks[j].p;
      const double rr = disks[i].radius + disks[j].radius;
      if (dx * dx + dp * dp < rr * rr) return true;
    }
  }
  return false;
}

// One pass of the tensor rule over the region at the given order.
double tensor_pass(const Integrand& f, const Region& region, const Box& plane,
                   int order, bool absolute, double* abs_sum) {
  Integrand g = f;
  if (absolute) g = [&f](double x, double p) { return std::abs(f(x, p)); };
  switch (region.kind()) {
    case Region::Kind::full_plane:
      return tensor_gauss_legendre(g, plane, order, abs_sum);
    case Region::Kind::rectangle:
      return tensor_gauss_legendre(g, region.box(), order, abs_sum);
    case Region::Kind::disk_union: {
      double total = 0.0, atotal = 0.0;
      const auto& disks = region.disks();
      for (std::size_t k = 0; k < disks.size(); ++k) {
        const Box polar{0.0, disks[k].radius * disks[k].radius, 0.0, 2.0 * kPi};
        double a = 0.0;
        total += tensor_gauss_legendre(disk_integrand(f, disks, k, absolute),
                                       polar, order, &a);
        atotal += a;
      }
      if (abs_sum) *abs_sum = atotal;
      return total;
    }
  }
  return 0.0;
}

Box plane_box(const Region& region, const QuadratureSpec& spec) {
  if (region.kind() != Region::Kind::full_plane) return {};
  if (!spec.truncation) {
    throw InvalidArgument("full-plane integration needs a truncation box");
  }
  return *spec.truncation;
}

void check_convergence(const IntegralResult& r, const QuadratureSpec& spec) {
  if (!spec.throw_on_nonconvergence) return;
  if (!(r.error_estimate <= 10.0 * spec.tolerance) || !std::isfinite(r.value)) {
    std::ostringstream os;
    os << "quadrature did not converge: estimate " << r.error_estimate
       << " exceeds 10x tolerance " << spec.tolerance;
    throw QuadratureError(os.str());
  }
}

IntegralResult tensor_integrate(const Integrand& f, const Region& region,
                                const QuadratureSpec& spec, bool absolute) {
  const Box plane = plane_box(region, spec);
  IntegralResult r;
  if (region.kind() == Region::Kind::full_plane && plane.empty()) return r;
  const int n = spec.order;
  const int m = lower_order(n);
  double abs_sum = 0.0;
  const double hi = tensor_pass(f, region, plane, n, absolute, &abs_sum);
  const double lo = tensor_pass(f, region, plane, m, absolute, nullptr);
  const long per_axis = static_cast<long>(n) * n + static_cast<long>(m) * m;
  const long pieces = region.kind() == Region::Kind::disk_union
                          ? static_cast<long>(region.disks().size())
                          : 1;
  r.value = hi;
  r.error_estimate = std::abs(hi - lo) + roundoff_floor(abs_sum);
  r.evaluations = per_axis * pieces;
  return r;
}

IntegralResult adaptive_integrate(const Integrand& f, const Region& region,
                                  const QuadratureSpec& spec, bool absolute) {
  const Box plane = plane_box(region, spec);
  IntegralResult total;
  auto accumulate = [&total](const IntegralResult& r) {
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  };
  switch (region.kind()) {
    case Region::Kind::full_plane:
    case Region::Kind::rectangle: {
      const Box dom =
          region.kind() == Region::Kind::full_plane ? plane : region.box();
      if (dom.empty()) return total;
      Integrand g = f;
      if (absolute) g = [&f](double x, double p) { return std::abs(f(x, p)); };
      AdaptiveIntegrator ai(g, spec.max_panels);
      accumulate(ai.run(dom, spec.tolerance));
      break;
    }
    case Region::Kind::disk_union: {
      const auto& disks = region.disks();
      const double share = spec.tolerance / static_cast<double>(disks.size());
      const int budget =
          std::max(16, spec.max_panels / static_cast<int>(disks.size()));
      for (std::size_t k = 0; k < disks.size(); ++k) {
        const Integrand g = disk_integrand(f, disks, k, absolute);
        AdaptiveIntegrator ai(g, budget);
        const Box polar{0.0, disks[k].radius * disks[k].radius, 0.0, 2.0 * kPi};
        accumulate(ai.run(polar, share));
      }
      break;
    }
  }
  return total;
}

// Samples f on the tensor grid of the region and reports whether it takes
// both signs beyond a relative noise floor.
bool changes_sign(const Integrand& f, const Region& region,
                  const QuadratureSpec& spec) {
  const Box plane = plane_box(region, spec);
  const int n = std::min(spec.order, 64);
  const GaussLegendre& gl = gauss_legendre(n);
  double lo = 0.0, hi = 0.0;
  auto scan = [&](const Integrand& g, const Box& b) {
    const double cx = 0.5 * (b.x_min + b.x_max), hx = 0.5 * b.width();
    const double cp = 0.5 * (b.p_min + b.p_max), hp = 0.5 * b.height();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = g(cx + hx * gl.nodes[i], cp + hp * gl.nodes[j]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  };
  switch (region.kind()) {
    case Region::Kind::full_plane:
      if (plane.empty()) return false;
      scan(f, plane);
      break;
    case Region::Kind::rectangle:
      scan(f, region.box());
      break;
    case Region::Kind::disk_union: {
      const auto& disks = region.disks();
      for (std::size_t k = 0; k < disks.size(); ++k) {
        const Box polar{0.0, disks[k].radius * disks[k].radius, 0.0, 2.0 * kPi};
        scan(disk_integrand(f, disks, k, false), polar);
      }
      break;
    }
  }
  const double floor = 1e-10 * std::max(hi, -lo);
  return lo < -floor && hi > floor;
}

// Tensor results that miss the tolerance are redone by adaptive subdivision;
// the better-estimated of the two is kept.
IntegralResult with_fallback(const IntegralResult& tensor, const Integrand& f,
                             const Region& region, const QuadratureSpec& spec,
                             bool absolute) {
  if (tensor.error_estimate <= spec.tolerance) return tensor;
  IntegralResult a = adaptive_integrate(f, region, spec, absolute);
  a.evaluations += tensor.evaluations;
  return a.error_estimate < tensor.error_estimate ? a : tensor;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache
             .emplace(order, std::make_unique<GaussLegendre>(
                                 compute_gauss_legendre(order)))
             .first;
  }
  return *it->second;
}

double tensor_gauss_legendre(const Integrand& f, const Box& box, int order,
                             double* abs_sum) {
  const GaussLegendre& gl = gauss_legendre(order);
  const double cx = 0.5 * (box.x_min + box.x_max), hx = 0.5 * box.width();
  const double cp = 0.5 * (box.p_min + box.p_max), hp = 0.5 * box.height();
  double total = 0.0, atotal = 0.0;
  for (int i = 0; i < order; ++i) {
    const double x = cx + hx * gl.nodes[i];
    double row = 0.0, arow = 0.0;
    for (int j = 0; j < order; ++j) {
      const double v = gl.weights[j] * f(x, cp + hp * gl.nodes[j]);
      row += v;
      arow += std::abs(v);
    }
    total += gl.weights[i] * row;
    atotal += gl.weights[i] * arow;
  }
  if (abs_sum) *abs_sum = atotal * hx * hp;
  return total * hx * hp;
}

IntegralResult integrate(const Integrand& f, const Region& region,
                         const QuadratureSpec& spec) {
  spec.validate();
  if (spec.rule == QuadratureSpec::Rule::adaptive_subdivision) {
    IntegralResult r = adaptive_integrate(f, region, spec, false);
    check_convergence(r, spec);
    return r;
  }
  IntegralResult r = tensor_integrate(f, region, spec, false);
  if (region.kind() == Region::Kind::disk_union && disks_overlap(region.disks())) {
    // Masked overlaps are discontinuous in the polar rule; the order
    // difference already reflects it, widen by a factor for safety margin.
    r.error_estimate *= 4.0;
  }
  r = with_fallback(r, f, region, spec, false);
  check_convergence(r, spec);
  return r;
}

IntegralResult integrate_abs(const Integrand& f, const Region& region,
                             const QuadratureSpec& spec) {
  spec.validate();
  const bool adaptive =
      spec.rule == QuadratureSpec::Rule::adaptive_subdivision ||
      changes_sign(f, region, spec);
  IntegralResult r = adaptive ? adaptive_integrate(f, region, spec, true)
                              : tensor_integrate(f, region, spec, true);
  if (!adaptive && region.kind() == Region::Kind::disk_union &&
      disks_overlap(region.disks())) {
    r.error_estimate *= 4.0;
  }
  if (!adaptive) r = with_fallback(r, f, region, spec, true);
  check_convergence(r, spec);
  return r;
}

}  // namespace wigent
