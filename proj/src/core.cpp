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

#include "wigent/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace wigent {

Transform2::Transform2(double a, double b, double c, double d, double x0,
                       double p0)
    : a_(a), b_(b), c_(c), d_(d), x0_(x0), p0_(p0) {
  const double dt = det();
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(d) || !std::isfinite(x0) || !std::isfinite(p0)) {
    throw InvalidArgument("transform entries must be finite");
  }
  if (std::abs(dt - 1.0) >= kDetTolerance &&
      std::abs(dt + 1.0) >= kDetTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "transform determinant must be +1 or -1, got " << dt;
    throw InvalidArgument(os.str());
  }
}

Transform2 Transform2::rotation(double phi) {
  const double cs = std::cos(phi), sn = std::sin(phi);
  return {cs, -sn, sn, cs};
}

Transform2 Transform2::squeeze(double t) {
  if (!(t > 0.0)) throw InvalidArgument("squeeze factor must be positive");
  return {t, 0.0, 0.0, 1.0 / t};
}

Transform2 Transform2::inverse() const {
  // det is +-1, so the inverse matrix is adj / det.
  const double dt = det();
  const double ia = d_ / dt, ib = -b_ / dt, ic = -c_ / dt, id = a_ / dt;
  return {ia, ib, ic, id, -(ia * x0_ + ib * p0_), -(ic * x0_ + id * p0_)};
}

Transform2 Transform2::with_offset(double x0, double p0) const {
  return {a_, b_, c_, d_, x0, p0};
}

double Transform2::distance(const Transform2& o) const {
  return std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_),
                   std::abs(c_ - o.c_), std::abs(d_ - o.d_),
                   std::abs(x0_ - o.x0_), std::abs(p0_ - o.p0_)});
}

PhasePoint apply_transform(const Transform2& t, PhasePoint pt) {
  return t.apply(pt);
}

Transform2 compose(const Transform2& first, const Transform2& second) {
  // first(second(v)) = M1 (M2 v + o2) + o1
  const double a = first.a() * second.a() + first.b() * second.c();
  const double b = first.a() * second.b() + first.b() * second.d();
  const double c = first.c() * second.a() + first.d() * second.c();
  const double d = first.c() * second.b() + first.d() * second.d();
  const double x0 =
      first.a() * second.x0() + first.b() * second.p0() + first.x0();
  const double p0 =
      first.c() * second.x0() + first.d() * second.p0() + first.p0();
  return {a, b, c, d, x0, p0};
}

namespace {

Eigen::Matrix2d rot(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

double wrap_angle(double phi) {
  const double two_pi = 2.0 * kPi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace

Transform2 param_to_transform(const SymplecticParam& p) {
  if (!(p.t > 0.0) || !std::isfinite(p.t)) {
    throw InvalidArgument("squeeze factor t must be positive and finite");
  }
  Eigen::Matrix2d m = rot(p.phi1) * Eigen::Vector2d(p.t, 1.0 / p.t).asDiagonal() *
                      rot(p.phi2);
  if (p.reflect) m.col(1) = -m.col(1);
  // The product is unimodular up to rounding; renormalise so the det check
  // never trips on large squeeze factors.
  const double dt = m.determinant();
  const double want = p.reflect ? -1.0 : 1.0;
  m /= std::sqrt(dt / want);
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1), p.x0, p.p0};
}

SymplecticParam transform_to_param(const Transform2& t) {
  SymplecticParam out;
  out.reflect = t.det() < 0.0;
  out.x0 = t.x0();
  out.p0 = t.p0();
  Eigen::Matrix2d m;
  m << t.a(), t.b(), t.c(), t.d();
  if (out.reflect) m.col(1) = -m.col(1);
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  Eigen::Matrix2d u = svd.matrixU();
  Eigen::Matrix2d v = svd.matrixV();
  // det(m) = +1 so det(u) and det(v) agree; make both proper rotations.
  if (u.determinant() < 0.0) {
    u.col(1) = -u.col(1);
    v.col(1) = -v.col(1);
  }
  const Eigen::Matrix2d vt = v.transpose();
  out.t = svd.singularValues()(0);
  out.phi1 = wrap_angle(std::atan2(u(1, 0), u(0, 0)));
  out.phi2 = wrap_angle(std::atan2(vt(1, 0), vt(0, 0)));
  return out;
}

Box Box::intersect(const Box& o) const {
  return {std::max(x_min, o.x_min), std::min(x_max, o.x_max),
          std::max(p_min, o.p_min), std::min(p_max, o.p_max)};
}

Region Region::rectangle(const Box& box) {
  if (box.empty()) throw InvalidArgument("rectangle region must be nonempty");
  return Region(Kind::rectangle, box, {});
}

Region Region::disk_union(std::vector<Disk> disks) {
  if (disks.empty()) throw InvalidArgument("disk union needs at least one disk");
  for (const Disk& d : disks) {
    if (!(d.radius > 0.0) || !std::isfinite(d.radius) || !std::isfinite(d.x) ||
        !std::isfinite(d.p)) {
      throw InvalidArgument("disks must have finite centers and radius > 0");
    }
  }
  return Region(Kind::disk_union, {}, std::move(disks));
}

bool Region::contains(double x, double p) const {
  switch (kind_) {
    case Kind::full_plane:
      return true;
    case Kind::rectangle:
      return box_.contains(x, p);
    case Kind::disk_union:
      return std::any_of(disks_.begin(), disks_.end(),
                         [&](const Disk& d) { return d.contains(x, p); });
  }
  return false;
}

double Region::nominal_area() const {
  switch (kind_) {
    case Kind::full_plane:
      return 0.0;
    case Kind::rectangle:
      return box_.area();
    case Kind::disk_union: {
      double a = 0.0;
      for (const Disk& d : disks_) a += d.area();
      return a;
    }
  }
  return 0.0;
}

std::string to_string(Region::Kind kind) {
  switch (kind) {
    case Region::Kind::full_plane:
      return "full-plane";
    case Region::Kind::rectangle:
      return "rectangle";
    case Region::Kind::disk_union:
      return "disk-union";
  }
  return "unknown";
}

void require_open_angle(double theta, const char* what) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw InvalidArgument(std::string(what) + ": theta must lie in (0, pi)");
  }
}

}  // namespace wigent
