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

#include <array>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wigent {

inline constexpr double kPi = std::numbers::pi;

// Error hierarchy. The CLI maps each leaf to a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class CutoffError : public Error {
 public:
  using Error::Error;
};

class NotViolatedError : public Error {
 public:
  using Error::Error;
};

// Quadrature coordinates of one mode, convention [x,p] = 2i (vacuum variance 1).
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

// Joint phase-space coordinates (x_A, p_A, x_B, p_B).
using PhaseVec4 = std::array<double, 4>;

// Affine map on one mode's phase plane:
//   (x', p') = [[a, b], [c, d]] (x, p) + (x0, p0),  with ad - bc = +-1.
class Transform2 {
 public:
  static constexpr double kDetTolerance = 1e-12;

  // Identity.
  Transform2() = default;

  // Throws InvalidArgument unless |det| is within kDetTolerance of 1.
  Transform2(double a, double b, double c, double d, double x0 = 0.0,
             double p0 = 0.0);

  static Transform2 identity() { return {}; }
  // (x, p) -> (x, -p): the phase-space image of a transposition.
  static Transform2 p_reflection() { return {1.0, 0.0, 0.0, -1.0}; }
  static Transform2 neg_identity() { return {-1.0, 0.0, 0.0, -1.0}; }
  static Transform2 rotation(double phi);
  static Transform2 squeeze(double t);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double x0() const { return x0_; }
  double p0() const { return p0_; }
  double det() const { return a_ * d_ - b_ * c_; }

  PhasePoint apply(PhasePoint pt) const {
    return {a_ * pt.x + b_ * pt.p + x0_, c_ * pt.x + d_ * pt.p + p0_};
  }
  Transform2 inverse() const;
  Transform2 with_offset(double x0, double p0) const;

  // Largest absolute difference over matrix entries and offsets.
  double distance(const Transform2& other) const;

 private:
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
  double x0_ = 0.0, p0_ = 0.0;
};

PhasePoint apply_transform(const Transform2& t, PhasePoint pt);

// Applies `second` first, then `first`.
Transform2 compose(const Transform2& first, const Transform2& second);

// Rotation-squeeze-rotation coordinates for the transform family:
//   M = R(phi1) diag(t, 1/t) R(phi2) [diag(1, -1) if reflect].
struct SymplecticParam {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double t = 1.0;
  bool reflect = false;
  double x0 = 0.0;
  double p0 = 0.0;
};

Transform2 param_to_transform(const SymplecticParam& p);

// Inverse of param_to_transform up to degenerate rotations (t == 1).
SymplecticParam transform_to_param(const Transform2& t);

// Axis-aligned rectangle [x_min, x_max] x [p_min, p_max].
struct Box {
  double x_min = 0.0, x_max = 0.0;
  double p_min = 0.0, p_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return p_max - p_min; }
  double area() const { return width() * height(); }
  bool empty() const { return !(x_max > x_min) || !(p_max > p_min); }
  bool contains(double x, double p) const {
    return x >= x_min && x <= x_max && p >= p_min && p <= p_max;
  }
  Box intersect(const Box& o) const;
};

struct Disk {
  double x = 0.0;
  double p = 0.0;
  double radius = 0.0;

  double area() const { return kPi * radius * radius; }
  bool contains(double px, double pp) const {
    const double dx = px - x, dp = pp - p;
    return dx * dx + dp * dp <= radius * radius;
  }
};

// Integration domain for the slice integrals.
class Region {
 public:
  enum class Kind { full_plane, rectangle, disk_union };

  static Region full_plane() { return Region(Kind::full_plane, {}, {}); }
  static Region rectangle(const Box& box);
  static Region disk_union(std::vector<Disk> disks);

  Kind kind() const { return kind_; }
  const Box& box() const { return box_; }
  const std::vector<Disk>& disks() const { return disks_; }
  bool contains(double x, double p) const;
  // Sum of disk areas (overlaps counted twice) or rectangle area; 0 for the plane.
  double nominal_area() const;

 private:
  Region(Kind kind, Box box, std::vector<Disk> disks)
      : kind_(kind), box_(box), disks_(std::move(disks)) {}

  Kind kind_;
  Box box_;
  std::vector<Disk> disks_;
};

std::string to_string(Region::Kind kind);

// Angles used by the slice criteria live in (0, pi); endpoints are rejected.
void require_open_angle(double theta, const char* what);

}  // namespace wigent
