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

#include <optional>
#include <vector>

#include "wigent/core.hpp"
#include "wigent/criteria.hpp"
#include "wigent/quadrature.hpp"
#include "wigent/wigner.hpp"

namespace wigent {

struct OptimizeOptions {
  // Cheap rule used inside the search; no error estimate is computed.
  int search_order = 40;
  // Rule for the final report.
  QuadratureSpec final_spec = QuadratureSpec{}.with_order(120);
  // Exact slice integrals for Gaussian-mixture fields during the search.
  bool closed_form_search = true;
  int max_iterations = 200;
  double simplex_tolerance = 1e-9;
  // 0 selects the available hardware parallelism.
  int workers = 0;
  // Replaces the default 3^6 (3^5 for C3) lattice of continuous start
  // points when set; each start is run for both reflect branches.
  std::optional<std::vector<std::vector<double>>> starts;
};

struct TracePoint {
  int iteration = 0;  // cumulative simplex iterations over all starts
  double value = 0.0; // best criterion value so far
};

struct OptimizationResult {
  SymplecticParam best_param;
  double best_theta = kPi / 4;  // unused for C3
  double best_value = 0.0;      // equals report.value
  CriterionReport report;
  std::vector<TracePoint> trace;
  // Criterion value at every start point, in start order.
  std::vector<double> seed_values;
  int restarts = 0;
};

// Maximizes C1, maximizes C2 relative to its theta-dependent bound (full
// plane), or minimizes C3, over (phi1, phi2, log t, x0, p0[, theta]) and
// both reflect branches.
OptimizationResult optimize_criterion(const WignerField& w, CriterionId which,
                                      const OptimizeOptions& opts = {});

// Default start lattice: angles {0, pi/3, 2pi/3}, log t {-0.7, 0, 0.7},
// offsets {-1, 0, 1}, theta {pi/6, pi/4, pi/3} (theta omitted for C3).
std::vector<std::vector<double>> default_start_lattice(CriterionId which);

// Maximum over theta in (0, pi) of purity_s1: a 64-point scan followed by a
// golden-section refinement of the best bracket.
CriterionReport maximize_purity_s1(const WignerField& w, const QuadratureSpec& spec = {});

struct ShrinkOptions {
  QuadratureSpec spec{};
  int grid = 301;       // samples per axis for the greedy growth
  int max_disks = 12;   // local maxima used as disk centres
  double shrink_step = 0.05;
};

// Disk-union region, grown greedily from the local maxima of |slice| until the
// criterion-II integral exceeds the bound plus its error estimate, then
// reduced until no single disk survives a 5% radius cut. Throws
// NotViolatedError when the full-plane integral does not violate the bound.
Region shrink_region(const WignerField& w, const Transform2& t, double theta,
                     const ShrinkOptions& opts = {});

}  // namespace wigent
