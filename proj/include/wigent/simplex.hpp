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
#include <vector>

namespace wigent {

using Objective = std::function<double(const std::vector<double>&)>;

struct SimplexOptions {
  int max_iterations = 200;
  double size_tolerance = 1e-9;
  // Initial simplex step per coordinate; a single entry is broadcast.
  std::vector<double> step{0.3};
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Minimizes f by Nelder-Mead (GSL nmsimplex2). Exceptions thrown by f are
// propagated after the minimizer is released.
SimplexResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                          const SimplexOptions& opts = {});

}  // namespace wigent
