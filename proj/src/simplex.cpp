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

#include "wigent/simplex.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "wigent/core.hpp"

namespace wigent {

namespace {

struct Callback {
  const Objective* f;
  std::vector<double> buf;
  std::exception_ptr error;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* cb = static_cast<Callback*>(params);
  if (cb->error) return 1e300;
  for (std::size_t i = 0; i < cb->buf.size(); ++i) cb->buf[i] = gsl_vector_get(v, i);
  try {
    const double y = (*cb->f)(cb->buf);
    return std::isfinite(y) ? y : 1e300;
  } catch (...) {
    cb->error = std::current_exception();
    return 1e300;
  }
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

SimplexResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                          const SimplexOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("nelder_mead needs at least one variable");
  if (opts.step.empty()) throw InvalidArgument("nelder_mead needs a step size");
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;

  Callback cb{&f, std::vector<double>(n), nullptr};
  gsl_multimin_function fn{&trampoline, n, &cb};
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, x0[i]);
    gsl_vector_set(step.get(), i, opts.step.size() == 1 ? opts.step[0] : opts.step.at(i));
  }
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());

  SimplexResult out;
  for (out.iterations = 0; out.iterations < opts.max_iterations;) {
    ++out.iterations;
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (cb.error) break;
    const double size = gsl_multimin_fminimizer_size(m.get());
    if (gsl_multimin_test_size(size, opts.size_tolerance) == GSL_SUCCESS) break;
  }
  if (cb.error) std::rethrow_exception(cb.error);
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = gsl_vector_get(gsl_multimin_fminimizer_x(m.get()), i);
  out.value = gsl_multimin_fminimizer_minimum(m.get());
  return out;
}

}  // namespace wigent
