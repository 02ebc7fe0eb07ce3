// Copyright 2026 The tfe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "tfe/inequalities.hpp"
#include "tfe/kernels.hpp"

namespace tfe::inequalities {

double sup_norm(const Grid& grid, std::span<const double> values) {
  const auto dense = dense_sample(grid, values);
  const double coarse = std::max(kernels::max_abs(dense), kernels::max_abs(values));
  // polish the best interior sample with Brent on the interpolant
  const std::size_t count = Grid::kDenseCount;
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i)
    if (std::abs(dense[i]) > std::abs(dense[best])) best = i;
  const double h = 2.0 / static_cast<double>(count);
  const double lo = std::max(-1.0, dense_point(best, count) - h);
  const double hi = std::min(1.0, dense_point(best, count) + h);
  auto neg = [&](double y) { return -std::abs(interpolate(grid, values, y)); };
  const auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
  return std::max(coarse, -r.second);
}

double lp_norm(const Grid& grid, std::span<const double> values, double p) {
  if (values.size() != grid.size()) throw StructuralError("norm: length mismatch");
  if (!(p >= 1.0)) throw ExponentError("norm: exponent must be >= 1");
  if (std::isinf(p)) return sup_norm(grid, values);
  std::vector<double> w(values.size());
  if (p == 2.0) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = values[i] * values[i];
    return std::sqrt(std::max(0.0, integrate(grid, w)));
  }
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(std::abs(values[i]), p);
  return std::pow(std::max(0.0, integrate(grid, w)), 1.0 / p);
}

double lp_norm(const Field& f, double p) { return lp_norm(*f.grid(), f.values(), p); }

double mean(const Field& f) { return integrate(*f.grid(), f) / kIntervalLength; }

bool has_zero(const Field& f, double tol) {
  const auto v = f.values();
  for (double x : v)
    if (std::abs(x) <= tol) return true;
  const auto dense = dense_sample(*f.grid(), v);
  double lo = dense.front(), hi = dense.front();
  for (double x : dense) {
    if (std::abs(x) <= tol) return true;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return lo < 0.0 && hi > 0.0;
}

double gn_delta(double q, double r) {
  if (!(q >= 1.0) || std::isinf(q)) throw ExponentError("gn: q must lie in [1, inf)");
  if (!(r >= 1.0)) throw ExponentError("gn: r must lie in [1, inf]");
  const double iq = 1.0 / q, ir = std::isinf(r) ? 0.0 : 1.0 / r;
  return iq / (iq + 1.0 - ir);
}

double gn_theta(double p, double q, double r) {
  if (!(p >= 1.0) || !(r >= 1.0)) throw ExponentError("gn: exponents must be >= 1");
  if (p < q) throw ExponentError("gn: interpolation needs q <= p");
  const double delta = gn_delta(q, r);
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  return delta * (1.0 - ip * q);
}

}  // namespace tfe::inequalities
