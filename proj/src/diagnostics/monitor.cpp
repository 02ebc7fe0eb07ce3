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
#include <limits>

#include "tfe/diagnostics.hpp"

namespace tfe::diagnostics {

std::vector<double> time_derivative(std::span<const double> t, std::span<const double> v) {
  const std::size_t n = t.size();
  if (v.size() != n) throw StructuralError("time derivative: length mismatch");
  if (n < 3) throw InsufficientDataError("time derivative: need at least three samples");
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
    d[i] = (h0 * h0 * v[i + 1] - h1 * h1 * v[i - 1] + (h1 * h1 - h0 * h0) * v[i]) /
           (h0 * h1 * (h0 + h1));
  }
  auto one_sided = [](double h0, double h1, double f0, double f1, double f2) {
    // derivative at the first of three points spaced h0, h1
    return -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * f0 + (h0 + h1) / (h0 * h1) * f1 -
           h0 / (h1 * (h0 + h1)) * f2;
  };
  d[0] = one_sided(t[1] - t[0], t[2] - t[1], v[0], v[1], v[2]);
  d[n - 1] = -one_sided(t[n - 1] - t[n - 2], t[n - 2] - t[n - 3], v[n - 1], v[n - 2], v[n - 3]);
  return d;
}

EnergyMonitor energy_inequality_monitor(const evolution::TrajectoryRecord& record,
                                        std::optional<double> a_check) {
  record.validate();
  EnergyMonitor m;
  const std::size_t n = record.size();
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    if (record.E[i] > 0.0) b = std::min(b, record.D[i] / record.E[i]);
  if (std::isinf(b)) return m;
  m.vacuous = false;
  m.b_calibrated = b;
  if (n < 3) return m;

  const auto dE = time_derivative(record.times, record.E);
  std::vector<std::pair<double, double>> sides;  // (lhs, bracket)
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double E = record.E[i], D = record.D[i];
    if (!(E > 0.0)) continue;
    const double bracket =
        E * E + std::pow(E, 10.0) + (std::cbrt(E) + std::pow(E, 2.5)) * D;
    sides.emplace_back(dE[i] + D, bracket);
  }
  m.evaluated = sides.size();
  double a = 0.0;
  for (auto [lhs, br] : sides)
    if (lhs > 0.0) a = std::max(a, lhs / br);
  m.a_calibrated = a;
  const double used = a_check.value_or(a);
  m.worst_margin = std::numeric_limits<double>::infinity();
  for (auto [lhs, br] : sides) m.worst_margin = std::min(m.worst_margin, used * br - lhs);
  if (sides.empty()) m.worst_margin = 0.0;
  return m;
}

}  // namespace tfe::diagnostics
