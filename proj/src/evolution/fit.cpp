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

#include <cmath>
#include <limits>
#include <vector>

#include "tfe/evolution.hpp"

namespace tfe::evolution {

DecayFit fit_log_linear(std::span<const double> t, std::span<const double> v, Window window,
                        double floor) {
  if (t.size() != v.size()) throw StructuralError("fit: series lengths differ");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.begin || t[i] > window.end || !(v[i] > floor)) continue;
    ts.push_back(t[i]);
    ys.push_back(std::log(v[i]));
  }
  const std::size_t m = ts.size();
  if (m < 4) throw InsufficientDataError("fit: fewer than 4 samples in window");
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mt += ts[i];
    my += ys[i];
  }
  mt /= static_cast<double>(m);
  my /= static_cast<double>(m);
  // centered sums, two passes
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (ts[i] - mt) * (ts[i] - mt);
    sxy += (ts[i] - mt) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("fit: window has no time spread");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mt;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ys[i] - (intercept + slope * ts[i]);
    ss_res += e * e;
  }
  // log v constant up to rounding: a perfect (flat) fit
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(my));
  const bool flat = syy <= static_cast<double>(m) * noise * noise;
  DecayFit fit;
  fit.gamma = flat ? 0.0 : -slope;
  fit.intercept = intercept;
  fit.samples = m;
  fit.r_squared = flat ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

DecayFit fit_decay(const TrajectoryRecord& record, Window window) {
  return fit_log_linear(record.times, record.E, window);
}

Window default_fit_window(const TrajectoryRecord& record, double floor) {
  if (record.size() == 0) throw InsufficientDataError("fit: empty record");
  std::size_t last = 0;
  while (last + 1 < record.size() && record.E[last + 1] > floor) ++last;
  const double t1 = record.times[last];
  return {0.5 * t1, t1};
}

}  // namespace tfe::evolution
