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
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "tfe/inequalities.hpp"

namespace tfe::inequalities {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// std::uniform_real_distribution is implementation-defined; map the raw
// 64-bit output by hand so corpora agree across standard libraries.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<unsigned>(hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

constexpr double kPi = std::numbers::pi;

}  // namespace

CorpusSample corpus_sample(const GridPtr& grid, std::uint64_t seed, std::size_t index) {
  Uniform u(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index))));

  // Admissible: (1 - y^2) p(y) with deg p <= 6, or a sine series vanishing
  // at both ends; amplitude keeps |g| < 1.
  std::array<double, 7> c{};
  std::array<double, 4> a{};
  const bool poly = index % 2 == 0;
  const double amp = u(0.05, 1.0);
  if (poly) {
    const int deg = u.integer(0, 6);
    for (int k = 0; k <= deg; ++k) c[k] = amp * u(-0.1, 0.1);
  } else {
    for (int k = 0; k < 4; ++k) a[k] = amp * u(-0.2, 0.2) / (k + 1);
  }
  auto admissible = [&](double y) {
    if (poly) {
      double p = 0.0;
      for (int k = 6; k >= 0; --k) p = p * y + c[k];
      return (1.0 - y * y) * p;
    }
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += a[k] * std::sin((k + 1) * kPi * (y + 1.0) / 2.0);
    return s;
  };

  // General: Chebyshev series of degree <= 6 plus a cosine mode.
  std::array<double, 7> t{};
  for (double& v : t) v = u(-1.0, 1.0);
  const double omega = u(0.0, 3.0 * kPi);
  const double phase = u(0.0, 2.0 * kPi);
  const double wave = u(-1.0, 1.0);
  auto general = [&](double y) {
    double s = 0.0;
    const double th = std::acos(std::clamp(y, -1.0, 1.0));
    for (int k = 0; k < 7; ++k) s += t[k] * std::cos(k * th);
    return s + wave * std::cos(omega * y + phase);
  };
  const double y0 = u(-1.0, 1.0);
  const double shift = general(y0);

  auto gvals = Field::sample(grid, admissible);
  std::vector<double> gv(gvals.values().begin(), gvals.values().end());
  gv.front() = 0.0;
  gv.back() = 0.0;
  return CorpusSample{model::PerturbationField(Field(grid, std::move(gv))),
                      Field::sample(grid, general),
                      Field::sample(grid, [&](double y) { return general(y) - shift; })};
}

model::PerturbationField admissible_polynomial(const GridPtr& grid, std::uint64_t seed,
                                               std::size_t index) {
  // Stream separated from corpus_sample by the odd constant.
  Uniform u(splitmix64(~seed ^ splitmix64(static_cast<std::uint64_t>(index) * 0x2545f4914f6cdd1dULL)));
  std::array<double, 7> c{};
  const int deg = u.integer(0, 6);
  for (int k = 0; k <= deg; ++k) c[k] = u(-0.1, 0.1);
  auto f = Field::sample(grid, [&](double y) {
    double p = 0.0;
    for (int k = 6; k >= 0; --k) p = p * y + c[k];
    return (1.0 - y * y) * p;
  });
  std::vector<double> v(f.values().begin(), f.values().end());
  v.front() = 0.0;
  v.back() = 0.0;
  return model::PerturbationField(Field(grid, std::move(v)));
}

}  // namespace tfe::inequalities
