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

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "tfe/cli.hpp"
#include "tfe/errors.hpp"
#include "tfe/transform.hpp"

using namespace tfe;
using transform::EulerianProfile;

namespace {

EulerianProfile steady() { return cli::eulerian_preset("steady"); }

model::PerturbationField parabola_field(const GridPtr& g, double c) {
  auto f = Field::sample(g, [c](double y) { return c * (1 - y * y); });
  std::vector<double> v(f.values().begin(), f.values().end());
  v.front() = v.back() = 0.0;
  return model::PerturbationField(Field(g, std::move(v)));
}

double profile_error(const EulerianProfile& a, const EulerianProfile& b) {
  const double lo = std::min(a.lambda_minus(), b.lambda_minus());
  const double hi = std::max(a.lambda_plus(), b.lambda_plus());
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = lo + (hi - lo) * i / 2000.0;
    worst = std::max(worst, std::abs(a.height(x) - b.height(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("normalization") {
  const auto shifted = cli::eulerian_preset("shifted-parabola:0.2");
  CHECK(shifted.mass() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(shifted.center() == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  const auto n = transform::normalize_profile(shifted);
  CHECK(std::abs(n.applied_shift() - 0.2) < 1e-12);
  CHECK(std::abs(n.applied_scale() - 1.0) < 1e-12);
  CHECK(std::abs(n.mass() - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(n.center()) < 1e-12);
  CHECK(profile_error(n, steady()) < 1e-12);

  const auto same = transform::normalize_profile(steady());
  CHECK(profile_error(same, steady()) < 1e-14);

  // (1 - x^2)_+ has mass 4/3 and edge slopes 2
  const auto tall = EulerianProfile::analytic(-1, 1, [](double x) { return 1 - x * x; },
                                              [](double x) { return -2 * x; });
  const auto t = transform::normalize_profile(tall);
  CHECK(t.applied_scale() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(t.lambda_plus() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(t.mass() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(t.slope_right()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(transform::eulerian_to_lagrangian(t, Grid::build(32)), ContactAngleError);
}

TEST_CASE("steady droplet maps to the identity") {
  const auto grid = Grid::build(32);
  const auto d = transform::eulerian_to_lagrangian(steady(), grid);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(std::abs(d.map.Z[i] - grid->nodes()[i]) < 1e-12);
    CHECK(std::abs(d.g.values()[i]) < 1e-12);
  }
  CHECK(d.slope_error < 1e-12);
  CHECK_FALSE(d.slope_warning);
}

TEST_CASE("unnormalized input is rejected") {
  const auto shifted = cli::eulerian_preset("shifted-parabola:0.2");
  CHECK_THROWS_AS(transform::eulerian_to_lagrangian(shifted, Grid::build(16)), InvalidProfileError);
}

TEST_CASE("round trip at n = 128") {
  const auto grid = Grid::build(128);
  for (const char* preset : {"shifted-parabola:0.2", "perturbed:0.15,0.1", "scaled-parabola:1.3",
                             "perturbed:-0.2,0.3"}) {
    CAPTURE(preset);
    const auto u0 = transform::normalize_profile(cli::eulerian_preset(preset));
    const auto d = transform::eulerian_to_lagrangian(u0, grid);
    for (std::size_t i = 1; i < grid->size(); ++i) CHECK(d.map.Z[i] > d.map.Z[i - 1]);
    const auto back = transform::lagrangian_to_eulerian(d.g);
    CHECK(profile_error(back.profile, u0) < 1e-6);
    CHECK(std::abs(back.map.lambda_minus - u0.lambda_minus()) < 1e-10);
    CHECK(std::abs(back.map.lambda_plus - u0.lambda_plus()) < 1e-10);
    // gauge: int (1 - y^2) Z dy = 0
    std::vector<double> w(grid->size());
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] = (1 - grid->nodes()[i] * grid->nodes()[i]) * back.map.Z[i];
    CHECK(std::abs(integrate(*grid, w)) < 1e-10);
  }
}

TEST_CASE("reconstruction from g") {
  const auto grid = Grid::build(48);
  const auto z = transform::reconstruct_map(parabola_field(grid, 0.0));
  for (std::size_t i = 0; i < grid->size(); ++i) CHECK(std::abs(z.Z[i] - grid->nodes()[i]) < 1e-14);
  CHECK(z.lambda_minus == doctest::Approx(-1.0).epsilon(1e-14));

  const auto g = parabola_field(grid, 0.1);
  const auto m = transform::reconstruct_map(g);
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double y) { return 1.0 / (1.0 + 0.1 * (1 - y * y)); }, -1.0, 1.0, 15, 1e-15);
  CHECK(std::abs((m.lambda_plus - m.lambda_minus) - oracle) < 1e-10);
  const auto f = transform::contact_point_formulas(g);
  CHECK(std::abs(f.width - oracle) < 1e-10);
  CHECK(std::abs(f.sum) < 1e-14);  // even g
  CHECK(std::abs(m.lambda_plus + m.lambda_minus) < 1e-14);

  const auto mom = transform::reconstructed_moments(g, m);
  CHECK(std::abs(mom.mass - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(mom.center) < 1e-12);

  // d_y Z - 1 = -g / (1 + g)
  const auto zy = grid->diff(1).apply(m.Z.values());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double gi = g.values()[i];
    CHECK(std::abs(zy[i] - 1.0 + gi / (1.0 + gi)) < 1e-10);
  }
}

TEST_CASE("eulerian derivatives of the steady droplet") {
  const auto grid = Grid::build(32);
  const auto g = parabola_field(grid, 0.0);
  const auto d1 = transform::eulerian_derivatives(g, 1);
  const auto d3 = transform::eulerian_derivatives(g, 3);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(d1[i] == -grid->nodes()[i]);
    CHECK(d3[i] == 0.0);
  }
  CHECK_THROWS(transform::eulerian_derivatives(g, 0));

  // against the nested form (G d_y)^k (u_inf G)
  const auto h = parabola_field(grid, 0.2);
  const auto y = grid->nodes();
  std::vector<double> G(grid->size()), w(grid->size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    G[i] = 1.0 + h.values()[i];
    w[i] = transform::steady_height(y[i]) * G[i];
  }
  for (int k = 1; k <= 3; ++k) {
    const auto d = grid->diff(1).apply(w);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = G[i] * d[i];
    const auto e = transform::eulerian_derivatives(h, k);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(e[i] - w[i]) < 1e-9);
  }
}

TEST_CASE("profiles read from disk") {
  const auto path = std::filesystem::temp_directory_path() / "tfe_profile_test.txt";
  {
    std::ofstream f(path);
    f << "# x u\n";
    for (int i = 0; i <= 400; ++i) {
      const double x = -1.0 + i / 200.0 + 0.1;
      const double s = x - 0.1;
      f << x << " " << (i == 0 || i == 400 ? 0.0 : 0.5 * (1 - s * s)) << "\n";
    }
  }
  const auto p = transform::read_profile(path.string());
  CHECK(p.lambda_minus() == doctest::Approx(-0.9));
  CHECK(p.mass() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  const auto n = transform::normalize_profile(p);
  CHECK(std::abs(n.center()) < 1e-9);
  const auto d = transform::eulerian_to_lagrangian(n, Grid::build(32));
  CHECK(d.slope_error < 1e-3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(transform::read_profile("/nonexistent/profile.txt"), IoError);
}
