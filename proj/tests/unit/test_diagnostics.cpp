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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "tfe/diagnostics.hpp"
#include "tfe/errors.hpp"
#include "tfe/transform.hpp"

using namespace tfe;

namespace {

model::PerturbationField field(const GridPtr& g, double even, double odd) {
  auto f = Field::sample(g, [=](double y) { return (1 - y * y) * (even + odd * y); });
  std::vector<double> v(f.values().begin(), f.values().end());
  v.front() = v.back() = 0.0;
  return model::PerturbationField(Field(g, std::move(v)));
}

evolution::EvolveResult run(const GridPtr& g, double even, double odd, double t_end = 1.0) {
  evolution::StepperConfig cfg;
  cfg.t_end = t_end;
  return evolution::evolve(field(g, even, odd), cfg);
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tfe_diag_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("time derivative") {
  std::vector<double> t = {0.0, 0.1, 0.25, 0.3, 0.5, 0.9};
  std::vector<double> v;
  for (double s : t) v.push_back(3 * s * s - s + 2);
  const auto d = diagnostics::time_derivative(t, v);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(d[i] == doctest::Approx(6 * t[i] - 1).epsilon(1e-12));
  CHECK_THROWS(diagnostics::time_derivative(std::vector<double>{0, 1}, std::vector<double>{0, 1}));
}

TEST_CASE("stationary record") {
  const auto g = Grid::build(32);
  evolution::StepperConfig cfg;
  cfg.t_end = 0.05;
  const auto res = evolution::evolve(field(g, 0, 0), cfg);
  const auto mon = diagnostics::energy_inequality_monitor(res.record);
  CHECK(mon.vacuous);
  CHECK(mon.a_calibrated == 0.0);
  CHECK(mon.b_calibrated == 0.0);

  const auto s = diagnostics::snapshot_series(res.record, g);
  for (double v : s.eulerian_deviation) CHECK(v == 0.0);
  for (double v : s.stretch_deviation) CHECK(v == 0.0);
  CHECK(s.formula_mismatch <= 1e-14);

  const auto p = diagnostics::prop21_check(res.record, g);
  CHECK(p.transport <= 1e-10);
  CHECK(p.stretch <= 1e-10);

  const auto rep = diagnostics::certify(res.record, g);
  CHECK(rep.certified());
  bool skipped = false;
  for (const auto& c : rep.checks) skipped = skipped || c.skipped;
  CHECK(skipped);
}

TEST_CASE("dissipation ratio at the start of a parabola run") {
  const auto g = Grid::build(32);
  const auto res = run(g, 0.02, 0.0, 0.01);
  CHECK(res.record.D[0] / res.record.E[0] == doctest::Approx(48.0).epsilon(1e-12));
  // even data keeps lambda_+ + lambda_- = 0 up to rounding in the solves,
  // and exactly even g gives an exactly odd integrand
  for (std::size_t i = 0; i < res.record.size(); ++i)
    CHECK(std::abs(res.record.lambda_plus[i] + res.record.lambda_minus[i]) < 1e-8);
  for (const auto& s : res.record.snapshots) {
    std::vector<double> even(s.g.size());
    for (std::size_t i = 0; i < even.size(); ++i) even[i] = 0.5 * (s.g[i] + s.g[even.size() - 1 - i]);
    const auto f = transform::contact_point_formulas(model::PerturbationField(Field(g, even)));
    CHECK(std::abs(f.sum) < 1e-14);
  }
}

TEST_CASE("certification of a small-data run") {
  const auto g = Grid::build(32);
  const auto res = run(g, 0.05, 0.03);
  REQUIRE_FALSE(res.aborted);
  const auto rep = diagnostics::certify(res.record, g);
  CHECK(rep.certified());
  CHECK(rep.gamma_fit > 0.0);
  CHECK(rep.r_squared > 0.99);
  CHECK(std::isfinite(rep.a_calibrated));
  CHECK(rep.b_calibrated > 0.0);
  CHECK(rep.max_mass <= 1e-8);
  CHECK(rep.max_center <= 1e-8);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }

  const auto s = diagnostics::snapshot_series(res.record, g);
  CHECK(s.formula_mismatch <= 1e-10);
  CHECK(s.t.size() == res.record.snapshots.size());

  // a is stable under refinement
  const auto fine = run(Grid::build(48), 0.05, 0.03);
  const auto mon = diagnostics::energy_inequality_monitor(res.record);
  const auto mon_fine = diagnostics::energy_inequality_monitor(fine.record);
  CHECK(std::abs(mon.a_calibrated - mon_fine.a_calibrated) <= 0.2 * std::max(1e-300, mon_fine.a_calibrated));
  CHECK(mon.b_calibrated == doctest::Approx(mon_fine.b_calibrated).epsilon(0.2));
  CHECK(diagnostics::energy_inequality_monitor(res.record, 1.0).worst_margin >= 0.0);
}

TEST_CASE("transport residual follows the step order") {
  const auto g = Grid::build(48);
  std::vector<double> res;
  for (double dt : {2e-3, 1e-3, 5e-4}) {
    evolution::StepperConfig cfg;
    cfg.dt0 = dt;
    cfg.t_end = 0.06;
    cfg.grow_factor = 1.0;
    cfg.balance_tol = 1e9;
    cfg.snapshot_stride = 1;
    const auto r = evolution::evolve(field(g, 0.05, 0.03), cfg);
    const auto p = diagnostics::prop21_check(r.record, g, 0.02);
    CHECK(p.triples > 0);
    CHECK(p.stretch <= 1e-10);
    res.push_back(p.transport);
  }
  CHECK(std::log2(res[0] / res[1]) == doctest::Approx(1.0).epsilon(0.3));
  CHECK(std::log2(res[1] / res[2]) == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("series export") {
  const auto g = Grid::build(32);
  const auto dir = scratch("export");

  evolution::TrajectoryRecord empty;
  diagnostics::export_series(empty, dir / "empty.csv", g->nodes());
  {
    std::ifstream in(dir / "empty.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == diagnostics::kSeriesHeader);
    CHECK_FALSE(std::getline(in, line));
  }

  // ten fixed steps from the fixed point: the initial row plus ten
  evolution::StepperConfig cfg;
  cfg.t_end = 10 * cfg.dt0;
  cfg.grow_factor = 1.0;
  const auto still = evolution::evolve(field(g, 0, 0), cfg);
  diagnostics::export_series(still.record, dir / "still.csv", g->nodes());
  const auto back = diagnostics::read_series(dir / "still.csv");
  CHECK(back.size() == 11);
  for (double e : back.E) CHECK(e == 0.0);

  const auto res = run(g, 0.05, 0.03, 0.2);
  diagnostics::export_series(res.record, dir / "series.csv", g->nodes());
  std::vector<double> nodes;
  const auto rt = diagnostics::read_series(dir / "series.csv", &nodes);
  REQUIRE(rt.size() == res.record.size());
  for (std::size_t i = 0; i < rt.size(); ++i) {
    CHECK(rt.times[i] == res.record.times[i]);
    CHECK(rt.E[i] == res.record.E[i]);
    CHECK(rt.D[i] == res.record.D[i]);
    CHECK(rt.I[9][i] == res.record.I[9][i]);
    CHECK(rt.lambda_plus[i] == res.record.lambda_plus[i]);
    CHECK(rt.center_residual[i] == res.record.center_residual[i]);
  }
  REQUIRE(rt.snapshots.size() == res.record.snapshots.size());
  for (std::size_t k = 0; k < rt.snapshots.size(); ++k) {
    CHECK(rt.snapshots[k].t == res.record.snapshots[k].t);
    CHECK(rt.snapshots[k].g == res.record.snapshots[k].g);
  }
  REQUIRE(nodes.size() == g->size());
  for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(nodes[i] == g->nodes()[i]);

  CHECK_THROWS_AS(diagnostics::read_series(dir / "missing.csv"), IoError);
  // parent is a regular file
  std::ofstream(dir / "plain").put('x');
  CHECK_THROWS_AS(diagnostics::export_series(res.record, dir / "plain" / "s.csv", g->nodes()), IoError);
  std::filesystem::remove_all(dir);
}
