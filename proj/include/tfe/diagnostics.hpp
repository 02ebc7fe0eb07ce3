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

#pragma once

// Trajectory-level certification over a completed TrajectoryRecord: the
// nonlinear energy inequality, decay of the Eulerian and contact-point
// deviations, conservation, the Lagrangian identities, and CSV export.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfe/evolution.hpp"

namespace tfe::diagnostics {

/// Three-point derivative on a possibly nonuniform grid; one-sided
/// second-order formulas at the ends. Needs at least three samples.
std::vector<double> time_derivative(std::span<const double> t, std::span<const double> v);

struct EnergyMonitor {
  /// Smallest a >= 0 with dE/dt + D <= a (E^2 + E^10 + (E^{1/3} + E^{5/2}) D)
  /// at every interior recorded time with E > 0.
  double a_calibrated = 0.0;
  /// min D / E over samples with E > 0; 0 for a stationary record.
  double b_calibrated = 0.0;
  /// min over samples of a (...) - (dE/dt + D), evaluated with a_check when
  /// given, else with a_calibrated.
  double worst_margin = 0.0;
  std::size_t evaluated = 0;
  /// No sample had E > 0.
  bool vacuous = true;
};

EnergyMonitor energy_inequality_monitor(const evolution::TrajectoryRecord& record,
                                        std::optional<double> a_check = std::nullopt);

struct Check {
  std::string name;
  bool passed = true;
  /// Converged below the rounding floor; not counted against certification.
  bool skipped = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Series built from snapshots: 1/2 ||(1 - y^2) g||_inf and ||g / (1 + g)||_inf.
struct SnapshotSeries {
  std::vector<double> t, eulerian_deviation, stretch_deviation;
  /// max of |width - (lambda_+ - lambda_-)| and |sum - (lambda_+ + lambda_-)|
  /// between the integral formulas and the reconstructed map.
  double formula_mismatch = 0.0;
};
SnapshotSeries snapshot_series(const evolution::TrajectoryRecord& record, const GridPtr& grid);

/// Decay-rate checks (each fitted rate >= 0.9 gamma_fit / 2) plus the
/// contact-point formula cross-check at 1e-10.
std::vector<Check> corollary_checks(const evolution::TrajectoryRecord& record,
                                    const GridPtr& grid, double gamma_fit,
                                    evolution::Window window);

struct Prop21Residuals {
  /// max over snapshot triples and interior nodes of |dZ/dt - u_xxx(Z)|, the
  /// time derivative by three-point differences at fixed y.
  double transport = 0.0;
  /// max over snapshots and interior nodes of |Z_y (1 + g) - 1|.
  double stretch = 0.0;
  std::size_t triples = 0;
};
/// Triples starting before t_min are left out of the transport residual (the
/// start of a run from incompatible data carries a corner layer).
Prop21Residuals prop21_check(const evolution::TrajectoryRecord& record, const GridPtr& grid,
                             double t_min = 0.0);

struct CertificationReport {
  double a_calibrated = 0.0;
  double b_calibrated = 0.0;
  double gamma_fit = 0.0;
  double r_squared = 0.0;
  evolution::Window window;
  std::vector<Check> checks;
  double max_balance = 0.0;
  double max_mass = 0.0;
  double max_center = 0.0;
  Prop21Residuals prop21;

  bool certified() const;
};

/// Runs every trajectory check. The grid must be the one the snapshots live
/// on; max_balance is carried through from the solver when known.
CertificationReport certify(const evolution::TrajectoryRecord& record, const GridPtr& grid,
                            std::optional<evolution::Window> window = std::nullopt,
                            double max_balance = 0.0);

/// Writes the time series CSV at `path` and snapshots as g_<index>.csv plus
/// snapshots.csv (index,t) in the same directory. Files are written to a
/// temporary name and renamed into place.
void export_series(const evolution::TrajectoryRecord& record, const std::filesystem::path& path,
                   std::span<const double> nodes);

/// Inverse of export_series; snapshots are read when snapshots.csv exists.
/// Returns the nodes of the snapshot files in `nodes` when non-null.
evolution::TrajectoryRecord read_series(const std::filesystem::path& path,
                                        std::vector<double>* nodes = nullptr);

inline constexpr const char* kSeriesHeader =
    "t,E,D,B,I1,I2,I3,I4,I5,I6,I7,I8,I9,I10,lambda_minus,lambda_plus,sup_g,mass_residual,"
    "center_residual";

}  // namespace tfe::diagnostics
