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

// Poincare-type and Gagliardo-Nirenberg inequalities on (-1, 1), the
// energy/dissipation estimate suite with corpus-calibrated constants, and
// the decay-rate calculators of the small-energy bootstrap.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfe/errors.hpp"
#include "tfe/evolution.hpp"
#include "tfe/model.hpp"
#include "tfe/spectral.hpp"

namespace tfe::inequalities {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
/// |I| for I = (-1, 1).
inline constexpr double kIntervalLength = 2.0;

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  /// rhs - lhs
  double margin = 0.0;
  bool holds = true;
  /// The constant came from corpus calibration rather than a closed form.
  bool calibrated = false;
  /// lhs / (rhs / constant); 0 when both vanish.
  double ratio = 0.0;
};

/// Fills margin, holds (margin >= -1e-12 (1 + |rhs|)) and ratio.
InequalityReport make_report(std::string name, double lhs, double monomial, double constant,
                             bool calibrated);

// Norms. p = kInf uses the dense interpolated sample plus nodal values.
double lp_norm(const Grid& grid, std::span<const double> values, double p);
double lp_norm(const Field& f, double p);
double sup_norm(const Grid& grid, std::span<const double> values);
double mean(const Field& f);

/// A sign change between dense samples or a node/endpoint value <= tol.
bool has_zero(const Field& f, double tol = 1e-10);

/// delta with delta (1/q + 1 - 1/r) = 1/q; q = inf raises ExponentError.
double gn_delta(double q, double r);
/// theta with theta (1/q + 1 - 1/r) = 1/q - 1/p; p < q raises ExponentError.
double gn_theta(double p, double q, double r);

/// ||f||_q <= |I|^{1/q - 1/p + 1} ||f'||_p for fields with a zero; throws
/// PreconditionError otherwise.
InequalityReport poincare_check(const Field& f, double p, double q);
/// Same constant, applied to f minus its mean. No precondition.
InequalityReport wirtinger_check(const Field& f, double p, double q);
/// ||f'||_q <= |I|^{1/q - 1/p + 1} ||f''||_p for f(+-1) = 0.
InequalityReport wirtinger_derivative_check(const Field& f, double p, double q);

/// ||f||_inf <= C0 (1+q-q/r)^{1/(1+q-q/r)} (1 + 1/|I|) ||f||_{W^{1,r}}^delta ||f||_q^{1-delta}
/// with ||f||_{W^{1,r}} = ||f||_r + ||f'||_r and C0 calibrated.
InequalityReport gn_sup_check(const Field& f, double q, double r);
/// ||f||_inf <= delta^{-delta} ||f'||_r^delta ||f||_q^{1-delta} for fields with a zero.
InequalityReport gn_sup_zero_check(const Field& f, double q, double r);

/// ||f'||_p <= C ||f''||_r^theta ||f'||_q^{1-theta} for f(+-1) = 0. Since f'
/// has mean zero it has a zero, and the constant (delta^{-delta})^{1 - q/p}
/// follows from the zero-point bound plus Holder interpolation.
InequalityReport gn_interp_check(const Field& f, double p, double q, double r);

/// Estimates of E, D and derivatives of g, one report per estimate and exponent.
std::vector<InequalityReport> lemma310_suite(const model::PerturbationField& g);
/// ||g^m / (1 - y^2)||_inf against E^{m/2 - 1/4} D^{1/4}.
InequalityReport lemma311_check(const model::PerturbationField& g, int m);

/// Frozen calibrated constant for an estimate name; nullopt if unknown.
std::optional<double> calibrated_constant(std::string_view name);

struct CalibrationEntry {
  std::string_view name;
  double constant;
};
std::span<const CalibrationEntry> calibration_table();

inline constexpr std::uint64_t kCalibrationSeed = 20240611;
inline constexpr std::size_t kCalibrationCount = 10000;
inline constexpr double kCalibrationSafety = 1.5;

// ---------------------------------------------------------------- corpus

struct CorpusSample {
  /// Vanishes at +-1, 1 + g > 0.
  model::PerturbationField admissible;
  /// Unconstrained smooth field.
  Field general;
  /// Smooth field with an interior or endpoint zero.
  Field with_zero;
};

/// Deterministic in (seed, index) alone, so samples can be produced in any
/// order or in parallel.
CorpusSample corpus_sample(const GridPtr& grid, std::uint64_t seed, std::size_t index);

/// g = (1 - y^2) p(y), deg p uniform in 0..6, coefficients uniform in
/// [-0.1, 0.1]; deterministic in (seed, index).
model::PerturbationField admissible_polynomial(const GridPtr& grid, std::uint64_t seed,
                                               std::size_t index);

/// Grid size used by the calibration and verification corpora.
inline constexpr std::size_t kCorpusNodes = 32;

struct CalibratedValue {
  std::string name;
  double constant = 0.0;
};

/// Max ratio per calibrated estimate over the corpus, times safety.
std::vector<CalibratedValue> calibrate(std::uint64_t seed, std::size_t count,
                                        double safety = kCalibrationSafety);

struct CorpusSummary {
  struct Line {
    std::string name;
    std::size_t evaluated = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;
    double constant = 0.0;
    bool calibrated = false;
  };
  std::vector<Line> lines;
  std::vector<InequalityReport> records;
  std::size_t violations() const;
};

/// Runs every check over count samples; keep_records retains per-sample reports.
CorpusSummary verify_corpus(std::uint64_t seed, std::size_t count, bool keep_records = false);

/// Worker count for corpus loops: TFE_THREADS if set, else hardware concurrency.
unsigned worker_count();

// ---------------------------------------------------------------- decay

struct DecayBudget {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> alpha;
  std::vector<double> beta;
  /// epsilon (one pair) or c0 (two pairs).
  double threshold = 0.0;
  double rate = 0.0;
  bool valid = false;

  /// b (1 - a sum threshold^beta_i) - a sum threshold^(alpha_i - 1)
  double recompute() const;
};

/// nu = b (1 - a eps^beta) - a eps^(alpha-1); valid iff 1 - a eps^beta > 0 and nu > 0.
DecayBudget decay_rate(double a, double b, double alpha, double beta, double epsilon);
DecayBudget decay_rate_two(double a, double b, double alpha1, double alpha2, double beta1,
                           double beta2, double c0);

/// Exponents of the energy inequality closing the nonlinear estimate.
inline constexpr double kAlpha1 = 2.0, kAlpha2 = 10.0, kBeta1 = 1.0 / 3.0, kBeta2 = 2.5;

/// Largest c0 on a log grid over [lo, hi] with a positive rate; 0 if none.
double largest_valid_c0(double a, double b, double alpha1, double alpha2, double beta1,
                        double beta2, double lo = 1e-12, double hi = 1.0,
                        std::size_t points = 1200);

struct GronwallWitness {
  bool certified = false;
  /// Threshold used; just above E(0) to give the largest admissible rate.
  double threshold = 0.0;
  double rate = 0.0;
  double max_energy = 0.0;
  /// max over t of log(E(t)/E(0)) + 0.95 rate t; <= 0 when certified.
  double worst_excess = 0.0;
  std::string detail;
};

/// With the two-pair rate at threshold c0 slightly above E(0): checks that E
/// stays below c0 and E(t) <= E(0) exp(-0.95 rate t) at every recorded time.
/// Never throws for a failed certificate.
GronwallWitness gronwall_witness(const evolution::TrajectoryRecord& record, double a, double b);

}  // namespace tfe::inequalities
