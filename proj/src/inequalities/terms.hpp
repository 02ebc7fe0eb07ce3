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

// Ratio terms shared by the estimate suite and the calibration pass.

#include <functional>
#include <string>
#include <vector>

#include "tfe/inequalities.hpp"

namespace tfe::inequalities::detail {

struct Term {
  std::string name;
  double lhs = 0.0;
  double monomial = 0.0;
};

std::string label(std::string_view base, std::initializer_list<std::pair<const char*, double>> args);

std::vector<Term> lemma310_terms(const model::PerturbationField& g);
Term lemma311_term(const model::PerturbationField& g, int m);
/// lhs = ||f||_inf, monomial = everything in the GN sup bound except C0.
Term gn_sup_term(const Field& f, double q, double r);

inline constexpr const char* kGnSupName = "gn_sup_c0";

/// (q, r) pairs used to calibrate C0 and in the corpus.
inline constexpr std::pair<double, double> kGnPairs[] = {
    {1.0, 1.0}, {1.0, 2.0}, {1.0, kInf}, {2.0, 1.0}, {2.0, 2.0},
    {2.0, kInf}, {4.0, 1.0}, {4.0, 2.0}, {4.0, kInf}};

}  // namespace tfe::inequalities::detail

namespace tfe::inequalities::detail {

/// Calls fn(i) for i in [0, count) on up to worker_count() threads. The first
/// exception thrown by any call is rethrown after all workers join.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tfe::inequalities::detail
