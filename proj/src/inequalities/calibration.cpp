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
#include <string>
#include <map>

#include "terms.hpp"

namespace tfe::inequalities {

namespace {

// 1.5 x the largest ratio over corpus_sample(kCalibrationSeed, 0..9999) on
// the kCorpusNodes grid. Regenerate with tfe_calibrate; the calibration test
// recomputes them.
constexpr CalibrationEntry kTable[] = {
    // @calibration-begin
    {"gn_sup_c0", 0.9587587335430604},
    {"sup_by_energy", 1.4234606276783146},
    {"energy_by_dissipation", 0.036007701180162499},
    {"slope(p=2)", 2.1213203435596428},
    {"slope(p=4)", 1.399385264403443},
    {"slope(p=6)", 1.2931256265821789},
    {"slope(p=inf)", 1.3430777000980285},
    {"weighted_curvature", 1.7518434772237961},
    {"curvature(p=2)", 0.53033008588991071},
    {"curvature(p=4)", 0.72872486352147114},
    {"curvature(p=8)", 1.0275186100747948},
    {"weighted_curvature_sup(eps=0.1)", 1.0821580262905697},
    {"weighted_curvature_sup(eps=0.5)", 0.62644898568346163},
    {"curvature_log_weight", 0.57323331343635819},
    {"power_over_weight(m=1)", 0.67153885004901426},
    {"power_over_weight(m=2)", 0.47433699863229545},
    {"power_over_weight(m=3)", 0.42720123582788877},
    // @calibration-end
};

}  // namespace

std::span<const CalibrationEntry> calibration_table() { return kTable; }

std::optional<double> calibrated_constant(std::string_view name) {
  for (const auto& e : kTable)
    if (e.name == name) return e.constant;
  return std::nullopt;
}

std::vector<CalibratedValue> calibrate(std::uint64_t seed, std::size_t count, double safety) {
  const auto grid = Grid::build(kCorpusNodes);
  std::vector<std::vector<detail::Term>> per(count);
  detail::for_each_index(count, [&](std::size_t i) {
    const auto s = corpus_sample(grid, seed, i);
    auto& terms = per[i];
    for (auto [q, r] : detail::kGnPairs) {
      auto t = detail::gn_sup_term(s.general, q, r);
      t.name = detail::kGnSupName;
      terms.push_back(std::move(t));
    }
    for (auto& t : detail::lemma310_terms(s.admissible)) terms.push_back(std::move(t));
    for (int m = 1; m <= 3; ++m) terms.push_back(detail::lemma311_term(s.admissible, m));
  });

  std::vector<CalibratedValue> out;
  std::map<std::string, std::size_t, std::less<>> slot;
  for (const auto& terms : per)
    for (const auto& t : terms) {
      const double ratio = t.lhs == 0.0 ? 0.0 : t.lhs / t.monomial;
      auto [it, fresh] = slot.try_emplace(t.name, out.size());
      if (fresh) out.push_back({t.name, 0.0});
      out[it->second].constant = std::max(out[it->second].constant, ratio);
    }
  for (auto& v : out) v.constant *= safety;
  return out;
}

}  // namespace tfe::inequalities
