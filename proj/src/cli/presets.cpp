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
#include <cstdlib>
#include <sstream>

#include "tfe/cli.hpp"

namespace tfe::cli {

namespace {

double parse_number(const std::string& text, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v))
    throw ArgumentError(context + ": expected a number, got '" + text + "'");
  return v;
}

std::vector<double> parse_args(const std::string& text, std::size_t expected,
                               const std::string& context) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, context));
  if (out.size() != expected)
    throw ArgumentError(context + ": expected " + std::to_string(expected) + " argument(s)");
  return out;
}

std::pair<std::string, std::string> split_term(const std::string& term) {
  const auto colon = term.find(':');
  if (colon == std::string::npos) return {term, ""};
  return {term.substr(0, colon), term.substr(colon + 1)};
}

}  // namespace

transform::EulerianProfile eulerian_preset(const std::string& preset) {
  const auto [name, arg] = split_term(preset);
  if (name == "file") {
    if (arg.empty()) throw ArgumentError("file preset needs a path");
    return transform::read_profile(arg);
  }
  if (name == "steady") {
    return transform::EulerianProfile::analytic(
        -1.0, 1.0, [](double x) { return 0.5 * (1.0 - x * x); }, [](double x) { return -x; });
  }
  if (name == "shifted-parabola") {
    const double s = parse_args(arg, 1, preset)[0];
    return transform::EulerianProfile::analytic(
        s - 1.0, s + 1.0, [s](double x) { return 0.5 * (1.0 - (x - s) * (x - s)); },
        [s](double x) { return -(x - s); });
  }
  if (name == "scaled-parabola") {
    const double k = parse_args(arg, 1, preset)[0];
    if (!(k > 0.0)) throw ArgumentError(preset + ": scale must be positive");
    return transform::EulerianProfile::analytic(
        -k, k, [k](double x) { return 0.5 * k * (1.0 - (x / k) * (x / k)); },
        [k](double x) { return -x / k; });
  }
  if (name == "perturbed") {
    const auto p = parse_args(arg, 2, preset);
    const double e = p[0], d = p[1];
    // 1/2 (1 - x^2) (1 + e (1 - x^2) + d x (1 - x^2)); unit slopes at +-1.
    auto u = [e, d](double x) {
      const double w = 1.0 - x * x;
      return 0.5 * w * (1.0 + e * w + d * x * w);
    };
    auto du = [e, d](double x) {
      const double w = 1.0 - x * x;
      const double q = 1.0 + e * w + d * x * w;
      const double dq = -2.0 * e * x + d * (1.0 - 3.0 * x * x);
      return -x * q + 0.5 * w * dq;
    };
    return transform::EulerianProfile::analytic(-1.0, 1.0, u, du);
  }
  throw ArgumentError("unknown Eulerian preset '" + preset + "'");
}

model::PerturbationField initial_data(const std::string& preset, const GridPtr& grid) {
  if (preset.empty()) throw ArgumentError("empty preset");
  std::vector<double> g(grid->size(), 0.0);
  const auto y = grid->nodes();
  std::stringstream ss(preset);
  std::string term;
  while (std::getline(ss, term, '+')) {
    const auto [name, arg] = split_term(term);
    if (name == "stationary") {
      if (!arg.empty()) throw ArgumentError("stationary takes no argument");
    } else if (name == "parabolic") {
      const double c = parse_args(arg, 1, term)[0];
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += c * (1.0 - y[i] * y[i]);
    } else if (name == "skew") {
      const double c = parse_args(arg, 1, term)[0];
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += c * y[i] * (1.0 - y[i] * y[i]);
    } else if (name == "file") {
      const auto profile = transform::normalize_profile(eulerian_preset(term));
      const auto data = transform::eulerian_to_lagrangian(profile, grid);
      const auto v = data.g.values();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += v[i];
    } else {
      throw ArgumentError("unknown preset '" + term + "'");
    }
  }
  g.front() = 0.0;
  g.back() = 0.0;
  try {
    return model::PerturbationField(Field(grid, std::move(g)));
  } catch (const PositivityError&) {
    throw ArgumentError("preset '" + preset + "' violates 1 + g > 0");
  }
}

std::optional<evolution::Window> parse_window(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("window must be begin:end");
  evolution::Window w{parse_number(text.substr(0, colon), "window"),
                      parse_number(text.substr(colon + 1), "window")};
  if (!(w.end > w.begin)) throw ArgumentError("window end must exceed begin");
  return w;
}

}  // namespace tfe::cli
