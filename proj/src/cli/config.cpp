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
#include <fstream>

#include "tfe/cli.hpp"

namespace tfe::cli {

namespace {

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(x))
    throw ArgumentError(key + ": expected a number, got '" + v + "'");
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  char* end = nullptr;
  if (v.empty() || v.front() == '-') throw ArgumentError(key + ": expected a non-negative integer");
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (*end != '\0') throw ArgumentError(key + ": expected a non-negative integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ArgumentError(key + ": expected a boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::validate() const {
  if (n < Grid::kMinNodes) throw ArgumentError("n must be at least 8");
  if (seed == 0) throw ArgumentError("seed must be positive");
  if (count == 0) throw ArgumentError("count must be positive");
  stepper.validate();
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto& s = cfg.stepper;
  if (key == "n") cfg.n = to_unsigned(key, value);
  else if (key == "dt") s.dt0 = to_double(key, value);
  else if (key == "t-end") s.t_end = to_double(key, value);
  else if (key == "balance-tol") s.balance_tol = to_double(key, value);
  else if (key == "dt-min") s.dt_min = to_double(key, value);
  else if (key == "dt-max") s.dt_max = to_double(key, value);
  else if (key == "stride") s.snapshot_stride = to_unsigned(key, value);
  else if (key == "scheme") {
    if (value == "be" || value == "backward-euler") s.scheme = evolution::Scheme::backward_euler;
    else if (value == "sbdf2") s.scheme = evolution::Scheme::sbdf2;
    else throw ArgumentError("scheme: expected be or sbdf2");
  } else if (key == "forcing") {
    if (value == "minus") s.forcing = model::Forcing::minus_n;
    else if (value == "plus") s.forcing = model::Forcing::plus_n;
    else throw ArgumentError("forcing: expected minus or plus");
  } else if (key == "preset") cfg.preset = value;
  else if (key == "profile") cfg.profile = value;
  else if (key == "out") cfg.out = value;
  else if (key == "seed") cfg.seed = to_unsigned(key, value);
  else if (key == "count") cfg.count = to_unsigned(key, value);
  else if (key == "window") cfg.window = value;
  else if (key == "records") cfg.records = to_bool(key, value);
  else throw ArgumentError("unknown setting '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace tfe::cli
