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

// Command-line front end: flat key = value configs, initial-data presets and
// the subcommands behind the tfe executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tfe/evolution.hpp"
#include "tfe/transform.hpp"

namespace tfe::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kCheckFailed = 3,
  kSolverAbort = 4,
};

struct RunConfig {
  std::size_t n = 64;
  evolution::StepperConfig stepper;
  std::string preset = "stationary";
  std::string profile;
  std::filesystem::path out = "tfe_out";
  std::uint64_t seed = 7;
  std::size_t count = 1000;
  /// "begin:end"; empty selects the default window.
  std::string window;
  /// Keep one record per inequality per sample in verify-inequalities.
  bool records = false;

  /// Throws ArgumentError on n < 8, zero seed or count, or a bad stepper config.
  void validate() const;
};

/// Applies one key = value setting; keys match the long flag names
/// (n, dt, t-end, scheme, balance-tol, dt-min, dt-max, stride, forcing,
/// preset, profile, out, seed, count, window, records). Throws ArgumentError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a config file: one key = value per line, '#' starts a comment.
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Lagrangian initial data. Presets: stationary, parabolic:c, skew:c,
/// file:<path> (Eulerian two-column profile), joined with '+'.
model::PerturbationField initial_data(const std::string& preset, const GridPtr& grid);

/// Eulerian profiles: file:<path>, shifted-parabola:s, perturbed:eps,delta,
/// steady.
transform::EulerianProfile eulerian_preset(const std::string& preset);

std::optional<evolution::Window> parse_window(const std::string& text);

/// Entry point; returns the process exit status.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfe::cli
