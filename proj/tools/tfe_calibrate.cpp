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

// Regenerates the calibrated constants of the estimate suite and prints
// them in the form used by src/inequalities/calibration.cpp. With --write,
// replaces the table between the calibration markers in that file.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tfe/inequalities.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Recompute calibrated inequality constants", "tfe_calibrate"};
  std::uint64_t seed = tfe::inequalities::kCalibrationSeed;
  std::size_t count = tfe::inequalities::kCalibrationCount;
  std::string write;
  app.add_option("--seed", seed);
  app.add_option("--count", count);
  app.add_option("--write", write, "calibration.cpp to update in place");
  CLI11_PARSE(app, argc, argv);

  const auto table = tfe::inequalities::calibrate(seed, count);
  std::string body;
  for (const auto& e : table) {
    char line[160];
    std::snprintf(line, sizeof line, "    {\"%s\", %.17g},\n", e.name.c_str(), e.constant);
    body += line;
  }
  std::cout << body;
  if (write.empty()) return 0;

  std::ifstream in(write);
  if (!in) {
    std::cerr << "cannot open " << write << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  const std::string begin = "// @calibration-begin\n", end = "    // @calibration-end";
  const auto b = text.find(begin), e = text.find(end);
  if (b == std::string::npos || e == std::string::npos || e < b) {
    std::cerr << "calibration markers not found in " << write << "\n";
    return 2;
  }
  text = text.substr(0, b + begin.size()) + body + text.substr(e);
  std::ofstream(write, std::ios::trunc) << text;
  return 0;
}
