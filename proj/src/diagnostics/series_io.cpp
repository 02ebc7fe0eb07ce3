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

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tfe/diagnostics.hpp"

namespace tfe::diagnostics {

namespace fs = std::filesystem;

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::vector<std::vector<double>> read_csv(const fs::path& path, std::string* header) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw IoError(path.string() + ": missing header");
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(p, &end);
      if (end == p) throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number");
      row.push_back(v);
      p = end;
      if (*p == ',') {
        ++p;
        continue;
      }
      if (*p == '\0' || *p == '\r') break;
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": unexpected character");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void export_series(const evolution::TrajectoryRecord& record, const fs::path& path,
                   std::span<const double> nodes) {
  record.validate();
  std::string out = kSeriesHeader;
  out += '\n';
  for (std::size_t i = 0; i < record.size(); ++i) {
    const double cols[] = {record.times[i], record.E[i], record.D[i], record.B[i]};
    bool first = true;
    auto put = [&](double v) {
      if (!first) out += ',';
      first = false;
      append_number(out, v);
    };
    for (double v : cols) put(v);
    for (const auto& s : record.I) put(s[i]);
    put(record.lambda_minus[i]);
    put(record.lambda_plus[i]);
    put(record.sup_g[i]);
    put(record.mass_residual[i]);
    put(record.center_residual[i]);
    out += '\n';
  }
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_atomic(path, out);

  if (record.snapshots.empty()) return;
  std::string index = "index,t\n";
  for (std::size_t k = 0; k < record.snapshots.size(); ++k) {
    const auto& s = record.snapshots[k];
    if (s.g.size() != nodes.size()) throw StructuralError("snapshot and node counts differ");
    std::string body = "y,g\n";
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      append_number(body, nodes[j]);
      body += ',';
      append_number(body, s.g[j]);
      body += '\n';
    }
    write_atomic(dir / ("g_" + std::to_string(k) + ".csv"), body);
    index += std::to_string(k);
    index += ',';
    append_number(index, s.t);
    index += '\n';
  }
  write_atomic(dir / "snapshots.csv", index);
}

evolution::TrajectoryRecord read_series(const fs::path& path, std::vector<double>* nodes) {
  std::string header;
  const auto rows = read_csv(path, &header);
  if (header != kSeriesHeader) throw IoError(path.string() + ": unexpected header");
  evolution::TrajectoryRecord r;
  constexpr std::size_t kCols = 19;
  for (const auto& row : rows) {
    if (row.size() != kCols) throw IoError(path.string() + ": expected 19 columns");
    r.times.push_back(row[0]);
    r.E.push_back(row[1]);
    r.D.push_back(row[2]);
    r.B.push_back(row[3]);
    for (std::size_t k = 0; k < model::kSummands; ++k) r.I[k].push_back(row[4 + k]);
    r.lambda_minus.push_back(row[14]);
    r.lambda_plus.push_back(row[15]);
    r.sup_g.push_back(row[16]);
    r.mass_residual.push_back(row[17]);
    r.center_residual.push_back(row[18]);
  }
  r.validate();

  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path index = dir / "snapshots.csv";
  if (!fs::exists(index)) return r;
  for (const auto& row : read_csv(index, nullptr)) {
    if (row.size() != 2) throw IoError(index.string() + ": expected index,t");
    const auto k = static_cast<std::size_t>(row[0]);
    const auto body = read_csv(dir / ("g_" + std::to_string(k) + ".csv"), nullptr);
    evolution::Snapshot s{row[1], {}};
    std::vector<double> y;
    for (const auto& b : body) {
      if (b.size() != 2) throw IoError("snapshot " + std::to_string(k) + ": expected y,g");
      y.push_back(b[0]);
      s.g.push_back(b[1]);
    }
    if (nodes) {
      if (nodes->empty()) *nodes = y;
      else if (*nodes != y) throw IoError("snapshot " + std::to_string(k) + ": node mismatch");
    }
    r.snapshots.push_back(std::move(s));
  }
  return r;
}

}  // namespace tfe::diagnostics
