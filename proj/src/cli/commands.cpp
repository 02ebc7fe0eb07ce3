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

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "tfe/cli.hpp"
#include "tfe/diagnostics.hpp"
#include "tfe/inequalities.hpp"

namespace tfe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* const kKeys[] = {"n",       "dt",     "t-end", "scheme",  "balance-tol", "dt-min",
                             "dt-max",  "stride", "forcing", "preset", "profile",     "out",
                             "seed",    "count",  "window", "records"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << text;
    if (!f) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename into " + path.string() + ": " + ec.message());
}

json read_json(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

int simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = Grid::build(cfg.n);
  const auto g0 = initial_data(cfg.profile.empty() ? cfg.preset : "file:" + cfg.profile, grid);
  const auto res = evolution::evolve(g0, cfg.stepper);
  const auto& rec = res.record;
  diagnostics::export_series(rec, cfg.out / "series.csv", grid->nodes());

  double max_balance = 0.0;
  for (double b : res.step_balance) max_balance = std::max(max_balance, b);
  json meta = {{"n", cfg.n},
               {"dt0", cfg.stepper.dt0},
               {"t_end", cfg.stepper.t_end},
               {"scheme", cfg.stepper.scheme == evolution::Scheme::sbdf2 ? "sbdf2" : "be"},
               {"preset", cfg.profile.empty() ? cfg.preset : "file:" + cfg.profile},
               {"accepted_steps", rec.size() - 1},
               {"rejected_steps", res.rejected_steps},
               {"max_balance_relative", max_balance},
               {"aborted", res.aborted},
               {"abort_reason", res.abort_reason}};
  write_text(cfg.out / "run.json", meta.dump(2) + "\n");

  out << "steps " << rec.size() - 1 << " rejected " << res.rejected_steps << " t "
      << short_num(rec.times.back()) << "\n";
  out << "E(0) " << short_num(rec.E.front()) << " E(end) " << short_num(rec.E.back())
      << " max relative balance " << short_num(max_balance) << "\n";
  if (res.aborted) {
    err << "solver aborted: " << res.abort_reason << "\n";
    return kSolverAbort;
  }
  return kOk;
}

int transform_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string preset = cfg.profile.empty() ? cfg.preset : "file:" + cfg.profile;
  if (preset == "stationary") preset = "steady";
  const auto raw = eulerian_preset(preset);
  const auto u = transform::normalize_profile(raw);
  const auto grid = Grid::build(cfg.n);
  const auto data = transform::eulerian_to_lagrangian(u, grid);

  std::string body = "y,Z,g\n";
  const auto y = grid->nodes();
  const auto z = data.map.Z.values();
  const auto g = data.g.values();
  for (std::size_t i = 0; i < y.size(); ++i) body += num(y[i]) + "," + num(z[i]) + "," + num(g[i]) + "\n";
  write_text(cfg.out / "initial.csv", body);

  out << "mass " << num(raw.mass()) << " center_of_mass " << num(raw.center() / raw.mass()) << "\n";
  out << "scale " << num(u.applied_scale()) << " shift " << num(u.applied_shift()) << "\n";
  out << "lambda_minus " << num(data.map.lambda_minus) << " lambda_plus "
      << num(data.map.lambda_plus) << "\n";
  out << "slope_error " << short_num(data.slope_error) << "\n";
  if (data.slope_warning) err << "warning: contact slopes deviate from 1 by more than 1e-6\n";
  return kOk;
}

int verify_inequalities(const RunConfig& cfg, std::ostream& out) {
  const auto summary = inequalities::verify_corpus(cfg.seed, cfg.count, cfg.records);
  json lines = json::array();
  for (const auto& l : summary.lines)
    lines.push_back({{"name", l.name},
                     {"evaluated", l.evaluated},
                     {"violations", l.violations},
                     {"max_ratio", l.max_ratio},
                     {"constant", l.constant},
                     {"constant_kind", l.calibrated ? "calibrated" : "explicit"}});
  json doc = {{"seed", cfg.seed},
              {"count", cfg.count},
              {"calibration_seed", inequalities::kCalibrationSeed},
              {"violations", summary.violations()},
              {"inequalities", lines}};
  write_text(cfg.out / "inequalities.json", doc.dump(2) + "\n");
  if (cfg.records) {
    std::string body;
    for (const auto& r : summary.records)
      body += json{{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"constant", r.constant},
                   {"margin", r.margin}, {"holds", r.holds}}
                  .dump() +
              "\n";
    write_text(cfg.out / "inequality_records.jsonl", body);
  }
  for (const auto& l : summary.lines)
    out << (l.violations ? "FAIL " : "ok   ") << l.name << " max_ratio " << short_num(l.max_ratio)
        << " constant " << short_num(l.constant) << (l.calibrated ? " (calibrated)" : "")
        << " violations " << l.violations << "/" << l.evaluated << "\n";
  out << "total violations " << summary.violations() << "\n";
  return summary.violations() ? kCheckFailed : kOk;
}

int identities(const RunConfig& cfg, std::ostream& out) {
  const auto grid = Grid::build(cfg.n);
  std::string body = "index,r1,r2,scale\n";
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const auto r = model::check_ibp_identities(inequalities::admissible_polynomial(grid, cfg.seed, i));
    const double rel = std::max(r.r1, r.r2) / r.scale;
    worst = std::max(worst, rel);
    if (rel > 1e-8) ++failures;
    body += std::to_string(i) + "," + num(r.r1) + "," + num(r.r2) + "," + num(r.scale) + "\n";
  }
  write_text(cfg.out / "identities.csv", body);
  out << "samples " << cfg.count << " worst relative residual " << short_num(worst)
      << " failures " << failures << "\n";
  return failures ? kCheckFailed : kOk;
}

int fit_decay_cmd(const RunConfig& cfg, std::ostream& out) {
  const auto rec = diagnostics::read_series(cfg.out / "series.csv");
  const auto window = parse_window(cfg.window).value_or(evolution::default_fit_window(rec));
  const auto fit = evolution::fit_decay(rec, window);
  out << "window " << num(window.begin) << ":" << num(window.end) << "\n";
  out << "gamma_fit " << num(fit.gamma) << " r_squared " << num(fit.r_squared) << " samples "
      << fit.samples << "\n";
  return kOk;
}

int certify_cmd(const RunConfig& cfg, std::ostream& out) {
  std::vector<double> nodes;
  const auto rec = diagnostics::read_series(cfg.out / "series.csv", &nodes);
  if (nodes.empty()) throw IoError("certify: no snapshots found next to series.csv");
  const auto grid = Grid::build(nodes.size());
  if (!std::equal(nodes.begin(), nodes.end(), grid->nodes().begin()))
    throw IoError("certify: snapshot nodes do not match the collocation grid");
  double max_balance = 0.0;
  if (fs::exists(cfg.out / "run.json"))
    max_balance = read_json(cfg.out / "run.json").value("max_balance_relative", 0.0);

  const auto rep = diagnostics::certify(rec, grid, parse_window(cfg.window), max_balance);
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"skipped", c.skipped},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  json doc = {{"certified", rep.certified()},
              {"a_calibrated", rep.a_calibrated},
              {"b_calibrated", rep.b_calibrated},
              {"gamma_fit", rep.gamma_fit},
              {"r_squared", rep.r_squared},
              {"window", {rep.window.begin, rep.window.end}},
              {"max_balance_relative", rep.max_balance},
              {"max_mass_residual", rep.max_mass},
              {"max_center_residual", rep.max_center},
              {"transport_residual", rep.prop21.transport},
              {"stretch_residual", rep.prop21.stretch},
              {"checks", checks}};
  write_text(cfg.out / "certification.json", doc.dump(2) + "\n");

  out << "gamma_fit " << num(rep.gamma_fit) << " r_squared " << short_num(rep.r_squared) << "\n";
  out << "a " << short_num(rep.a_calibrated) << " b " << short_num(rep.b_calibrated) << "\n";
  for (const auto& c : rep.checks)
    out << (c.skipped ? "skip " : c.passed ? "ok   " : "FAIL ") << c.name << " "
        << short_num(c.value) << " (threshold " << short_num(c.threshold) << ")"
        << (c.detail.empty() ? "" : " " + c.detail) << "\n";
  out << (rep.certified() ? "certified" : "not certified") << "\n";
  return rep.certified() ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral thin-film simulator and verification harness", "tfe"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> given;
  std::string config;
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "run the time integration and export the series"},
      {"transform", "map an Eulerian profile to Lagrangian initial data"},
      {"verify-inequalities", "run the inequality corpus"},
      {"identities", "check the integration-by-parts identities on a seeded corpus"},
      {"fit-decay", "fit the energy decay rate of an exported series"},
      {"certify", "run the trajectory certification on an exported series"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "key = value config file");
    for (const char* key : kKeys) {
      const std::string flag = std::string("--") + key;
      if (std::string(key) == "records")
        given[std::string(name) + key] =
            sub->add_flag_callback(flag, [&values] { values["records"] = "true"; }, "keep per-sample records");
      else
        given[std::string(name) + key] = sub->add_option(flag, values[key]);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  RunConfig cfg;
  try {
    if (!config.empty()) load_config_file(cfg, config);
    for (const char* key : kKeys) {
      const auto* opt = given[name + key];
      if (opt->count() > 0 && values.count(key)) apply_setting(cfg, key, values[key]);
    }
    if (values.count("records") && values["records"] == "true") cfg.records = true;
    cfg.validate();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (name == "simulate") return simulate(cfg, out, err);
    if (name == "transform") return transform_cmd(cfg, out, err);
    if (name == "verify-inequalities") return verify_inequalities(cfg, out);
    if (name == "identities") return identities(cfg, out);
    if (name == "fit-decay") return fit_decay_cmd(cfg, out);
    if (name == "certify") return certify_cmd(cfg, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DiscretizationError& e) {
    err << "solver error: " << e.what() << "\n";
    return kSolverAbort;
  } catch (const Error& e) {
    // Bad profiles, unreadable files and inputs the model rejects.
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tfe::cli
