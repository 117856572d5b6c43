// Copyright 2026 The ibnptt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run scenario batches, parse single intents, and
// re-check exported results.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ibnptt/cnl_intent/intent.h"
#include "ibnptt/common/error.h"
#include "ibnptt/scenario/config.h"
#include "ibnptt/scenario/report_io.h"
#include "ibnptt/scenario/runner.h"
#include "ibnptt/scenario/statistics.h"

namespace fs = std::filesystem;
using namespace ibnptt;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kFailed = 2;
constexpr char kPrimaryService[] = "ptt-group-call";

std::string Ms(double v) { return scenario::FormatDouble(v); }

int RunCommand(const std::string& scenario_path, std::optional<int> runs,
               std::optional<std::uint64_t> seed,
               const std::vector<int>& densities, const fs::path& out,
               bool strict, bool wallclock, bool sequential) {
  scenario::ScenarioConfig cfg = scenario::LoadConfig(scenario_path);
  if (runs) cfg.runs = *runs;
  if (seed) cfg.base_seed = *seed;
  cfg.strict_cnl = strict;
  cfg.Validate();
  const kb::ServiceProfile& profile = cfg.kb.LookupProfile(kPrimaryService);

  fs::create_directories(out);
  {
    std::ofstream echo(out / "config_echo.ini", std::ios::binary);
    if (!echo) throw Error(ErrorCode::kIoError, "cannot write config echo");
    echo << scenario::EchoConfig(cfg);
  }
  std::ofstream sweep(out / "sweep.csv", std::ios::binary);
  sweep << "users_per_team,runs,at_count,at_p50_ms,at_p90_ms,at_p99_ms,"
           "m2e_count,m2e_p90_ms,m2e_fraction_above_200ms,compliant\n";

  std::size_t rejections = 0;
  for (int users : densities) {
    scenario::ScenarioConfig sized = scenario::WithUsersPerTeam(cfg, users);
    const auto start = std::chrono::steady_clock::now();
    scenario::BatchResult batch = scenario::RunBatch(sized, !sequential);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start).count();
    const fs::path dir = out / ("upt-" + std::to_string(users));
    scenario::ExportReport(batch.aggregate, profile, dir, {wallclock});
    rejections += batch.aggregate.rejections.size();

    auto at = scenario::AtMillis(batch.aggregate.at);
    auto m2e = scenario::M2eMillis(batch.aggregate.m2e);
    auto report = scenario::CheckCompliance(batch.aggregate.at,
                                            batch.aggregate.m2e, profile);
    std::cout << "users/team " << users << ": " << cfg.runs << " runs in "
              << Ms(std::round(secs * 100) / 100) << " s";
    sweep << users << ',' << cfg.runs << ',' << at.size() << ',';
    if (!at.empty()) {
      auto s = scenario::Summarize(at);
      std::cout << ", AT p50/p90/p99 " << Ms(s.p50) << "/" << Ms(s.p90) << "/"
                << Ms(s.p99) << " ms";
      sweep << Ms(s.p50) << ',' << Ms(s.p90) << ',' << Ms(s.p99) << ',';
    } else {
      sweep << ",,,";
    }
    sweep << m2e.size() << ',';
    if (!m2e.empty()) {
      auto s = scenario::Summarize(m2e);
      double above = static_cast<double>(std::count_if(
                         m2e.begin(), m2e.end(),
                         [](double v) { return v > scenario::kM2eSoftLimitMs; })) /
                     static_cast<double>(m2e.size());
      std::cout << ", M2E p90 " << Ms(s.p90) << " ms";
      sweep << Ms(s.p90) << ',' << Ms(above) << ',';
    } else {
      sweep << ",,";
    }
    sweep << (report.AllPass() ? "true" : "false") << "\n";
    std::cout << ", " << (report.AllPass() ? "compliant" : "NOT compliant")
              << " -> " << dir.string() << "\n";
    for (const auto& row : report.rows) {
      if (row.pass == false) {
        std::cout << "  fail " << row.bucket << " " << row.check << ": "
                  << Ms(*row.value) << " > " << Ms(row.limit) << "\n";
      }
    }
  }
  if (rejections > 0) {
    std::cout << rejections << " intent(s) rejected; see rejections.csv\n";
    return kRejected;
  }
  return kOk;
}

int ParseCommand(const std::string& text, const std::string& source,
                 bool strict) {
  nlohmann::ordered_json j;
  try {
    cnl::RawIntent raw{text, source, Micros(0)};
    auto tokens = cnl::Tokenize(raw);
    cnl::Lexicon lex = cnl::Lexicon::Default();
    cnl::IntentAst ast = cnl::ParseIntent(tokens, lex, {strict, source});
    j["kind"] = cnl::IntentKindName(ast.kind);
    j["service"] = ast.service;
    j["endpoints"] = ast.endpoints;
    j["qualifiers"] = ast.qualifiers;
    j["source"] = ast.source;
    j["canonical"] = cnl::RenderIntent(ast, lex);
    std::cout << j.dump(2) << "\n";
    return kOk;
  } catch (const Error& e) {
    j["error"] = ErrorCodeName(e.code());
    j["message"] = e.what();
    std::cout << j.dump(2) << "\n";
    return kRejected;
  }
}

int CheckCommand(const fs::path& out) {
  kb::KnowledgeBase kb = kb::KnowledgeBase::Default();
  if (fs::exists(out / "config_echo.ini")) {
    kb = scenario::LoadConfig(out / "config_echo.ini").kb;
  }
  const kb::ServiceProfile& profile = kb.LookupProfile(kPrimaryService);

  std::vector<fs::path> dirs;
  if (fs::exists(out / "at_samples.csv")) dirs.push_back(out);
  if (fs::is_directory(out)) {
    for (const auto& entry : fs::directory_iterator(out)) {
      if (entry.is_directory() && fs::exists(entry.path() / "at_samples.csv")) {
        dirs.push_back(entry.path());
      }
    }
  }
  if (dirs.empty()) {
    throw Error(ErrorCode::kIoError, "no at_samples.csv under " + out.string());
  }
  std::sort(dirs.begin(), dirs.end());
  bool all = true;
  for (const fs::path& dir : dirs) {
    auto at = scenario::LoadAtCsv(dir / "at_samples.csv");
    auto m2e = scenario::LoadM2eCsv(dir / "m2e_samples.csv");
    auto report = scenario::CheckCompliance(at, m2e, profile);
    std::cout << dir.string() << ": "
              << (report.AllPass() ? "compliant" : "NOT compliant") << "\n";
    for (const auto& row : report.rows) {
      std::cout << "  " << row.bucket << " " << row.check << " = "
                << (row.value ? Ms(*row.value) : "-") << " (limit "
                << Ms(row.limit) << "): " << row.Verdict() << "\n";
    }
    all = all && report.AllPass();
  }
  return all ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intent-driven public-safety push-to-talk network simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario batch over a density sweep");
  std::string scenario_path;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::vector<int> densities = {4, 8, 12};
  std::string out = "out";
  bool strict = false;
  bool wallclock = false;
  bool sequential = false;
  run->add_option("--scenario", scenario_path, "Scenario INI file")->required();
  run->add_option("--runs", runs, "Replications per density");
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--users-per-team", densities, "Comma-separated densities")
      ->delimiter(',');
  run->add_option("--out", out, "Output directory");
  run->add_flag("--strict-cnl", strict, "Reject unrecognized intent tokens");
  run->add_flag("--wallclock", wallclock,
                "Also export measured translation times");
  run->add_flag("--sequential", sequential, "Run replications one at a time");

  auto* parse = app.add_subcommand("parse", "Parse one intent and print its AST");
  std::string intent;
  std::string source = "provider";
  bool parse_strict = false;
  parse->add_option("--intent", intent, "Intent text")->required();
  parse->add_option("--source", source, "Source used when none is written");
  parse->add_flag("--strict", parse_strict, "Reject unrecognized tokens");

  auto* check = app.add_subcommand("check", "Re-evaluate compliance of exported CSVs");
  std::string check_out = "out";
  check->add_option("--out", check_out, "Directory written by 'run'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailed;
  }

  try {
    if (*run) {
      return RunCommand(scenario_path, runs, seed, densities, out, strict,
                        wallclock, sequential);
    }
    if (*parse) return ParseCommand(intent, source, parse_strict);
    if (*check) return CheckCommand(check_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
