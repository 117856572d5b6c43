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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ibnptt/common/error.h"
#include "ibnptt/scenario/config.h"
#include "ibnptt/scenario/report_io.h"
#include "ibnptt/scenario/runner.h"
#include "ibnptt/scenario/statistics.h"

namespace ibnptt::scenario {
namespace {

namespace fs = std::filesystem;
using netsim::Mode;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoError;
}

fs::path TempDir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ibnptt_scenario_" + name);
  fs::remove_all(p);
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Config, LoadsShippedScenario) {
  auto cfg = LoadConfig(IBNPTT_DEFAULT_SCENARIO);
  ASSERT_EQ(cfg.teams.size(), 3u);
  EXPECT_EQ(cfg.timeline.b, 20s);
  EXPECT_EQ(cfg.timeline.c, 60s);
  EXPECT_EQ(cfg.timeline.e, 180s);
  EXPECT_TRUE(cfg.team(3).relay_fallback);
  EXPECT_EQ(cfg.intents.size(), 4u);
  EXPECT_EQ(EchoConfig(cfg), EchoConfig(DefaultScenario()));
}

TEST(Config, RejectsBadTimeline) {
  EXPECT_EQ(CodeOf([] { ParseConfig("[timeline]\nA = 0\nB = 70000\nC = 60000\nE = 180000\n"); }),
            ErrorCode::kInvariantViolation);
}

TEST(Config, MissingSectionFlaggedAsDefaulted) {
  auto cfg = ParseConfig("[run]\nruns = 3\n");
  EXPECT_EQ(cfg.runs, 3);
  EXPECT_TRUE(cfg.defaulted.count("radio"));
  EXPECT_FALSE(cfg.defaulted.count("run"));
  EXPECT_NE(EchoConfig(cfg).find("[radio]\n; defaulted"), std::string::npos);
}

TEST(Config, ParseErrorsNameTheKey) {
  try {
    ParseConfig("[radio]\nexponent = fast\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("exponent"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([] { ParseConfig("[bogus]\nx = 1\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseConfig("[radio]\ncolour = red\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { LoadConfig("/nonexistent/x.ini"); }), ErrorCode::kIoError);
}

TEST(Config, EchoRoundTrips) {
  auto cfg = WithUsersPerTeam(DefaultScenario(), 5);
  cfg.runs = 2;
  auto again = ParseConfig(EchoConfig(cfg));
  EXPECT_EQ(again.team(1).users, 5);
  EXPECT_EQ(again.runs, 2);
}

TEST(Statistics, PercentileAndCdfExamples) {
  std::vector<double> v = {10, 20, 30, 40};
  EXPECT_EQ(Percentile(std::span<const double>(v), 50.0), 20.0);
  std::vector<double> w = {5, 5, 10};
  auto cdf = BuildCdf(w);
  ASSERT_EQ(cdf.size(), 2u);
  EXPECT_EQ(cdf[0].value, 5.0);
  EXPECT_NEAR(cdf[0].cum_fraction, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(cdf[1], (CdfRow{10.0, 1.0}));
  EXPECT_THROW(BuildCdf({}), Error);
  EXPECT_DOUBLE_EQ(Variance(v), 125.0);
  auto s = Summarize(v);
  EXPECT_EQ(s.count, 4u);
  EXPECT_EQ(s.max, 40.0);
  EXPECT_DOUBLE_EQ(s.mean, 25.0);
}

ptt::AtSample At(double ms, Mode mode = Mode::kOnNetwork, int team = 1) {
  ptt::AtSample s;
  s.team = team;
  s.mode = mode;
  s.request_t = 1s;
  s.grant_t = 1s + Micros(static_cast<std::int64_t>(ms * 1000));
  return s;
}

TEST(Statistics, ComplianceExamples) {
  auto profile = kb::KnowledgeBase::Default().LookupProfile("ptt-group-call");
  std::vector<ptt::AtSample> at = {At(500)};
  auto report = CheckCompliance(at, {}, profile);
  EXPECT_FALSE(report.AllPass());
  bool saw_no_data = false;
  for (const auto& row : report.rows) {
    if (row.bucket == "all" && row.check == "at_p99_within_target") {
      EXPECT_EQ(row.pass, false);
      EXPECT_EQ(row.value, 500.0);
      EXPECT_EQ(row.limit, 300.0);
    }
    if (row.bucket == "relay") {
      EXPECT_FALSE(row.pass);
      EXPECT_EQ(row.Verdict(), "no data");
      saw_no_data = true;
    }
  }
  EXPECT_TRUE(saw_no_data);
  at = {At(120), At(180)};
  EXPECT_TRUE(CheckCompliance(at, {}, profile).AllPass());
}

TEST(Statistics, BucketsCoverModesAndTeams) {
  std::vector<ptt::AtSample> at = {At(100, Mode::kOnNetwork, 1), At(130, Mode::kRelay, 3)};
  auto b = SummarizeBuckets(at, {});
  ASSERT_FALSE(b.empty());
  EXPECT_EQ(b[0].bucket, "all");
  EXPECT_EQ(b[0].summary->count, 2u);
  auto relay = std::find_if(b.begin(), b.end(), [](const BucketSummary& x) {
    return x.metric == "at" && x.bucket == "relay";
  });
  ASSERT_NE(relay, b.end());
  EXPECT_EQ(relay->summary->p50, 130.0);
}

TEST(ReportIo, CsvRoundTrip) {
  auto r = RunScenario(WithUsersPerTeam(DefaultScenario(), 4), 3);
  ASSERT_FALSE(r.at.empty());
  std::stringstream a, m;
  WriteAtCsv(a, r.at);
  WriteM2eCsv(m, r.m2e);
  auto at = ReadAtCsv(a);
  auto m2e = ReadM2eCsv(m);
  ASSERT_EQ(at.size(), r.at.size());
  ASSERT_EQ(m2e.size(), r.m2e.size());
  for (std::size_t i = 0; i < at.size(); ++i) {
    EXPECT_EQ(at[i].at(), r.at[i].at());
    EXPECT_EQ(at[i].ue, r.at[i].ue);
    EXPECT_EQ(at[i].mode, r.at[i].mode);
  }
  std::stringstream bad("seed,team\n1,2\n");
  EXPECT_EQ(CodeOf([&] { ReadAtCsv(bad); }), ErrorCode::kParseError);
}

TEST(ReportIo, EmptyRunExportsHeaders) {
  RunReport empty;
  auto dir = TempDir("empty");
  ExportReport(empty, kb::KnowledgeBase::Default().LookupProfile("ptt-group-call"), dir);
  EXPECT_EQ(Slurp(dir / "cdf_at.csv"), "value,cum_fraction\n");
  EXPECT_TRUE(LoadAtCsv(dir / "at_samples.csv").empty());
  EXPECT_FALSE(fs::exists(dir / "translation_wallclock.csv"));
  fs::remove_all(dir);
}

TEST(Runner, TopologyLayout) {
  auto topo = BuildTopology(DefaultScenario());
  EXPECT_NO_THROW(topo.Validate());
  EXPECT_EQ(topo.TeamUes(1).size(), 12u);
  EXPECT_EQ(topo.node(*topo.FindByName("ue-13")).team, 2);
  EXPECT_TRUE(topo.node(*topo.FindByName("ue-25")).is_anchor);
}

TEST(Runner, DeterministicPerSeed) {
  auto cfg = WithUsersPerTeam(DefaultScenario(), 4);
  auto a = RunScenario(cfg, 11);
  auto b = RunScenario(cfg, 11);
  ASSERT_EQ(a.at.size(), b.at.size());
  for (std::size_t i = 0; i < a.at.size(); ++i) {
    EXPECT_EQ(a.at[i].grant_t, b.at[i].grant_t);
  }
  EXPECT_EQ(a.m2e.size(), b.m2e.size());
  auto c = RunScenario(cfg, 12);
  bool differs = c.at.size() != a.at.size();
  for (std::size_t i = 0; !differs && i < a.at.size(); ++i) {
    differs = a.at[i].grant_t != c.at[i].grant_t;
  }
  EXPECT_TRUE(differs);
}

TEST(Runner, TimelineDrivesModes) {
  auto r = RunScenario(DefaultScenario(), 1);
  EXPECT_TRUE(r.rejections.empty());
  int relay = 0;
  for (const auto& [ue, mode] : r.final_modes) {
    if (r.ue_team.at(ue) == 2) {
      EXPECT_EQ(mode, Mode::kOffNetworkD2D) << ue;
    }
    if (r.ue_team.at(ue) == 1) {
      EXPECT_EQ(mode, Mode::kOnNetwork) << ue;
    }
    if (r.ue_team.at(ue) == 3 && mode == Mode::kRelay) ++relay;
  }
  EXPECT_GT(relay, 0);
  for (const auto& s : r.switches) {
    if (s.to == Mode::kRelay) {
      EXPECT_EQ(s.team, 3);
      EXPECT_LT(s.t, 180s);
      EXPECT_LT(s.rx_dbm, -95.0);
    }
  }
  for (const auto& s : r.at) {
    if (s.team == 2 && s.mode == Mode::kOffNetworkD2D) {
      EXPECT_GE(s.request_t, 60s);
    }
    EXPECT_LE(s.grant_t, 180s);
  }
}

TEST(Runner, BatchMatchesSingleRuns) {
  auto cfg = WithUsersPerTeam(DefaultScenario(), 4);
  cfg.runs = 1;
  cfg.base_seed = 5;
  auto one = RunBatch(cfg);
  auto single = RunScenario(cfg, 5);
  ASSERT_EQ(one.aggregate.at.size(), single.at.size());
  EXPECT_EQ(one.aggregate.m2e.size(), single.m2e.size());

  cfg.runs = 4;
  auto par = RunBatch(cfg, true);
  auto seq = RunBatch(cfg, false);
  ASSERT_EQ(par.runs.size(), 4u);
  std::size_t total = 0;
  for (const auto& r : par.runs) total += r.at.size();
  EXPECT_EQ(par.aggregate.at.size(), total);
  ASSERT_EQ(par.aggregate.at.size(), seq.aggregate.at.size());
  for (std::size_t i = 0; i < par.aggregate.at.size(); ++i) {
    EXPECT_EQ(par.aggregate.at[i].grant_t, seq.aggregate.at[i].grant_t);
    EXPECT_EQ(par.aggregate.at[i].seed, seq.aggregate.at[i].seed);
  }
}

TEST(Runner, RejectedIntentIsRecordedNotThrown) {
  auto cfg = WithUsersPerTeam(DefaultScenario(), 4);
  cfg.intents.push_back({"bad", "B", "team1 connect ptt-group-call to ue-999"});
  auto r = RunScenario(cfg, 1);
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].reason, "UnresolvableEndpoint");
  EXPECT_EQ(r.rejections[0].t, 20s);
}

}  // namespace
}  // namespace ibnptt::scenario
