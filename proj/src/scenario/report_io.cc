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

#include "ibnptt/scenario/report_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ibnptt/common/error.h"

namespace ibnptt::scenario {

namespace fs = std::filesystem;

std::string FormatDouble(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

namespace {

std::string Fixed6(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, p);
}

std::string Opt(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string Ue(int n) { return "ue-" + std::to_string(n); }

std::ofstream Open(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

std::ifstream OpenIn(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return in;
}

std::vector<std::string> SplitRow(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

long long ToInt(const std::string& s, int row) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError,
                "row " + std::to_string(row) + ": bad integer '" + s + "'");
  }
  return v;
}

int ToUe(const std::string& s, int row) {
  if (s.rfind("ue-", 0) != 0) {
    throw Error(ErrorCode::kParseError,
                "row " + std::to_string(row) + ": bad UE '" + s + "'");
  }
  return static_cast<int>(ToInt(s.substr(3), row));
}

template <typename Row>
std::vector<Row> ReadRows(std::istream& in, const std::string& header,
                          std::size_t columns,
                          Row (*parse)(const std::vector<std::string>&, int)) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorCode::kParseError, "expected header '" + header + "'");
  }
  std::vector<Row> rows;
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto cells = SplitRow(line);
    if (cells.size() != columns) {
      throw Error(ErrorCode::kParseError,
                  "row " + std::to_string(n) + ": expected " +
                      std::to_string(columns) + " columns");
    }
    rows.push_back(parse(cells, n));
  }
  return rows;
}

constexpr char kAtHeader[] =
    "seed,team,ue,mode,users_per_team,request_t_ms,grant_t_ms,at_ms";
constexpr char kM2eHeader[] =
    "seed,team,talker,listener,mode,users_per_team,spoken_t_ms,heard_t_ms,m2e_ms";

ptt::AtSample ParseAt(const std::vector<std::string>& c, int row) {
  ptt::AtSample s;
  s.seed = static_cast<std::uint64_t>(ToInt(c[0], row));
  s.team = static_cast<int>(ToInt(c[1], row));
  s.ue = ToUe(c[2], row);
  s.mode = netsim::ParseMode(c[3]);
  s.users_per_team = static_cast<int>(ToInt(c[4], row));
  s.request_t = ParseMillis(c[5]);
  s.grant_t = ParseMillis(c[6]);
  if (s.at() != ParseMillis(c[7])) {
    throw Error(ErrorCode::kParseError,
                "row " + std::to_string(row) + ": at_ms disagrees with times");
  }
  return s;
}

ptt::M2eSample ParseM2e(const std::vector<std::string>& c, int row) {
  ptt::M2eSample s;
  s.seed = static_cast<std::uint64_t>(ToInt(c[0], row));
  s.team = static_cast<int>(ToInt(c[1], row));
  s.talker = ToUe(c[2], row);
  s.listener = ToUe(c[3], row);
  s.mode = netsim::ParseMode(c[4]);
  s.users_per_team = static_cast<int>(ToInt(c[5], row));
  s.spoken_t = ParseMillis(c[6]);
  s.heard_t = ParseMillis(c[7]);
  if (s.m2e() != ParseMillis(c[8])) {
    throw Error(ErrorCode::kParseError,
                "row " + std::to_string(row) + ": m2e_ms disagrees with times");
  }
  return s;
}

}  // namespace

void WriteAtCsv(std::ostream& out, std::span<const ptt::AtSample> samples) {
  out << kAtHeader << "\n";
  for (const auto& s : samples) {
    out << s.seed << ',' << s.team << ',' << Ue(s.ue) << ','
        << netsim::ModeName(s.mode) << ',' << s.users_per_team << ','
        << FormatMillis(s.request_t) << ',' << FormatMillis(s.grant_t) << ','
        << FormatMillis(s.at()) << "\n";
  }
}

void WriteM2eCsv(std::ostream& out, std::span<const ptt::M2eSample> samples) {
  out << kM2eHeader << "\n";
  for (const auto& s : samples) {
    out << s.seed << ',' << s.team << ',' << Ue(s.talker) << ','
        << Ue(s.listener) << ',' << netsim::ModeName(s.mode) << ','
        << s.users_per_team << ',' << FormatMillis(s.spoken_t) << ','
        << FormatMillis(s.heard_t) << ',' << FormatMillis(s.m2e()) << "\n";
  }
}

void WriteCdfCsv(std::ostream& out, const CdfTable& cdf) {
  out << "value,cum_fraction\n";
  for (const CdfRow& r : cdf) {
    out << FormatDouble(r.value) << ',' << Fixed6(r.cum_fraction) << "\n";
  }
}

std::vector<ptt::AtSample> ReadAtCsv(std::istream& in) {
  return ReadRows<ptt::AtSample>(in, kAtHeader, 8, &ParseAt);
}

std::vector<ptt::M2eSample> ReadM2eCsv(std::istream& in) {
  return ReadRows<ptt::M2eSample>(in, kM2eHeader, 9, &ParseM2e);
}

std::vector<ptt::AtSample> LoadAtCsv(const fs::path& path) {
  auto in = OpenIn(path);
  return ReadAtCsv(in);
}

std::vector<ptt::M2eSample> LoadM2eCsv(const fs::path& path) {
  auto in = OpenIn(path);
  return ReadM2eCsv(in);
}

void ExportCdf(const RunReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  auto at = AtMillis(report.at);
  auto m2e = M2eMillis(report.m2e);
  auto out_at = Open(dir / "cdf_at.csv");
  WriteCdfCsv(out_at, at.empty() ? CdfTable{} : BuildCdf(at));
  auto out_m2e = Open(dir / "cdf_m2e.csv");
  WriteCdfCsv(out_m2e, m2e.empty() ? CdfTable{} : BuildCdf(m2e));
}

void ExportReport(const RunReport& report, const kb::ServiceProfile& profile,
                  const fs::path& dir, const ExportOptions& options) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string());

  {
    auto out = Open(dir / "at_samples.csv");
    WriteAtCsv(out, report.at);
  }
  {
    auto out = Open(dir / "m2e_samples.csv");
    WriteM2eCsv(out, report.m2e);
  }
  {
    auto out = Open(dir / "translation_timing.csv");
    out << "handle,issued_t_ms,outcome,intent\n";
    for (const auto& t : report.timings) {
      out << t.handle << ',' << FormatMillis(t.issued_at) << ',' << t.outcome
          << ',' << Quote(t.intent) << "\n";
    }
  }
  if (options.wallclock) {
    auto out = Open(dir / "translation_wallclock.csv");
    out << "handle,issued_t_ms,wall_clock_us,intent\n";
    for (const auto& t : report.timings) {
      out << t.handle << ',' << FormatMillis(t.issued_at) << ','
          << t.wall_clock_us << ',' << Quote(t.intent) << "\n";
    }
  }
  {
    auto out = Open(dir / "rejections.csv");
    out << "t_ms,source,reason,intent,detail\n";
    for (const auto& r : report.rejections) {
      out << FormatMillis(r.t) << ',' << Quote(r.source) << ',' << r.reason
          << ',' << Quote(r.intent) << ',' << Quote(r.detail) << "\n";
    }
  }
  {
    auto out = Open(dir / "mode_switches.csv");
    out << "seed,t_ms,team,ue,from,to,rx_dbm\n";
    for (const auto& s : report.switches) {
      out << s.seed << ',' << FormatMillis(s.t) << ',' << s.team << ','
          << Ue(s.ue) << ',' << netsim::ModeName(s.from) << ','
          << netsim::ModeName(s.to) << ',' << FormatDouble(s.rx_dbm) << "\n";
    }
  }
  {
    auto out = Open(dir / "assurance.csv");
    out << "seed,t_ms,handle,group,action,status,at_p95_ms,m2e_p95_ms\n";
    for (const auto& a : report.assurance) {
      out << a.seed << ',' << FormatMillis(a.t) << ',' << a.handle << ','
          << a.group << ',' << a.action << ',' << a.status << ','
          << Opt(a.at_p95_ms) << ',' << Opt(a.m2e_p95_ms) << "\n";
    }
  }
  {
    auto out = Open(dir / "summary.csv");
    out << "metric,bucket,count,mean,p50,p90,p95,p99,max\n";
    for (const auto& b : SummarizeBuckets(report.at, report.m2e)) {
      out << b.metric << ',' << b.bucket << ',';
      if (!b.summary) {
        out << "0,no data,,,,,\n";
        continue;
      }
      const Summary& s = *b.summary;
      out << s.count << ',' << FormatDouble(s.mean) << ',' << FormatDouble(s.p50)
          << ',' << FormatDouble(s.p90) << ',' << FormatDouble(s.p95) << ','
          << FormatDouble(s.p99) << ',' << FormatDouble(s.max) << "\n";
    }
  }
  {
    auto out = Open(dir / "compliance.csv");
    out << "bucket,check,value,limit,verdict\n";
    for (const auto& r : CheckCompliance(report.at, report.m2e, profile).rows) {
      out << r.bucket << ',' << r.check << ',' << Opt(r.value) << ','
          << FormatDouble(r.limit) << ',' << r.Verdict() << "\n";
    }
  }
  ExportCdf(report, dir);
}

}  // namespace ibnptt::scenario
