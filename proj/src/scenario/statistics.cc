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

#include "ibnptt/scenario/statistics.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "ibnptt/common/error.h"

namespace ibnptt::scenario {

using netsim::Mode;

CdfTable BuildCdf(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "empty CDF input");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  CdfTable cdf;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  cdf.back().cum_fraction = 1.0;
  return cdf;
}

Summary Summarize(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "nothing to summarize");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  auto at = [&](double q) { return sorted[NearestRankIndex(q, sorted.size())]; };
  Summary s;
  s.count = sorted.size();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(sorted.size());
  s.p50 = at(50);
  s.p90 = at(90);
  s.p95 = at(95);
  s.p99 = at(99);
  s.max = sorted.back();
  return s;
}

double Variance(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "no samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : samples) acc += (v - mean) * (v - mean);
  return acc / n;
}

std::vector<double> AtMillis(std::span<const ptt::AtSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(ToMillis(s.at()));
  return out;
}

std::vector<double> M2eMillis(std::span<const ptt::M2eSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(ToMillis(s.m2e()));
  return out;
}

namespace {

constexpr Mode kModes[] = {Mode::kOnNetwork, Mode::kOffNetworkD2D, Mode::kRelay};

template <typename Sample, typename Pred>
std::vector<Sample> Filter(std::span<const Sample> in, Pred pred) {
  std::vector<Sample> out;
  std::copy_if(in.begin(), in.end(), std::back_inserter(out), pred);
  return out;
}

std::optional<Summary> MaybeSummary(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return Summarize(v);
}

}  // namespace

std::vector<BucketSummary> SummarizeBuckets(
    std::span<const ptt::AtSample> at, std::span<const ptt::M2eSample> m2e) {
  std::set<int> teams;
  for (const auto& s : at) teams.insert(s.team);
  for (const auto& s : m2e) teams.insert(s.team);

  std::vector<BucketSummary> out;
  auto add = [&](const std::string& bucket, auto at_pred, auto m2e_pred) {
    out.push_back({"at", bucket,
                   MaybeSummary(AtMillis(Filter<ptt::AtSample>(at, at_pred)))});
    out.push_back({"m2e", bucket,
                   MaybeSummary(M2eMillis(Filter<ptt::M2eSample>(m2e, m2e_pred)))});
  };
  add("all", [](const auto&) { return true; }, [](const auto&) { return true; });
  for (Mode m : kModes) {
    auto pred = [m](const auto& s) { return s.mode == m; };
    add(std::string(netsim::ModeName(m)), pred, pred);
  }
  for (int t : teams) {
    auto pred = [t](const auto& s) { return s.team == t; };
    add("team" + std::to_string(t), pred, pred);
  }
  return out;
}

std::string ComplianceRow::Verdict() const {
  if (!pass) return "no data";
  return *pass ? "pass" : "fail";
}

bool ComplianceReport::AllPass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ComplianceRow& r) { return r.pass.value_or(true); });
}

ComplianceReport CheckCompliance(std::span<const ptt::AtSample> at,
                                 std::span<const ptt::M2eSample> m2e,
                                 const kb::ServiceProfile& profile) {
  ComplianceReport report;
  auto check = [&](const std::string& bucket, const std::string& name,
                   std::optional<double> value, double limit) {
    ComplianceRow row{bucket, name, value, limit, std::nullopt};
    if (value) row.pass = *value <= limit;
    report.rows.push_back(row);
  };
  auto evaluate = [&](const std::string& bucket, const std::vector<double>& a,
                      const std::vector<double>& m, bool with_bound) {
    std::optional<double> at_p99;
    if (!a.empty()) at_p99 = Percentile<double>(a, 99);
    check(bucket, "at_p99_within_target", at_p99, profile.at_target_ms);
    if (with_bound) check(bucket, "at_p99_within_bound", at_p99, kAtBoundMs);
    std::optional<double> m_p90, m_max, above;
    if (!m.empty()) {
      m_p90 = Percentile<double>(m, 90);
      m_max = *std::max_element(m.begin(), m.end());
      auto n = std::count_if(m.begin(), m.end(),
                             [](double v) { return v > kM2eSoftLimitMs; });
      above = static_cast<double>(n) / static_cast<double>(m.size());
    }
    check(bucket, "m2e_p90_within_100ms", m_p90, kM2eP90LimitMs);
    check(bucket, "m2e_max_within_target", m_max, profile.m2e_target_ms);
    check(bucket, "m2e_fraction_above_200ms", above, kM2eSoftAllowance);
  };
  evaluate("all", AtMillis(at), M2eMillis(m2e), true);
  for (Mode mode : kModes) {
    auto pred = [mode](const auto& s) { return s.mode == mode; };
    evaluate(std::string(netsim::ModeName(mode)),
             AtMillis(Filter<ptt::AtSample>(at, pred)),
             M2eMillis(Filter<ptt::M2eSample>(m2e, pred)), false);
  }
  return report;
}

}  // namespace ibnptt::scenario
