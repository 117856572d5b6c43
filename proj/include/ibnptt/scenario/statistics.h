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

#ifndef IBNPTT_SCENARIO_STATISTICS_H_
#define IBNPTT_SCENARIO_STATISTICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibnptt/common/percentile.h"
#include "ibnptt/knowledge_base/knowledge_base.h"
#include "ibnptt/ptt_service/kpi.h"

namespace ibnptt::scenario {

using ibnptt::Percentile;

struct CdfRow {
  double value = 0.0;
  double cum_fraction = 0.0;
  bool operator==(const CdfRow&) const = default;
};
using CdfTable = std::vector<CdfRow>;

// Empirical distribution: one row per distinct value, fraction of samples
// <= value. Throws Error(kEmptySamples).
CdfTable BuildCdf(std::span<const double> samples);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

// Throws Error(kEmptySamples).
Summary Summarize(std::span<const double> samples);
double Variance(std::span<const double> samples);  // population variance

std::vector<double> AtMillis(std::span<const ptt::AtSample> samples);
std::vector<double> M2eMillis(std::span<const ptt::M2eSample> samples);

// Buckets reported per metric: "all", then each mode, then each team.
struct BucketSummary {
  std::string metric;  // "at" or "m2e"
  std::string bucket;
  std::optional<Summary> summary;  // empty for a bucket without samples
};

std::vector<BucketSummary> SummarizeBuckets(
    std::span<const ptt::AtSample> at, std::span<const ptt::M2eSample> m2e);

inline constexpr double kAtBoundMs = 250.0;
inline constexpr double kM2eP90LimitMs = 100.0;
inline constexpr double kM2eSoftLimitMs = 200.0;
inline constexpr double kM2eSoftAllowance = 0.01;

struct ComplianceRow {
  std::string bucket;
  std::string check;
  std::optional<double> value;  // empty: no data
  double limit = 0.0;
  std::optional<bool> pass;     // empty: no data

  std::string Verdict() const;  // "pass", "fail" or "no data"
};

struct ComplianceReport {
  std::vector<ComplianceRow> rows;
  bool AllPass() const;  // "no data" rows do not fail
};

// Per mode bucket ("all", "on-network", "d2d", "relay"):
//   at_p99 <= at_target, m2e_p90 <= 100 ms, m2e_max <= m2e_target and
//   at most 1% of M2E samples above 200 ms; on "all" also at_p99 <= 250 ms.
ComplianceReport CheckCompliance(std::span<const ptt::AtSample> at,
                                 std::span<const ptt::M2eSample> m2e,
                                 const kb::ServiceProfile& profile);

}  // namespace ibnptt::scenario

#endif  // IBNPTT_SCENARIO_STATISTICS_H_
