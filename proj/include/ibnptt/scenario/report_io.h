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

#ifndef IBNPTT_SCENARIO_REPORT_IO_H_
#define IBNPTT_SCENARIO_REPORT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ibnptt/knowledge_base/knowledge_base.h"
#include "ibnptt/ptt_service/kpi.h"
#include "ibnptt/scenario/runner.h"
#include "ibnptt/scenario/statistics.h"

namespace ibnptt::scenario {

// Shortest round-trip decimal, independent of the global locale.
std::string FormatDouble(double v);

void WriteAtCsv(std::ostream& out, std::span<const ptt::AtSample> samples);
void WriteM2eCsv(std::ostream& out, std::span<const ptt::M2eSample> samples);
void WriteCdfCsv(std::ostream& out, const CdfTable& cdf);
// Throw Error(kParseError) on malformed rows.
std::vector<ptt::AtSample> ReadAtCsv(std::istream& in);
std::vector<ptt::M2eSample> ReadM2eCsv(std::istream& in);

struct ExportOptions {
  // Also write translation_wallclock.csv (measured, not reproducible).
  bool wallclock = false;
};

// Writes at_samples, m2e_samples, translation_timing, rejections,
// mode_switches, assurance, summary and compliance CSVs plus the CDFs into
// `dir`, creating it. Throws Error(kIoError).
void ExportReport(const RunReport& report, const kb::ServiceProfile& profile,
                  const std::filesystem::path& dir,
                  const ExportOptions& options = {});
// cdf_at.csv and cdf_m2e.csv; header only for an empty metric.
void ExportCdf(const RunReport& report, const std::filesystem::path& dir);

std::vector<ptt::AtSample> LoadAtCsv(const std::filesystem::path& path);
std::vector<ptt::M2eSample> LoadM2eCsv(const std::filesystem::path& path);

}  // namespace ibnptt::scenario

#endif  // IBNPTT_SCENARIO_REPORT_IO_H_
