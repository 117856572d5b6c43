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

#include "ibnptt/ptt_service/kpi.h"

#include <string>

#include "ibnptt/common/error.h"

namespace ibnptt::ptt {

void KpiStore::RecordAt(const AtSample& sample) {
  if (sample.at() < Micros(0)) {
    throw Error(ErrorCode::kNegativeLatency,
                "access time " + FormatMillis(sample.at()) + " ms for ue-" +
                    std::to_string(sample.ue));
  }
  at_.push_back(sample);
}

void KpiStore::RecordM2e(const M2eSample& sample) {
  if (sample.m2e() < Micros(0)) {
    throw Error(ErrorCode::kNegativeLatency,
                "mouth-to-ear " + FormatMillis(sample.m2e()) + " ms for ue-" +
                    std::to_string(sample.listener));
  }
  m2e_.push_back(sample);
}

}  // namespace ibnptt::ptt
