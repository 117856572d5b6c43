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

#ifndef IBNPTT_COMMON_ERROR_H_
#define IBNPTT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ibnptt {

// Every failure the pipeline or the simulator can surface. The enumerator
// names double as the stable identifiers printed by the CLI and written to
// rejection records.
enum class ErrorCode {
  // cnl_intent
  kEmptyIntent,
  kNoActionKeyword,
  kNoServiceKeyword,
  kNoEndpoints,
  kUnrecognizedToken,
  // knowledge_base / config
  kUnknownService,
  kInvariantViolation,
  kParseError,
  // orchestrator
  kUnresolvableEndpoint,
  kSimulatorRejected,
  // netsim
  kScheduleInPast,
  // ptt_service
  kDuplicateRequest,
  kNotParticipant,
  kNotHolder,
  kNegativeLatency,
  // scenario_runner
  kEmptySamples,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ibnptt

#endif  // IBNPTT_COMMON_ERROR_H_
