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

#include "ibnptt/common/error.h"

namespace ibnptt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyIntent:
      return "EmptyIntent";
    case ErrorCode::kNoActionKeyword:
      return "NoActionKeyword";
    case ErrorCode::kNoServiceKeyword:
      return "NoServiceKeyword";
    case ErrorCode::kNoEndpoints:
      return "NoEndpoints";
    case ErrorCode::kUnrecognizedToken:
      return "UnrecognizedToken";
    case ErrorCode::kUnknownService:
      return "UnknownService";
    case ErrorCode::kInvariantViolation:
      return "InvariantViolation";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kUnresolvableEndpoint:
      return "UnresolvableEndpoint";
    case ErrorCode::kSimulatorRejected:
      return "SimulatorRejected";
    case ErrorCode::kScheduleInPast:
      return "ScheduleInPast";
    case ErrorCode::kDuplicateRequest:
      return "DuplicateRequest";
    case ErrorCode::kNotParticipant:
      return "NotParticipant";
    case ErrorCode::kNotHolder:
      return "NotHolder";
    case ErrorCode::kNegativeLatency:
      return "NegativeLatency";
    case ErrorCode::kEmptySamples:
      return "EmptySamples";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace ibnptt
