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

#ifndef IBNPTT_COMMON_SIM_TIME_H_
#define IBNPTT_COMMON_SIM_TIME_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace ibnptt {

// Simulation time and durations are integer microseconds so that event
// ordering never depends on floating-point comparison.
using Micros = std::chrono::microseconds;

using namespace std::chrono_literals;

// Converts a millisecond quantity to microseconds, rounding to nearest.
Micros FromMillis(double ms);

double ToMillis(Micros t);

// Exact decimal rendering of a microsecond quantity in milliseconds with
// three fractional digits, e.g. 100000us -> "100.000", -1500us -> "-1.500".
std::string FormatMillis(Micros t);

// Inverse of FormatMillis. Accepts any decimal with up to three fractional
// digits; throws Error(kParseError) otherwise.
Micros ParseMillis(std::string_view text);

}  // namespace ibnptt

#endif  // IBNPTT_COMMON_SIM_TIME_H_
