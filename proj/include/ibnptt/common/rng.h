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

#ifndef IBNPTT_COMMON_RNG_H_
#define IBNPTT_COMMON_RNG_H_

#include <cstdint>
#include <random>

#include "ibnptt/common/sim_time.h"

namespace ibnptt {

// Seeded generator with platform-independent derived distributions. The
// standard library distributions are implementation-defined, so range
// mapping is done here on top of the (fully specified) mt19937_64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [lo, hi], unbiased.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 bits of resolution.
  double Uniform01();

  // Uniform duration in [lo, hi] at microsecond resolution.
  Micros UniformMicros(Micros lo, Micros hi) {
    return Micros(UniformInt(lo.count(), hi.count()));
  }

  // Exponential duration with the given mean, rounded to microseconds.
  Micros ExponentialMicros(Micros mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ibnptt

#endif  // IBNPTT_COMMON_RNG_H_
