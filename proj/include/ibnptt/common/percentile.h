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

#ifndef IBNPTT_COMMON_PERCENTILE_H_
#define IBNPTT_COMMON_PERCENTILE_H_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ibnptt/common/error.h"

namespace ibnptt {

// Nearest-rank index (0-based) of the q-th percentile in n sorted values:
// rank = ceil(q/100 * n), at least 1.
inline std::size_t NearestRankIndex(double q, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kEmptySamples, "no samples");
  if (!(q >= 0.0 && q <= 100.0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "percentile " + std::to_string(q) + " outside [0, 100]");
  }
  // Integer ranks computed in long double avoid 0.1*n style drift.
  long double exact = static_cast<long double>(q) * n / 100.0L;
  auto rank = static_cast<std::size_t>(std::ceil(exact - 1e-12L));
  return std::clamp<std::size_t>(rank, 1, n) - 1;
}

// Nearest-rank percentile over a sorted copy. Throws Error(kEmptySamples).
template <typename T>
T Percentile(std::span<const T> samples, double q) {
  std::size_t i = NearestRankIndex(q, samples.size());
  std::vector<T> sorted(samples.begin(), samples.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(i),
                   sorted.end());
  return sorted[i];
}

}  // namespace ibnptt

#endif  // IBNPTT_COMMON_PERCENTILE_H_
