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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "ibnptt/common/error.h"
#include "ibnptt/common/percentile.h"
#include "ibnptt/common/rng.h"
#include "ibnptt/common/sim_time.h"

namespace ibnptt {
namespace {

TEST(SimTime, MillisecondsConvertExactly) {
  EXPECT_EQ(FromMillis(50), Micros(50000));
  EXPECT_EQ(FromMillis(0.001), Micros(1));
  EXPECT_DOUBLE_EQ(ToMillis(Micros(1500)), 1.5);
}

TEST(SimTime, FormatAndParseRoundTrip) {
  EXPECT_EQ(FormatMillis(Micros(100000)), "100.000");
  EXPECT_EQ(FormatMillis(Micros(-1500)), "-1.500");
  for (std::int64_t us : {0LL, 1LL, 999LL, 1000LL, 123456789LL, -42LL}) {
    EXPECT_EQ(ParseMillis(FormatMillis(Micros(us))), Micros(us)) << us;
  }
  EXPECT_EQ(ParseMillis("20000"), Micros(20000000));
}

TEST(SimTime, ParseRejectsSubMicrosecondAndJunk) {
  EXPECT_THROW(ParseMillis("1.0001"), Error);
  EXPECT_THROW(ParseMillis("abc"), Error);
  EXPECT_THROW(ParseMillis(""), Error);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(7), b(7), c(8);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Next(), b.Next());
  EXPECT_NE(Rng(7).Next(), c.Next());
}

TEST(Rng, UniformIntStaysInRangeAndHitsBothEnds) {
  Rng rng(1);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto v = rng.UniformInt(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.UniformInt(5, 5), 5);
}

TEST(Rng, ExponentialHasRoughlyTheRequestedMean) {
  Rng rng(3);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    Micros v = rng.ExponentialMicros(Micros(10000));
    ASSERT_GE(v, Micros(0));
    sum += static_cast<double>(v.count());
  }
  EXPECT_NEAR(sum / n, 10000.0, 300.0);
}

TEST(Percentile, NearestRankExamples) {
  std::vector<int> v = {40, 10, 30, 20};
  EXPECT_EQ(Percentile<int>(v, 50), 20);
  EXPECT_EQ(Percentile<int>(v, 100), 40);
  EXPECT_EQ(Percentile<int>(v, 0), 10);
  EXPECT_EQ(Percentile<int>(v, 75), 30);
  EXPECT_EQ(Percentile<int>(v, 76), 40);
}

TEST(Percentile, EmptyAndOutOfRange) {
  std::vector<int> none;
  try {
    Percentile<int>(none, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySamples);
  }
  std::vector<int> one = {1};
  EXPECT_THROW(Percentile<int>(one, 101), Error);
  EXPECT_THROW(Percentile<int>(one, -1), Error);
}

TEST(Error, MessageCarriesStableName) {
  Error e(ErrorCode::kNotHolder, "x");
  EXPECT_EQ(e.code(), ErrorCode::kNotHolder);
  EXPECT_STREQ(e.what(), "NotHolder: x");
}

}  // namespace
}  // namespace ibnptt
